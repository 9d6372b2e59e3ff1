"""Command-line driver: run check suites on the packaged or user-supplied geometries.

    cy4gv meeting|constraint|dt4|conjecture|heuristic|all [--geometry PATH] [--cutoff N]
          [--alpha a,b,...] [--json PATH]
    cy4gv dt4 EXAMPLE [--beta 2,2] [--tau 0|1|2] [--alpha ...]

Exit status: 0 if every check passes, 1 if some check fails, 2 on usage errors,
3 if a geometry file cannot be loaded.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import dt4_examples as dt4
from .conjecture import compare, rhs_genus1, rhs_is_linear, tau2_rhs
from .constraints import binomial_recursion_check, constraint_records, restricted_binomial_display
from .foundation import CurveClass, format_rational, to_rational
from .geometry import FIXTURE_NAMES, GeometryData, GeometryError, load_geometry, n0, pair
from .heuristic import (
    ELLIPTIC_SIGN,
    BlowupFamilyData,
    blowup_descendent,
    blowup_descendent_closed_form,
    elliptic_total,
    rational_family_contribution,
)
from .conjecture import rhs_terms
from .meeting import meeting_table

SUITES = ("meeting", "constraint", "dt4", "conjecture", "heuristic")
DEFAULT_BETA = {
    "local_p2": (3,),
    "local_p3": (2,),
    "local_p1p1": (2, 2),
    "elliptic_p3": (1,),
    "cy3xE_template": (1,),
}


@dataclass
class Check:
    name: str
    expected: str
    actual: str
    passed: bool

    def to_dict(self):
        return {"name": self.name, "expected": self.expected, "actual": self.actual, "pass": self.passed}


@dataclass
class Report:
    geometry: str
    suite: str
    checks: list[Check] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, expected, actual, passed: bool | None = None) -> None:
        e = expected if isinstance(expected, str) else format_rational(expected)
        a = actual if isinstance(actual, str) else format_rational(actual)
        self.checks.append(Check(name, e, a, (e == a) if passed is None else passed))

    def extend(self, other: "Report", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.expected, c.actual, c.passed))
        self.notes.extend(prefix + n for n in other.notes)

    def to_dict(self):
        out = {
            "geometry": self.geometry,
            "suite": self.suite,
            "checks": [c.to_dict() for c in self.checks],
            "pass": self.passed,
        }
        if self.notes:
            out["notes"] = list(self.notes)
        return out

    @classmethod
    def from_dict(cls, d) -> "Report":
        checks = [Check(c["name"], c["expected"], c["actual"], c["pass"]) for c in d["checks"]]
        return cls(d["geometry"], d["suite"], checks, list(d.get("notes", [])))


def _beta(key: str) -> CurveClass:
    return CurveClass.from_key(key)


def _vec(values) -> tuple[Fraction, ...]:
    return tuple(to_rational(v) for v in values)


def _fmt_vec(v) -> str:
    return "(" + ",".join(format_rational(x) for x in v) + ")"


class Context:
    """Per-geometry cache of meeting tables and DT4 pipeline data."""

    def __init__(self, geom: GeometryData, cutoff: int):
        self.geom = geom
        self.cutoff = cutoff
        self._meeting = None
        self._pipelines: dict = {}

    @property
    def checks(self) -> dict:
        return self.geom.extras.get("checks", {})

    @property
    def meeting(self):
        if self._meeting is None:
            self._meeting = meeting_table(self.geom)
        return self._meeting

    def pipeline(self, key, build):
        if key not in self._pipelines:
            self._pipelines[key] = build()
        return self._pipelines[key]


# --- DT4 dispatch ------------------------------------------------------------------

def dt4_result(ctx: Context, beta: CurveClass, alpha, tau: int):
    """Run the pipeline for (geometry, beta, tau) if one exists, else None."""
    name = ctx.geom.name
    beta = tuple(beta)
    if name == "local_p2" and beta in {(1,), (2,), (3,)}:
        data = ctx.pipeline(("p2", beta), lambda: dt4.local_p2_data(beta[0]))
        return dt4.local_p2_tau(beta[0], alpha, m=tau, data=data)
    if name == "local_p3" and beta in {(1,), (2,)}:
        data = ctx.pipeline(("p3", beta), lambda: dt4.local_p3_data(beta[0]))
        return dt4.local_p3_tau(beta[0], alpha, m=tau, data=data)
    if name == "local_p1p1" and beta == (2, 2):
        data = ctx.pipeline(("p1p1",), dt4.local_p1p1_data)
        return dt4.local_p1p1_tau(alpha, m=tau, data=data)
    if name == "elliptic_p3" and tau == 1:
        return dt4.elliptic_tau1(beta[0], alpha, ctx.geom.extras["dt4"])
    if name == "cy3xE_template" and tau == 1:
        value = dt4.product_cy3xE_tau1(beta[0], pair(ctx.geom, alpha, (1,)), ctx.geom.extras["dt4"]["chi_Y"])
        return dt4.Dt4Result(name, beta, "tau1", tuple(alpha), value, 1)
    return None


def dt4_expected(ctx: Context, beta: CurveClass, alpha, tau: int) -> Fraction:
    """What the GV side predicts for the DT4 invariant."""
    geom = ctx.geom
    if tau == 1:
        return rhs_genus1(geom, ctx.meeting, beta, alpha)
    if tau == 2:
        return tau2_rhs(geom, beta)
    # tau_0 of alpha[0] times the fiber class over a point / over a line: the second S-basis element
    gamma = [Fraction(0)] * geom.m
    gamma[1] = Fraction(alpha[0])
    return n0(geom, beta, gamma)


# --- suites ------------------------------------------------------------------------

def suite_meeting(ctx: Context) -> Report:
    rep = Report(ctx.geom.name, "meeting")
    table = ctx.meeting
    for c in ctx.checks.get("meeting", []):
        b1, b2 = _beta(c["beta1"]), _beta(c["beta2"])
        rep.add(f"m[{b1.key()};{b2.key()}]", c["expected"], table.get(b1, b2))
    non_integral = [k for k, v in table.entries.items() if v.denominator != 1]
    rep.add("integrality", "0", str(len(non_integral)))
    return rep


def suite_constraint(ctx: Context) -> Report:
    rep = Report(ctx.geom.name, "constraint")
    geom = ctx.geom
    bound = min(ctx.cutoff, geom.degree_bound)
    for rec in constraint_records(geom, ctx.meeting, bound):
        label = f"beta={rec.beta.key()} alpha={_fmt_vec(rec.alpha)}"
        rep.add(f"gv-form {label}", rec.gv_form[0], rec.gv_form[1])
        rep.add(f"resummed {label}", rec.resummed[0], rec.resummed[1])
        rep.add(f"gw-form {label}", rec.gw_form[0], rec.gw_form[1])
    if geom.name == "local_p1p1":
        for d1 in range(1, 11):
            for d2 in range(1, 11):
                lhs, rhs = binomial_recursion_check(d1, d2)
                rep.add(f"binomial recursion ({d1},{d2})", lhs, rhs)
        lhs, rhs = restricted_binomial_display(2, 1)
        rep.notes.append(
            "restricted binomial identity (positive components only) at (2,1): "
            f"lhs {format_rational(lhs)} vs rhs {format_rational(rhs)}; does not hold, suspected misprint"
        )
    return rep


def _alpha_samples(ctx: Context, override) -> list[tuple[CurveClass, tuple[Fraction, ...], str | None]]:
    """(beta, alpha, expected) triples from the fixture, or the --alpha override."""
    if override is not None:
        beta = CurveClass(DEFAULT_BETA.get(ctx.geom.name, (1,) * ctx.geom.curve_rank))
        return [(beta, override, None)]
    return [(_beta(c["beta"]), _vec(c["alpha"]), c["expected"]) for c in ctx.checks.get("conjecture", [])]


def suite_conjecture(ctx: Context, alpha_override=None) -> Report:
    rep = Report(ctx.geom.name, "conjecture")
    geom = ctx.geom
    for beta, alpha, expected in _alpha_samples(ctx, alpha_override):
        rhs = rhs_genus1(geom, ctx.meeting, beta, alpha)
        label = f"beta={beta.key()} alpha={_fmt_vec(alpha)}"
        if expected is not None:
            rep.add(f"rhs {label}", expected, rhs)
        result = dt4_result(ctx, beta, alpha, 1)
        verdict = compare(geom, ctx.meeting, beta, alpha, None if result is None else result.value)
        if verdict.status == "RHS-only":
            rep.notes.append(f"{label}: RHS-only {format_rational(rhs)} (no DT4 pipeline)")
        elif geom.name == "cy3xE_template" and beta[0] > 1:
            rep.notes.append(
                f"{label}: rhs {format_rational(rhs)} vs empty moduli space 0; "
                "the genus-one term is not matched for multiple fiber classes"
            )
        else:
            rep.add(f"dt4 vs rhs {label}", verdict.rhs, verdict.dt4)
    for c in ctx.checks.get("tau2", []):
        rep.add(f"tau2 rhs beta={c['beta']}", c["expected"], tau2_rhs(geom, _beta(c["beta"])))
    linear_bound = min(ctx.cutoff, geom.degree_bound, geom.gv1_degree_bound)
    for beta in geom.classes(linear_bound):
        if all(pair(geom, e, beta) == 0 for e in _units(geom.p)):
            continue
        res = rhs_is_linear(geom, ctx.meeting, beta, trials=20)
        rep.add(f"linearity beta={beta.key()}", "linear", "linear" if res.passed else f"fails at {res.counterexample}")
    return rep


def _units(p):
    return [tuple(int(i == j) for j in range(p)) for i in range(p)]


def suite_dt4(ctx: Context, alpha_override=None, beta=None, tau: int = 1) -> Report:
    rep = Report(ctx.geom.name, "dt4")
    if alpha_override is not None or beta is not None or tau != 1:
        b = CurveClass(beta or DEFAULT_BETA.get(ctx.geom.name, (1,) * ctx.geom.curve_rank))
        if alpha_override is not None:
            alpha = alpha_override
        elif tau == 1:
            alpha = (Fraction(1),) * ctx.geom.p
        else:
            alpha = (Fraction(1),)
        result = dt4_result(ctx, b, alpha, tau)
        label = f"tau{tau} beta={b.key()} alpha={_fmt_vec(alpha)}"
        if result is None:
            rep.add(label, "pipeline", "unavailable", False)
        else:
            rep.add(label, dt4_expected(ctx, b, alpha, tau), result.value)
            rep.notes.append(f"{label}: unsigned {format_rational(result.unsigned)}, sign {result.orientation_sign}")
        return rep
    entries = list(ctx.checks.get("dt4", []))
    if ctx.geom.name in ("elliptic_p3", "cy3xE_template"):
        entries = [dict(c, pipeline="tau1") for c in ctx.checks.get("conjecture", []) if c["beta"] == "1" or ctx.geom.name == "elliptic_p3"]
    for c in entries:
        b = _beta(c["beta"])
        tau_m = {"tau1": 1, "tau0_point": 0, "tau2": 2}[c["pipeline"]]
        alpha = _vec(c.get("alpha", ["1"]))
        result = dt4_result(ctx, b, alpha, tau_m)
        label = f"{c['pipeline']} beta={b.key()} alpha={_fmt_vec(alpha)}"
        rep.add(label, c["expected"], "unavailable" if result is None else result.value)
    return rep


def suite_heuristic(ctx: Context, seed: int = 0) -> Report:
    rep = Report(ctx.geom.name, "heuristic")
    rng = random.Random(seed)
    rand = lambda: Fraction(rng.randint(-12, 12), rng.randint(1, 6))
    for i in range(20):
        k = rng.randint(0, 5)
        t = Fraction(0)
        while t == 0:
            t = rand()
        data = BlowupFamilyData(k, rand(), t, tuple(rand() for _ in range(k)), rand())
        rep.add(f"blowup two-path #{i}", blowup_descendent_closed_form(data), blowup_descendent(data))
    geom = ctx.geom
    for beta, alpha, _ in _alpha_samples(ctx, None):
        label = f"beta={beta.key()} alpha={_fmt_vec(alpha)}"
        first, second, third = rhs_terms(geom, ctx.meeting, beta, alpha)
        rep.add(f"rational families {label}", first + second, rational_family_contribution(geom, ctx.meeting, beta, alpha))
        rep.add(f"elliptic curves {label}", third, ELLIPTIC_SIGN * elliptic_total(geom, beta, alpha))
    return rep


def run_suite(suite: str, ctx: Context, args) -> Report:
    if suite == "meeting":
        return suite_meeting(ctx)
    if suite == "constraint":
        return suite_constraint(ctx)
    if suite == "dt4":
        return suite_dt4(ctx, args.alpha, getattr(args, "beta", None), getattr(args, "tau", 1))
    if suite == "conjecture":
        return suite_conjecture(ctx, args.alpha)
    if suite == "heuristic":
        return suite_heuristic(ctx)
    raise ValueError(suite)


# --- argument handling ---------------------------------------------------------------

def _parse_alpha(text: str) -> tuple[Fraction, ...]:
    try:
        return tuple(to_rational(x) for x in text.split(","))
    except (ValueError, ZeroDivisionError, TypeError):
        raise argparse.ArgumentTypeError(f"--alpha expects comma-separated rationals, got {text!r}") from None


def _parse_beta(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"--beta expects comma-separated integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cy4gv", description="Exact GV/DT4 checks on example Calabi-Yau 4-folds.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in SUITES + ("all",):
        p = sub.add_parser(name)
        if name == "dt4":
            p.add_argument("example", nargs="?", help="fixture name, e.g. local_p2")
            p.add_argument("--beta", type=_parse_beta)
            p.add_argument("--tau", type=int, choices=(0, 1, 2), default=1)
        if name == "meeting":
            p.add_argument("--table", action="store_true", help="print the meeting table as JSON")
        p.add_argument("--geometry", help="geometry JSON file or fixture name (default: all fixtures)")
        p.add_argument("--cutoff", type=int, default=8)
        p.add_argument("--alpha", type=_parse_alpha)
        p.add_argument("--json", dest="json_path")
    return parser


def run(argv: Sequence[str] | None = None) -> tuple[int, Report | None]:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (2 if exc.code else 0), None
    if args.cutoff < 1:
        print("cy4gv: --cutoff must be positive", file=sys.stderr)
        return 2, None
    target = args.geometry or getattr(args, "example", None)
    names = [target] if target else list(FIXTURE_NAMES)
    try:
        geoms = [load_geometry(n) for n in names]
    except (GeometryError, FileNotFoundError, OSError) as exc:
        print(f"cy4gv: {exc}", file=sys.stderr)
        return 3, None

    suites = SUITES if args.command == "all" else (args.command,)
    label = geoms[0].name if len(geoms) == 1 else "all"
    report = Report(label, args.command)
    try:
        for geom in geoms:
            if args.alpha is not None and len(args.alpha) != geom.p:
                print(f"cy4gv: --alpha needs {geom.p} coefficients for {geom.name}", file=sys.stderr)
                return 2, None
            ctx = Context(geom, args.cutoff)
            for suite in suites:
                prefix = "" if len(geoms) == 1 and len(suites) == 1 else f"{geom.name}/{suite}: "
                report.extend(run_suite(suite, ctx, args), prefix)
            if args.command == "meeting" and getattr(args, "table", False):
                print(ctx.meeting.to_json())
    except (GeometryError, KeyError) as exc:
        print(f"cy4gv: {exc}", file=sys.stderr)
        return 3, None

    _print_report(report)
    if args.json_path:
        with open(args.json_path, "w", encoding="utf-8") as fh:
            json.dump(report.to_dict(), fh, indent=1)
            fh.write("\n")
    return (0 if report.passed else 1), report


def _print_report(report: Report) -> None:
    for c in report.checks:
        mark = "PASS" if c.passed else "FAIL"
        print(f"{mark}  {c.name}: expected {c.expected}, got {c.actual}")
    for n in report.notes:
        print(f"note  {n}")
    total = len(report.checks)
    good = sum(c.passed for c in report.checks)
    print(f"{report.suite} on {report.geometry}: {good}/{total} checks passed")


def main(argv: Sequence[str] | None = None) -> int:
    code, _ = run(argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
