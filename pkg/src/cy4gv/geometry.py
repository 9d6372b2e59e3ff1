"""Example geometries: cohomology bases, pairings, c_2 and input GV tables.

A geometry is loaded from a JSON fixture. Rationals are written as ``"p/q"``
strings, curve classes as comma-separated integer keys (``"2,1"``), and
divisor products as ``"i,j"`` keys over the divisor basis.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from types import MappingProxyType
from typing import Any, Mapping, Sequence

from .foundation import CurveClass, degree, effective_classes, format_rational, to_rational

FIXTURE_DIR = Path(__file__).parent / "fixtures"
FIXTURE_NAMES = ("elliptic_p3", "local_p2", "local_p1p1", "local_p3", "cy3xE_template")


class GeometryError(ValueError):
    pass


@dataclass(frozen=True)
class GeometryData:
    name: str
    curve_rank: int
    ample: tuple[int, ...]
    divisor_basis: tuple[str, ...]
    curve_pairing: tuple[tuple[int, ...], ...]
    h4_basis: tuple[str, ...]
    kunneth_inverse: tuple[tuple[Fraction, ...], ...]
    divisor_product: Mapping[tuple[int, int], tuple[Fraction, ...]]
    c2: tuple[Fraction, ...]
    gv0: Mapping[CurveClass, tuple[Fraction, ...]]
    gv1: Mapping[CurveClass, Fraction]
    degree_bound: int
    gv1_degree_bound: int
    intersection_matrix: tuple[tuple[Fraction, ...], ...] | None = None
    # Free-form sections carried through untouched: provenance notes,
    # expected values for the CLI checks, per-example DT4 data.
    extras: Mapping[str, Any] = field(default_factory=dict)

    @property
    def p(self) -> int:
        return len(self.divisor_basis)

    @property
    def m(self) -> int:
        return len(self.h4_basis)

    def degree(self, beta) -> int:
        return degree(beta, self.ample)

    def classes(self, max_degree: int | None = None) -> list[CurveClass]:
        bound = self.degree_bound if max_degree is None else min(max_degree, self.degree_bound)
        return effective_classes(self.curve_rank, self.ample, bound)


def _matrix(raw, rows: int, cols: int, what: str, conv=to_rational):
    if not isinstance(raw, list) or len(raw) != rows:
        raise GeometryError(f"{what}: expected {rows} rows")
    out = []
    for i, row in enumerate(raw):
        if not isinstance(row, list) or len(row) != cols:
            raise GeometryError(f"{what}[{i}]: expected {cols} entries")
        out.append(tuple(conv(x) for x in row))
    return tuple(out)


def _int(x):
    if isinstance(x, bool) or not isinstance(x, int):
        raise GeometryError(f"expected an integer, got {x!r}")
    return x


def geometry_from_dict(raw: Mapping[str, Any], source: str = "<dict>") -> GeometryData:
    try:
        return _from_dict(raw)
    except GeometryError as exc:
        raise GeometryError(f"{source}: {exc}") from None
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise GeometryError(f"{source}: malformed geometry ({type(exc).__name__}: {exc})") from None


def _from_dict(raw: Mapping[str, Any]) -> GeometryData:
    required = (
        "name", "curve_rank", "ample", "divisor_basis", "curve_pairing", "h4_basis",
        "kunneth_inverse", "divisor_product", "c2", "gv0", "gv1", "degree_bound",
    )
    for key in required:
        if key not in raw:
            raise GeometryError(f"missing field {key!r}")
    r = _int(raw["curve_rank"])
    ample = tuple(_int(a) for a in raw["ample"])
    if len(ample) != r or any(a <= 0 for a in ample):
        raise GeometryError("ample must have length curve_rank and positive entries")
    divisors = tuple(str(s) for s in raw["divisor_basis"])
    h4 = tuple(str(s) for s in raw["h4_basis"])
    p, m = len(divisors), len(h4)
    pairing = _matrix(raw["curve_pairing"], p, r, "curve_pairing", _int)
    ginv = _matrix(raw["kunneth_inverse"], m, m, "kunneth_inverse")
    if any(ginv[a][b] != ginv[b][a] for a in range(m) for b in range(m)):
        raise GeometryError("invalid pairing: kunneth_inverse is not symmetric")
    gmat = None
    if raw.get("intersection_matrix") is not None:
        gmat = _matrix(raw["intersection_matrix"], m, m, "intersection_matrix")
        for a in range(m):
            for b in range(m):
                entry = sum(gmat[a][c] * ginv[c][b] for c in range(m))
                if entry != (1 if a == b else 0):
                    raise GeometryError("invalid pairing: kunneth_inverse is not the inverse of intersection_matrix")

    products: dict[tuple[int, int], tuple[Fraction, ...]] = {}
    for key, value in raw["divisor_product"].items():
        i, j = (int(s) for s in key.split(","))
        if not (0 <= i < p and 0 <= j < p):
            raise GeometryError(f"divisor_product key {key!r} out of range")
        vec = tuple(to_rational(x) for x in value)
        if len(vec) != m:
            raise GeometryError(f"divisor_product[{key}] must have {m} entries")
        for k in ((i, j), (j, i)):
            if k in products and products[k] != vec:
                raise GeometryError(f"divisor_product is not symmetric at {key!r}")
            products[k] = vec
    for i in range(p):
        for j in range(p):
            products.setdefault((i, j), tuple(Fraction(0) for _ in range(m)))

    c2 = tuple(to_rational(x) for x in raw["c2"])
    if len(c2) != m:
        raise GeometryError(f"c2 must have {m} entries")

    bound = _int(raw["degree_bound"])
    bound1 = _int(raw.get("gv1_degree_bound", bound))
    gv0: dict[CurveClass, tuple[Fraction, ...]] = {}
    for key, value in raw["gv0"].items():
        beta = CurveClass.from_key(key)
        if len(beta) != r or not beta.is_effective():
            raise GeometryError(f"gv0 key {key!r} is not an effective class of rank {r}")
        vec = tuple(to_rational(x) for x in value)
        if len(vec) != m:
            raise GeometryError(f"gv0[{key}] must have {m} entries")
        gv0[beta] = vec
    gv1: dict[CurveClass, Fraction] = {}
    for key, value in raw["gv1"].items():
        beta = CurveClass.from_key(key)
        if len(beta) != r or not beta.is_effective():
            raise GeometryError(f"gv1 key {key!r} is not an effective class of rank {r}")
        gv1[beta] = to_rational(value)
    for beta in effective_classes(r, ample, bound):
        if beta not in gv0:
            raise GeometryError(f"incomplete GV table: n_0 missing at {beta.key()}")
    for beta in effective_classes(r, ample, bound1):
        if beta not in gv1:
            raise GeometryError(f"incomplete GV table: n_1 missing at {beta.key()}")

    known = set(required) | {"gv1_degree_bound", "intersection_matrix"}
    extras = {k: v for k, v in raw.items() if k not in known}
    return GeometryData(
        name=str(raw["name"]),
        curve_rank=r,
        ample=ample,
        divisor_basis=divisors,
        curve_pairing=pairing,
        h4_basis=h4,
        kunneth_inverse=ginv,
        divisor_product=MappingProxyType(products),
        c2=c2,
        gv0=MappingProxyType(gv0),
        gv1=MappingProxyType(gv1),
        degree_bound=bound,
        gv1_degree_bound=bound1,
        intersection_matrix=gmat,
        extras=MappingProxyType(extras),
    )


def resolve_fixture(path) -> Path:
    """Accept a real path, a bare fixture name, or ``fixtures/<name>.json``."""
    path = Path(path)
    if path.exists():
        return path
    stem = path.name[:-5] if path.name.endswith(".json") else path.name
    candidate = FIXTURE_DIR / f"{stem}.json"
    if candidate.exists():
        return candidate
    raise FileNotFoundError(f"no geometry fixture at {path}")


def load_geometry(path) -> GeometryData:
    path = resolve_fixture(path)
    text = path.read_text(encoding="utf-8")
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GeometryError(f"{path}: parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(raw, dict):
        raise GeometryError(f"{path}: top level must be a JSON object")
    return geometry_from_dict(raw, str(path))


def load_fixture(name: str) -> GeometryData:
    return load_geometry(FIXTURE_DIR / f"{name}.json")


def geometry_to_dict(geom: GeometryData) -> dict[str, Any]:
    f = format_rational
    out: dict[str, Any] = {
        "name": geom.name,
        "curve_rank": geom.curve_rank,
        "ample": list(geom.ample),
        "divisor_basis": list(geom.divisor_basis),
        "curve_pairing": [list(row) for row in geom.curve_pairing],
        "h4_basis": list(geom.h4_basis),
        "kunneth_inverse": [[f(x) for x in row] for row in geom.kunneth_inverse],
        "divisor_product": {
            f"{i},{j}": [f(x) for x in vec] for (i, j), vec in sorted(geom.divisor_product.items()) if i <= j
        },
        "c2": [f(x) for x in geom.c2],
        "degree_bound": geom.degree_bound,
        "gv1_degree_bound": geom.gv1_degree_bound,
        "gv0": {b.key(): [f(x) for x in vec] for b, vec in geom.gv0.items()},
        "gv1": {b.key(): f(x) for b, x in geom.gv1.items()},
    }
    if geom.intersection_matrix is not None:
        out["intersection_matrix"] = [[f(x) for x in row] for row in geom.intersection_matrix]
    out.update(_thaw(geom.extras))
    return out


def _thaw(obj):
    if isinstance(obj, Mapping):
        return {k: _thaw(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_thaw(v) for v in obj]
    return obj


def dump_geometry(geom: GeometryData, path) -> None:
    Path(path).write_text(json.dumps(geometry_to_dict(geom), indent=1) + "\n", encoding="utf-8")


# --- evaluation ------------------------------------------------------------

def _as_class(geom: GeometryData, beta) -> CurveClass:
    beta = CurveClass(beta)
    if len(beta) != geom.curve_rank:
        raise ValueError(f"{beta} does not live in the rank-{geom.curve_rank} curve lattice")
    return beta


def n0_vector(geom: GeometryData, beta) -> tuple[Fraction, ...]:
    """(n_{0,beta}(S_1), ..., n_{0,beta}(S_m)); zero off the effective cone."""
    beta = _as_class(geom, beta)
    if not beta.is_effective():
        return tuple(Fraction(0) for _ in range(geom.m))
    if geom.degree(beta) > geom.degree_bound:
        raise GeometryError(f"outside table: n_0 at {beta.key()} exceeds degree bound {geom.degree_bound}")
    return geom.gv0[beta]


def n0(geom: GeometryData, beta, gamma: Sequence) -> Fraction:
    """n_{0,beta}(gamma), extended linearly over the H^4 basis."""
    gamma = tuple(Fraction(x) for x in gamma)
    if len(gamma) != geom.m:
        raise ValueError(f"insertion must have {geom.m} coefficients")
    return sum((g * n for g, n in zip(gamma, n0_vector(geom, beta))), Fraction(0))


def n1(geom: GeometryData, beta) -> Fraction:
    beta = _as_class(geom, beta)
    if not beta.is_effective():
        return Fraction(0)
    if geom.degree(beta) > geom.gv1_degree_bound:
        raise GeometryError(f"outside table: n_1 at {beta.key()} exceeds degree bound {geom.gv1_degree_bound}")
    return geom.gv1[beta]


def pair(geom: GeometryData, alpha: Sequence, beta) -> Fraction:
    """alpha . beta with alpha in divisor-basis coordinates."""
    beta = _as_class(geom, beta)
    if len(alpha) != geom.p:
        raise ValueError(f"divisor class must have {geom.p} coefficients")
    return sum(
        (Fraction(a) * geom.curve_pairing[i][j] * b for i, a in enumerate(alpha) for j, b in enumerate(beta)),
        Fraction(0),
    )


def divisor_square(geom: GeometryData, alpha: Sequence) -> tuple[Fraction, ...]:
    """alpha^2 written in the H^4 basis."""
    if len(alpha) != geom.p:
        raise ValueError(f"divisor class must have {geom.p} coefficients")
    alpha = [Fraction(a) for a in alpha]
    out = [Fraction(0)] * geom.m
    for i in range(geom.p):
        for j in range(geom.p):
            w = alpha[i] * alpha[j]
            if w:
                for a, x in enumerate(geom.divisor_product[(i, j)]):
                    out[a] += w * x
    return tuple(out)


def gv_pairing(geom: GeometryData, beta1, beta2) -> Fraction:
    """sum_{a,b} n_{0,beta1}(S_a) g^{ab} n_{0,beta2}(S_b)."""
    v1, v2 = n0_vector(geom, beta1), n0_vector(geom, beta2)
    g = geom.kunneth_inverse
    return sum(
        (v1[a] * g[a][b] * v2[b] for a in range(geom.m) for b in range(geom.m) if v1[a] and v2[b]),
        Fraction(0),
    )
