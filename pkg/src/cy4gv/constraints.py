"""The pole-cancellation constraint n_{0,beta}(alpha^2) = 1/2 sum (alpha.b1)(alpha.b2) m_{b1,b2}
for alpha.beta = 0, in its meeting, resummed and Gromov-Witten forms, plus the
binomial recursion it implies for local P1 x P1.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb, gcd
from typing import Sequence

from .foundation import CurveClass, decompositions
from .geometry import GeometryData, divisor_square, gv_pairing, n0, n0_vector, pair
from .gv_series import gw0_from_table


class PoleError(ValueError):
    pass


def _require_kernel(geom: GeometryData, alpha, beta) -> None:
    if pair(geom, alpha, beta) != 0:
        raise PoleError("constraint requires alpha·beta = 0")


def constraint_gv_form(geom: GeometryData, meeting, alpha: Sequence, beta) -> tuple[Fraction, Fraction]:
    beta = CurveClass(beta)
    _require_kernel(geom, alpha, beta)
    lhs = n0(geom, beta, divisor_square(geom, alpha))
    rhs = Fraction(0)
    for b1, b2 in decompositions(beta):
        rhs += pair(geom, alpha, b1) * pair(geom, alpha, b2) * meeting.get(b1, b2)
    return lhs, rhs / 2


def _divisible(beta: CurveClass, k: int) -> bool:
    return all(c % k == 0 for c in beta)


def constraint_resummed(geom: GeometryData, alpha: Sequence, beta) -> tuple[Fraction, Fraction]:
    """Right side summed over coprime (k1, k2) with k_i | beta_i, using n_0 directly."""
    beta = CurveClass(beta)
    _require_kernel(geom, alpha, beta)
    lhs = n0(geom, beta, divisor_square(geom, alpha))
    splits = decompositions(beta)
    bound = max(beta)
    rhs = Fraction(0)
    for k1 in range(1, bound + 1):
        for k2 in range(1, bound + 1):
            if gcd(k1, k2) != 1:
                continue
            for b1, b2 in splits:
                if not (_divisible(b1, k1) and _divisible(b2, k2)):
                    continue
                weight = pair(geom, alpha, b1) * pair(geom, alpha, b2)
                if weight:
                    rhs += weight / (k1 * k1 * k2 * k2) * gv_pairing(geom, b1.divide(k1), b2.divide(k2))
    return lhs, rhs / 2


def _gw0_vectors(geom: GeometryData, cutoff: int) -> list:
    """GW_{0,beta}(S_a) for every S_a, as one series per basis element."""
    classes = geom.classes(cutoff)
    return [
        gw0_from_table({b: n0_vector(geom, b)[a] for b in classes}, geom.ample, cutoff)
        for a in range(geom.m)
    ]


def constraint_gw_form(geom: GeometryData, alpha: Sequence, beta) -> tuple[Fraction, Fraction]:
    beta = CurveClass(beta)
    _require_kernel(geom, alpha, beta)
    cutoff = geom.degree(beta)
    series = _gw0_vectors(geom, cutoff)
    sq = divisor_square(geom, alpha)
    lhs = sum((sq[a] * series[a][beta] for a in range(geom.m)), Fraction(0))
    g = geom.kunneth_inverse
    rhs = Fraction(0)
    for b1, b2 in decompositions(beta):
        weight = pair(geom, alpha, b1) * pair(geom, alpha, b2)
        if not weight:
            continue
        v1 = [s[b1] for s in series]
        v2 = [s[b2] for s in series]
        rhs += weight * sum(
            (v1[a] * g[a][b] * v2[b] for a in range(geom.m) for b in range(geom.m)), Fraction(0)
        )
    return lhs, rhs / 2


def kernel_alphas(geom: GeometryData, beta) -> list[tuple[Fraction, ...]]:
    """A spanning set of {alpha : alpha.beta = 0} together with all pairwise sums."""
    beta = CurveClass(beta)
    p = geom.p
    w = [sum(Fraction(geom.curve_pairing[i][j]) * beta[j] for j in range(geom.curve_rank)) for i in range(p)]
    unit = lambda i: [Fraction(int(i == t)) for t in range(p)]
    pivot = next((j for j in range(p) if w[j]), None)
    if pivot is not None and p == 1:
        # the kernel is zero; the constraint still holds trivially at alpha = 0
        return [(Fraction(0),)]
    if pivot is None:
        basis = [tuple(unit(i)) for i in range(p)]
    else:
        basis = []
        for i in range(p):
            if i == pivot:
                continue
            v = unit(i)
            v[pivot] = -w[i] / w[pivot]
            basis.append(tuple(v))
    sums = [tuple(x + y for x, y in zip(u, v)) for u, v in combinations(basis, 2)]
    return basis + sums


@dataclass(frozen=True)
class ConstraintRecord:
    beta: CurveClass
    alpha: tuple[Fraction, ...]
    gv_form: tuple[Fraction, Fraction]
    resummed: tuple[Fraction, Fraction]
    gw_form: tuple[Fraction, Fraction]

    @property
    def holds(self) -> bool:
        forms = (self.gv_form, self.resummed, self.gw_form)
        return all(lhs == rhs for lhs, rhs in forms) and self.gv_form[0] == self.resummed[0]


def constraint_records(geom: GeometryData, meeting, max_degree: int) -> list[ConstraintRecord]:
    out = []
    for beta in geom.classes(max_degree):
        for alpha in kernel_alphas(geom, beta):
            out.append(
                ConstraintRecord(
                    beta,
                    alpha,
                    constraint_gv_form(geom, meeting, alpha, beta),
                    constraint_resummed(geom, alpha, beta),
                    constraint_gw_form(geom, alpha, beta),
                )
            )
    return out


# --- binomial recursion on local P1 x P1 -------------------------------------

def closed_form_gw(d1: int, d2: int) -> Fraction:
    """GW_{0,(d1,d2)}([pt]) = C(d1+d2, d1)^2 / (d1+d2)^2 for (d1,d2) != 0."""
    if d1 < 0 or d2 < 0 or d1 + d2 == 0:
        raise ValueError("bidegree must be effective")
    return Fraction(comb(d1 + d2, d1) ** 2, (d1 + d2) ** 2)


def binomial_recursion_check(d1: int, d2: int) -> tuple[Fraction, Fraction]:
    """Both sides of GW_(d1,d2) = 1/2 sum (d1'd2''-d2'd1'')^2/(d1 d2) GW' GW''
    over all ordered splittings into two nonzero bidegrees."""
    if d1 <= 0 or d2 <= 0:
        raise ValueError("degenerate bidegree: both degrees must be positive")
    lhs = closed_form_gw(d1, d2)
    rhs = Fraction(0)
    for a1 in range(d1 + 1):
        for a2 in range(d2 + 1):
            b1, b2 = d1 - a1, d2 - a2
            if a1 + a2 == 0 or b1 + b2 == 0:
                continue
            det = a1 * b2 - a2 * b1
            if det:
                rhs += Fraction(det * det, d1 * d2) * closed_form_gw(a1, a2) * closed_form_gw(b1, b2)
    return lhs, rhs / 2


def restricted_binomial_display(d1: int, d2: int) -> tuple[Fraction, Fraction]:
    """The variant restricted to splittings with every component positive,
    unsquared binomials and (d'+d'')-type denominators, evaluated literally.
    It does not hold: at (2,1) the right side is an empty sum."""
    if d1 <= 0 or d2 <= 0:
        raise ValueError("degenerate bidegree: both degrees must be positive")
    lhs = Fraction(2 * d1 * d2, (d1 + d2) ** 2) * comb(d1 + d2, d1) ** 2
    rhs = Fraction(0)
    for a1 in range(1, d1):
        for a2 in range(1, d2):
            b1, b2 = d1 - a1, d2 - a2
            det = a1 * b2 - a2 * b1
            rhs += Fraction(det * det, (a1 + a2) ** 2 * (b1 + b2) ** 2) * comb(a1 + a2, a1) * comb(b1 + b2, b1)
    return lhs, rhs
