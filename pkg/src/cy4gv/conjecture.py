"""Right-hand side of the genus-one formula for <tau_1(alpha)>_beta and the tau_2 prediction.

    <tau_1(alpha)>_beta = n_{0,beta}(alpha^2) / (2 alpha.beta)
                          - sum_{b1+b2=beta} (alpha.b1)(alpha.b2) m_{b1,b2} / (4 alpha.beta)
                          - sum_{k|beta} (alpha.beta / k) n_{1,beta/k}
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .foundation import CurveClass, decompositions, divisors_of
from .geometry import GeometryData, divisor_square, n0, n1, pair


class PoleLocusError(ValueError):
    pass


def rhs_terms(geom: GeometryData, meeting, beta, alpha: Sequence) -> tuple[Fraction, Fraction, Fraction]:
    """The three summands separately: genus-0 term, meeting term, genus-1 term."""
    beta = CurveClass(beta)
    ab = pair(geom, alpha, beta)
    if ab == 0:
        raise PoleLocusError("pole locus: alpha·beta = 0, use constraints module")
    first = n0(geom, beta, divisor_square(geom, alpha)) / (2 * ab)
    second = Fraction(0)
    for b1, b2 in decompositions(beta):
        second += pair(geom, alpha, b1) * pair(geom, alpha, b2) * meeting.get(b1, b2)
    second = -second / (4 * ab)
    third = -sum((ab / k * n1(geom, small) for k, small in divisors_of(beta)), Fraction(0))
    return first, second, third


def rhs_genus1(geom: GeometryData, meeting, beta, alpha: Sequence) -> Fraction:
    return sum(rhs_terms(geom, meeting, beta, alpha), Fraction(0))


def tau2_rhs(geom: GeometryData, beta) -> Fraction:
    """Predicted <tau_2(1)>_beta = -n_{0,beta}(c_2)/12."""
    return -n0(geom, CurveClass(beta), geom.c2) / 12


@dataclass(frozen=True)
class LinearityReport:
    passed: bool
    trials: int
    counterexample: tuple | None = None


def _random_alpha(rng: random.Random, p: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(p))


def rhs_is_linear(geom: GeometryData, meeting, beta, trials: int = 20, seed: int = 0) -> LinearityReport:
    """Check rhs(a + a') = rhs(a) + rhs(a') and rhs(c a) = c rhs(a) on random samples
    avoiding the pole locus. Reports the first failure."""
    beta = CurveClass(beta)
    rng = random.Random(seed)
    done = 0
    while done < trials:
        a = _random_alpha(rng, geom.p)
        b = _random_alpha(rng, geom.p)
        s = tuple(x + y for x, y in zip(a, b))
        if any(pair(geom, v, beta) == 0 for v in (a, b, s)):
            continue
        c = Fraction(rng.choice([-3, -2, 2, 3, 5]), rng.randint(1, 4))
        ra, rb, rs = (rhs_genus1(geom, meeting, beta, v) for v in (a, b, s))
        rc = rhs_genus1(geom, meeting, beta, tuple(c * x for x in a))
        if rs != ra + rb or rc != c * ra:
            return LinearityReport(False, done + 1, (a, b, ra, rb, rs))
        done += 1
    return LinearityReport(True, done)


@dataclass(frozen=True)
class Verdict:
    geometry: str
    beta: CurveClass
    alpha: tuple[Fraction, ...]
    rhs: Fraction
    dt4: Fraction | None
    status: str  # "match", "mismatch" or "RHS-only"


def compare(geom: GeometryData, meeting, beta, alpha: Sequence, dt4_value) -> Verdict:
    beta = CurveClass(beta)
    alpha = tuple(Fraction(x) for x in alpha)
    rhs = rhs_genus1(geom, meeting, beta, alpha)
    if dt4_value is None:
        return Verdict(geom.name, beta, alpha, rhs, None, "RHS-only")
    dt4_value = Fraction(dt4_value)
    return Verdict(geom.name, beta, alpha, rhs, dt4_value, "match" if rhs == dt4_value else "mismatch")
