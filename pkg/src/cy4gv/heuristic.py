"""Consistency harness for the ideal-geometry derivation of the genus-one formula.

A one-parameter family of rational curves in class beta sweeps out a surface
D, modelled on a P^1-bundle blown up at k points. On H^2(D) with basis
(beta, psi, e_1, ..., e_k) (fiber, relative canonical class, exceptional curves)

    beta.beta = beta.e_i = 0,  beta.psi = -2,  psi.e_i = e_i.e_i = -1,

and psi.psi is a free parameter. Writing alpha|_D = a beta + b psi + sum d_i e_i,
the contribution of the family to <tau_1(alpha)> is -psi.alpha|_D / 2.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .foundation import CurveClass, decompositions, divisors_of
from .geometry import GeometryData, divisor_square, n0, n1, pair


class PoleError(ValueError):
    pass


@dataclass(frozen=True)
class BlowupFamilyData:
    k: int
    psi_sq: Fraction
    alpha_beta: Fraction
    alpha_beta1: tuple[Fraction, ...]
    # coefficient of the fiber class in alpha|_D; not fixed by the pairings with curves
    fiber_coefficient: Fraction = Fraction(0)

    def __post_init__(self):
        if len(self.alpha_beta1) != self.k:
            raise ValueError("need one pairing alpha.e_i per exceptional curve")
        if self.alpha_beta == 0:
            raise PoleError("alpha·beta = 0 is a pole of the descendent formula")


def intersection_form(k: int, psi_sq) -> list[list[Fraction]]:
    """Gram matrix on (beta, psi, e_1, ..., e_k)."""
    n = k + 2
    g = [[Fraction(0)] * n for _ in range(n)]
    g[0][1] = g[1][0] = Fraction(-2)
    g[1][1] = Fraction(psi_sq)
    for i in range(2, n):
        g[1][i] = g[i][1] = Fraction(-1)
        g[i][i] = Fraction(-1)
    return g


def _dot(g, u, v) -> Fraction:
    return sum((u[i] * g[i][j] * v[j] for i in range(len(u)) for j in range(len(v)) if u[i] and v[j]), Fraction(0))


def _solve(matrix: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    """Gaussian elimination over Q for a square nonsingular system."""
    n = len(rhs)
    aug = [list(row) + [r] for row, r in zip(matrix, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise ValueError("singular system")
        aug[col], aug[piv] = aug[piv], aug[col]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col] / aug[col][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [aug[i][n] / aug[i][i] for i in range(n)]


def restricted_alpha(data: BlowupFamilyData) -> list[Fraction]:
    """Coordinates (a, b, d_1..d_k) of alpha|_D, with b and d_i solved from the
    pairings of alpha|_D with beta and with each e_i."""
    g = intersection_form(data.k, data.psi_sq)
    n = data.k + 2
    curves = [0] + list(range(2, n))  # beta, e_1, ..., e_k
    targets = [Fraction(data.alpha_beta)] + [Fraction(x) for x in data.alpha_beta1]
    # unknowns b, d_1..d_k; the beta-coefficient a drops out of these pairings
    unknowns = [1] + list(range(2, n))
    system = [[g[u][c] for u in unknowns] for c in curves]
    sol = _solve(system, targets)
    coords = [Fraction(data.fiber_coefficient)] + [Fraction(0)] * (n - 1)
    for u, value in zip(unknowns, sol):
        coords[u] = value
    return coords


def blowup_descendent(data: BlowupFamilyData) -> Fraction:
    """-psi.alpha|_D / 2 evaluated with the intersection form."""
    g = intersection_form(data.k, data.psi_sq)
    coords = restricted_alpha(data)
    psi = [Fraction(0)] * len(coords)
    psi[1] = Fraction(1)
    return -_dot(g, psi, coords) / 2


def restricted_square(data: BlowupFamilyData) -> Fraction:
    coords = restricted_alpha(data)
    return _dot(intersection_form(data.k, data.psi_sq), coords, coords)


def blowup_descendent_closed_form(data: BlowupFamilyData, alpha_sq=None) -> Fraction:
    """(alpha|^2)/(2t) + t psi^2/8 + sum (x_i - y_i)^2/(8t) with t = alpha.beta,
    x_i = alpha.e_i and y_i = t - x_i."""
    t = Fraction(data.alpha_beta)
    sq = restricted_square(data) if alpha_sq is None else Fraction(alpha_sq)
    out = sq / (2 * t) + t * Fraction(data.psi_sq) / 8
    for x in data.alpha_beta1:
        x = Fraction(x)
        out += (x - (t - x)) ** 2 / (8 * t)
    return out


def rational_family_contribution(geom: GeometryData, meeting, beta, alpha: Sequence) -> Fraction:
    """Assemble the closed form over X: (alpha|^2) becomes n_{0,beta}(alpha^2),
    psi^2 = -1/2 sum m_{b1,b2}, and each splitting b1 + b2 = beta is weighted by m/2."""
    beta = CurveClass(beta)
    t = pair(geom, alpha, beta)
    if t == 0:
        raise PoleError("alpha·beta = 0 is a pole of the descendent formula")
    splits = decompositions(beta)
    psi_sq = -sum((meeting.get(b1, b2) for b1, b2 in splits), Fraction(0)) / 2
    out = n0(geom, beta, divisor_square(geom, alpha)) / (2 * t) + t * psi_sq / 8
    for b1, b2 in splits:
        x, y = pair(geom, alpha, b1), pair(geom, alpha, b2)
        out += (x - y) ** 2 / (8 * t) * meeting.get(b1, b2) / 2
    return out


def elliptic_multiple_contribution(r: int, alpha_beta) -> Fraction:
    """Integral of tau_1(alpha) over M_E(r,1) for a super-rigid elliptic curve with r[E] = beta."""
    if r < 1:
        raise ValueError("r must be positive")
    return Fraction(alpha_beta) / r


def elliptic_total(geom: GeometryData, beta, alpha: Sequence) -> Fraction:
    """sum_{r | beta} n_{1,beta/r} (alpha.beta)/r, before the orientation sign."""
    beta = CurveClass(beta)
    t = pair(geom, alpha, beta)
    return sum((n1(geom, small) * elliptic_multiple_contribution(r, t) for r, small in divisors_of(beta)), Fraction(0))


# The sign of the elliptic contribution is fixed by convention to agree with
# the worked examples; the ideal geometry alone does not determine it.
ELLIPTIC_SIGN = -1
