"""Exact rationals, curve-class lattice helpers and truncated Novikov series.

Rationals are :class:`fractions.Fraction` throughout; nothing in this package
ever rounds.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import gcd
from typing import Iterable, Mapping, Sequence

Rational = Fraction


def to_rational(value) -> Fraction:
    """Parse ``"p/q"`` strings, ints and Fractions. Floats are refused."""
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot read {value!r} as an exact rational")


def format_rational(value) -> str:
    q = Fraction(value)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class CurveClass(tuple):
    """A vector in the curve lattice H_2(X, Z), in the geometry's basis.

    Behaves like a tuple for hashing and ordering, but ``+``/``-`` are
    coordinate-wise and ``k * beta`` scales.
    """

    def __new__(cls, coords: Iterable[int]):
        coords = tuple(coords)
        for c in coords:
            if not isinstance(c, int) or isinstance(c, bool):
                raise TypeError(f"curve class coordinates must be integers, got {c!r}")
        return super().__new__(cls, coords)

    def __add__(self, other):
        _check_rank(self, other)
        return CurveClass(a + b for a, b in zip(self, other))

    def __sub__(self, other):
        _check_rank(self, other)
        return CurveClass(a - b for a, b in zip(self, other))

    def __mul__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        return CurveClass(k * a for a in self)

    __rmul__ = __mul__

    def __neg__(self):
        return CurveClass(-a for a in self)

    def divide(self, k: int) -> "CurveClass":
        if any(a % k for a in self):
            raise ValueError(f"{self} is not divisible by {k}")
        return CurveClass(a // k for a in self)

    @property
    def rank(self) -> int:
        return len(self)

    def is_effective(self) -> bool:
        return all(a >= 0 for a in self) and any(a > 0 for a in self)

    def is_zero(self) -> bool:
        return not any(self)

    def key(self) -> str:
        return ",".join(str(a) for a in self)

    @classmethod
    def from_key(cls, key: str) -> "CurveClass":
        return cls(int(part) for part in key.split(","))

    def __repr__(self):
        return f"CurveClass({tuple(self)!r})"


def _check_rank(a, b):
    if len(a) != len(b):
        raise ValueError(f"rank mismatch: {len(a)} vs {len(b)}")


def degree(beta: Sequence[int], ample: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(beta, ample))


def divisibility(beta: Sequence[int]) -> int:
    g = 0
    for a in beta:
        g = gcd(g, a)
    return g


def divisors_of(beta: CurveClass) -> list[tuple[int, CurveClass]]:
    """All ``(k, beta/k)`` with k dividing every coordinate, ascending in k."""
    beta = CurveClass(beta)
    if not beta.is_effective():
        raise ValueError(f"{beta} is not effective")
    g = divisibility(beta)
    return [(k, beta.divide(k)) for k in range(1, g + 1) if g % k == 0]


def decompositions(beta: CurveClass) -> list[tuple[CurveClass, CurveClass]]:
    """Ordered splittings beta = beta1 + beta2 with both parts effective."""
    beta = CurveClass(beta)
    if not beta.is_effective():
        raise ValueError(f"{beta} is not effective")
    out = []
    for coords in product(*(range(a + 1) for a in beta)):
        b1 = CurveClass(coords)
        b2 = beta - b1
        if b1.is_effective() and b2.is_effective():
            out.append((b1, b2))
    return out


def effective_classes(rank: int, ample: Sequence[int], max_degree: int) -> list[CurveClass]:
    """Every effective class of degree <= max_degree, sorted by (degree, coords)."""
    if any(a <= 0 for a in ample):
        raise ValueError("ample vector must be positive on the effective cone")
    bounds = [max_degree // a for a in ample]
    classes = [
        CurveClass(c)
        for c in product(*(range(b + 1) for b in bounds))
        if any(c) and degree(c, ample) <= max_degree
    ]
    classes.sort(key=lambda b: (degree(b, ample), tuple(b)))
    return classes


def sigma(d: int) -> int:
    """Sum of the positive divisors of d."""
    if d < 1:
        raise ValueError("sigma is defined for d >= 1")
    return sum(i for i in range(1, d + 1) if d % i == 0)


class NovikovSeries:
    """Finite truncation of a formal series sum_beta c_beta q^beta.

    Only effective classes of degree <= cutoff are kept; zero coefficients are
    never stored. Instances are treated as immutable.
    """

    __slots__ = ("ample", "cutoff", "_terms")

    def __init__(self, ample: Sequence[int], cutoff: int, terms: Mapping | None = None):
        if cutoff < 1:
            raise ValueError("cutoff must be a positive integer")
        self.ample = tuple(ample)
        self.cutoff = cutoff
        clean = {}
        for beta, c in (terms or {}).items():
            beta = CurveClass(beta)
            if len(beta) != len(self.ample):
                raise ValueError(f"{beta} has the wrong rank for this series")
            if not beta.is_effective():
                raise ValueError(f"{beta} is not effective")
            c = Fraction(c)
            if c and degree(beta, self.ample) <= cutoff:
                clean[beta] = clean.get(beta, Fraction(0)) + c
        self._terms = {b: c for b, c in clean.items() if c}

    @property
    def terms(self) -> dict[CurveClass, Fraction]:
        return dict(self._terms)

    def __getitem__(self, beta) -> Fraction:
        return self._terms.get(CurveClass(beta), Fraction(0))

    def __iter__(self):
        return iter(sorted(self._terms, key=lambda b: (degree(b, self.ample), tuple(b))))

    def __len__(self):
        return len(self._terms)

    def _compatible(self, other: "NovikovSeries") -> int:
        if self.ample != other.ample:
            raise ValueError("series over different lattices")
        return min(self.cutoff, other.cutoff)

    def __add__(self, other):
        if not isinstance(other, NovikovSeries):
            return NotImplemented
        cutoff = self._compatible(other)
        terms = dict(self._terms)
        for b, c in other._terms.items():
            terms[b] = terms.get(b, Fraction(0)) + c
        return NovikovSeries(self.ample, cutoff, terms)

    def __neg__(self):
        return NovikovSeries(self.ample, self.cutoff, {b: -c for b, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return NovikovSeries(self.ample, self.cutoff, {b: c * other for b, c in self._terms.items()})
        if not isinstance(other, NovikovSeries):
            return NotImplemented
        cutoff = self._compatible(other)
        terms: dict[CurveClass, Fraction] = {}
        for b1, c1 in self._terms.items():
            d1 = degree(b1, self.ample)
            for b2, c2 in other._terms.items():
                if d1 + degree(b2, self.ample) <= cutoff:
                    b = b1 + b2
                    terms[b] = terms.get(b, Fraction(0)) + c1 * c2
        return NovikovSeries(self.ample, cutoff, terms)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, NovikovSeries):
            return NotImplemented
        return self.ample == other.ample and self.cutoff == other.cutoff and self._terms == other._terms

    def __repr__(self):
        body = " + ".join(f"({format_rational(self._terms[b])})q^{tuple(b)}" for b in self) or "0"
        return f"NovikovSeries[deg<={self.cutoff}]({body})"


def geometric_log(beta: CurveClass, ample: Sequence[int], cutoff: int) -> NovikovSeries:
    """Truncation of log(1 - q^beta) = -sum_k q^(k beta)/k."""
    beta = CurveClass(beta)
    if not beta.is_effective():
        raise ValueError(f"{beta} is not effective")
    d = degree(beta, ample)
    terms = {}
    k = 1
    while k * d <= cutoff:
        terms[k * beta] = Fraction(-1, k)
        k += 1
    return NovikovSeries(ample, cutoff, terms)
