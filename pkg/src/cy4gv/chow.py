"""A small intersection-theory engine.

Two kinds of rings are supported: products of projective spaces, where the
i-th hyperplane class satisfies H_i^(n_i+1) = 0, and one projective bundle
P(E) of lines in a bundle E of rank r over such a product, with tautological
class h = c_1(O(1)) subject to

    h^r + c_1(E) h^(r-1) + ... + c_r(E) = 0.

With this relation pi_*(h^(r-1+j)) is the j-th Segre class of E, so integration
is just the coefficient of the fundamental monomial.

K-theory classes are integer combinations of line bundles, each labelled by
its exponent vector over the named generators.
"""
from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Iterable, Mapping, Sequence

Monomial = tuple[int, ...]


# --- power series in one variable --------------------------------------------

def series_inverse(coeffs: Sequence[Fraction], n: int) -> list[Fraction]:
    """Coefficients of 1/f up to x^n; f(0) must be nonzero."""
    if not coeffs or coeffs[0] == 0:
        raise ValueError("series is not invertible")
    coeffs = [Fraction(c) for c in coeffs] + [Fraction(0)] * (n + 1)
    inv = [Fraction(1) / coeffs[0]]
    for k in range(1, n + 1):
        acc = sum((coeffs[i] * inv[k - i] for i in range(1, k + 1)), Fraction(0))
        inv.append(-acc / coeffs[0])
    return inv


def exp_series(n: int) -> list[Fraction]:
    return [Fraction(1, factorial(k)) for k in range(n + 1)]


def todd_series(n: int) -> list[Fraction]:
    """x / (1 - e^(-x))."""
    return series_inverse([Fraction((-1) ** k, factorial(k + 1)) for k in range(n + 1)], n)


def inverse_todd_series(n: int) -> list[Fraction]:
    """(1 - e^(-x)) / x."""
    return [Fraction((-1) ** k, factorial(k + 1)) for k in range(n + 1)]


# --- rings -----------------------------------------------------------------

class RingPresentation:
    """Graded Q-algebra generated in degree 1.

    Build with :func:`product_ring` and optionally :meth:`projective_bundle`.
    """

    def __init__(self, names: Sequence[str], dims: Sequence[int], bundle=None):
        self.names = tuple(names)
        self.dims = tuple(dims)
        if len(set(self.names)) != len(self.names):
            raise ValueError("generator names must be distinct")
        # bundle: (rank, chern) with chern[i] a dict Monomial -> Fraction for c_{i+1}(E),
        # written over the base generators (last exponent 0)
        self.bundle = bundle
        self.n = len(self.names)
        self._hpow_cache: dict[int, dict[Monomial, Fraction]] = {}
        self._mul_cache: dict[tuple[Monomial, Monomial], dict[Monomial, Fraction]] = {}

    # structure
    @property
    def is_bundle(self) -> bool:
        return self.bundle is not None

    @property
    def base_dim(self) -> int:
        return sum(self.dims[: self.n - 1] if self.is_bundle else self.dims)

    @property
    def dimension(self) -> int:
        return self.base_dim + (self.bundle[0] - 1 if self.is_bundle else 0)

    @property
    def fundamental(self) -> Monomial:
        if self.is_bundle:
            return tuple(self.dims[: self.n - 1]) + (self.bundle[0] - 1,)
        return tuple(self.dims)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"generator {name!r} not in ring {self.names}") from None

    def projective_bundle(self, name: str, chern: Sequence["RingClass"]) -> "RingPresentation":
        """P(E) over this ring, E of rank len(chern) with c_i(E) = chern[i-1]."""
        if self.is_bundle:
            raise ValueError("only one projective-bundle layer is supported")
        r = len(chern)
        if r < 1:
            raise ValueError("bundle rank must be positive")
        cls = []
        for i, c in enumerate(chern, start=1):
            if c.ring is not self:
                raise ValueError("Chern classes must live in the base ring")
            bad = [m for m in c.terms if sum(m) != i]
            if bad:
                raise ValueError(f"c_{i}(E) is not homogeneous of degree {i}")
            cls.append({m + (0,): v for m, v in c.terms.items()})
        return RingPresentation(self.names + (name,), self.dims + (self.base_dim + r - 1,), (r, cls))

    # monomial arithmetic
    def _in_range(self, m: Monomial) -> bool:
        last = self.n - 1 if self.is_bundle else self.n
        return all(m[i] <= self.dims[i] for i in range(last))

    def _hpow(self, k: int) -> dict[Monomial, Fraction]:
        """Reduced form of h^k in a bundle ring."""
        if k in self._hpow_cache:
            return self._hpow_cache[k]
        r, chern = self.bundle
        zero = (0,) * (self.n - 1)
        if k < r:
            out = {zero + (k,): Fraction(1)}
        elif k > self.dimension:
            out = {}
        else:
            out: dict[Monomial, Fraction] = {}
            for mono, coeff in self._hpow(k - 1).items():
                e = mono[-1] + 1
                if e < r:
                    key = mono[:-1] + (e,)
                    out[key] = out.get(key, Fraction(0)) + coeff
                    continue
                # h^r = -sum_i c_i h^(r-i)
                for i, ci in enumerate(chern, start=1):
                    for cm, cv in ci.items():
                        key = tuple(a + b for a, b in zip(mono[:-1], cm[:-1])) + (r - i,)
                        if self._in_range(key):
                            out[key] = out.get(key, Fraction(0)) - coeff * cv
            out = {m: v for m, v in out.items() if v}
        self._hpow_cache[k] = out
        return out

    def mul_monomials(self, a: Monomial, b: Monomial) -> dict[Monomial, Fraction]:
        key = (a, b)
        cached = self._mul_cache.get(key)
        if cached is not None:
            return cached
        e = tuple(x + y for x, y in zip(a, b))
        if not self._in_range(e):
            out = {}
        elif not self.is_bundle or e[-1] < self.bundle[0]:
            out = {e: Fraction(1)}
        else:
            out = {}
            base = e[:-1]
            for mono, coeff in self._hpow(e[-1]).items():
                m = tuple(x + y for x, y in zip(base, mono[:-1])) + (mono[-1],)
                if self._in_range(m):
                    out[m] = out.get(m, Fraction(0)) + coeff
            out = {m: v for m, v in out.items() if v}
        self._mul_cache[key] = out
        return out

    # constructors
    def zero(self) -> "RingClass":
        return RingClass(self, {})

    def one(self) -> "RingClass":
        return RingClass(self, {(0,) * self.n: Fraction(1)})

    def gen(self, name: str) -> "RingClass":
        return self.linear({name: 1})

    def monomial(self, exponents: Mapping[str, int], coeff=1) -> "RingClass":
        e = [0] * self.n
        for name, k in exponents.items():
            e[self.index(name)] += k
        out = self.one()
        for i, k in enumerate(e):
            for _ in range(k):
                out = out * RingClass(self, {tuple(int(j == i) for j in range(self.n)): Fraction(1)})
        return out * Fraction(coeff)

    def linear(self, coeffs: Mapping[str, Fraction] | Sequence) -> "RingClass":
        if not isinstance(coeffs, Mapping):
            coeffs = dict(zip(self.names, coeffs))
        terms = {}
        for name, c in coeffs.items():
            if c:
                i = self.index(name)
                terms[tuple(int(j == i) for j in range(self.n))] = Fraction(c)
        return RingClass(self, terms)

    def power_series(self, x: "RingClass", coeffs: Sequence[Fraction]) -> "RingClass":
        """sum_k coeffs[k] x^k for x of positive degree."""
        if x.part(0).terms:
            raise ValueError("argument of a power series must have no constant term")
        out = self.zero()
        power = self.one()
        for k in range(self.dimension + 1):
            if k < len(coeffs) and coeffs[k]:
                out = out + power * coeffs[k]
            power = power * x
            if not power.terms:
                break
        return out

    def exp(self, x: "RingClass") -> "RingClass":
        return self.power_series(x, exp_series(self.dimension))

    def integrate(self, x: "RingClass") -> Fraction:
        if x.ring is not self:
            raise ValueError("class belongs to a different ring")
        return x.terms.get(self.fundamental, Fraction(0))

    def __repr__(self):
        kind = f", P(E) rank {self.bundle[0]}" if self.is_bundle else ""
        return f"RingPresentation({dict(zip(self.names, self.dims))}{kind})"


def product_ring(factors: Sequence[tuple[str, int]]) -> RingPresentation:
    """Cohomology of P^{n_1} x ... x P^{n_k}; factors are (name, n_i)."""
    if any(n < 0 for _, n in factors):
        raise ValueError("projective-space dimensions must be non-negative")
    return RingPresentation([name for name, _ in factors], [n for _, n in factors])


class RingClass:
    """Rational combination of reduced monomials in a fixed ring."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: RingPresentation, terms: Mapping[Monomial, Fraction]):
        self.ring = ring
        self.terms = {m: Fraction(v) for m, v in terms.items() if v}

    def _same(self, other: "RingClass"):
        if other.ring is not self.ring:
            raise ValueError("classes live in different rings")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.one() * other
        self._same(other)
        terms = dict(self.terms)
        for m, v in other.terms.items():
            terms[m] = terms.get(m, Fraction(0)) + v
        return RingClass(self.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        return RingClass(self.ring, {m: -v for m, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RingClass(self.ring, {m: v * other for m, v in self.terms.items()})
        if not isinstance(other, RingClass):
            return NotImplemented
        self._same(other)
        out: dict[Monomial, Fraction] = {}
        mul = self.ring.mul_monomials
        for a, va in self.terms.items():
            for b, vb in other.terms.items():
                for m, c in mul(a, b).items():
                    out[m] = out.get(m, Fraction(0)) + va * vb * c
        return RingClass(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = self.ring.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.one() * other
        if not isinstance(other, RingClass):
            return NotImplemented
        return self.ring is other.ring and self.terms == other.terms

    def part(self, degree: int) -> "RingClass":
        return RingClass(self.ring, {m: v for m, v in self.terms.items() if sum(m) == degree})

    def coefficient(self, exponents: Mapping[str, int]) -> Fraction:
        e = [0] * self.ring.n
        for name, k in exponents.items():
            e[self.ring.index(name)] = k
        return self.terms.get(tuple(e), Fraction(0))

    def is_zero(self) -> bool:
        return not self.terms

    def __repr__(self):
        if not self.terms:
            return "0"
        names = self.ring.names
        parts = []
        for m in sorted(self.terms, key=lambda m: (sum(m), [-x for x in m])):
            mono = "*".join(f"{n}^{k}" if k > 1 else n for n, k in zip(names, m) if k) or "1"
            parts.append(f"({self.terms[m]}){mono}")
        return " + ".join(parts)


def integrate(x: RingClass) -> Fraction:
    return x.ring.integrate(x)


def restrict_to_divisor(x: RingClass, divisor: RingClass) -> RingClass:
    """Restriction to a divisor, to be integrated ambiently afterwards."""
    return x * divisor


def fiber_integral(x: RingClass, name: str) -> RingClass:
    """Push forward along a projective-space factor: keep the coefficient of H^n
    and drop that generator (the result stays in the same ring, free of H)."""
    ring = x.ring
    i = ring.index(name)
    if ring.is_bundle and i == ring.n - 1:
        raise ValueError("cannot integrate over the bundle fiber with fiber_integral")
    if ring.is_bundle and any(m[i] for c in ring.bundle[1] for m in c):
        raise ValueError(f"the bundle depends on {name!r}")
    top = ring.dims[i]
    out = {}
    for m, v in x.terms.items():
        if m[i] == top:
            out[m[:i] + (0,) + m[i + 1:]] = v
    return RingClass(ring, out)


# --- K-theory ----------------------------------------------------------------

class KClass:
    """Integer combination of line bundles O(a_1, ..., a_k) over named generators."""

    __slots__ = ("names", "terms")

    def __init__(self, names: Sequence[str], terms: Mapping[Sequence[int], int] | None = None):
        self.names = tuple(names)
        clean: dict[tuple[int, ...], int] = {}
        for label, n in (terms or {}).items():
            label = tuple(label)
            if len(label) != len(self.names):
                raise ValueError(f"label {label} does not match generators {self.names}")
            if not isinstance(n, int):
                if Fraction(n).denominator != 1:
                    raise ValueError("K-theory coefficients must be integers")
                n = int(n)
            clean[label] = clean.get(label, 0) + n
        self.terms = {k: v for k, v in clean.items() if v}

    @classmethod
    def line(cls, names: Sequence[str], label: Sequence[int] | Mapping[str, int], n: int = 1) -> "KClass":
        names = tuple(names)
        if isinstance(label, Mapping):
            label = tuple(label.get(x, 0) for x in names)
        return cls(names, {tuple(label): n})

    @classmethod
    def trivial(cls, names: Sequence[str], n: int = 1) -> "KClass":
        return cls(names, {(0,) * len(tuple(names)): n})

    def _same(self, other):
        if self.names != other.names:
            raise ValueError(f"K-classes over different generators: {self.names} vs {other.names}")

    def __add__(self, other):
        if not isinstance(other, KClass):
            return NotImplemented
        self._same(other)
        terms = dict(self.terms)
        for k, v in other.terms.items():
            terms[k] = terms.get(k, 0) + v
        return KClass(self.names, terms)

    def __neg__(self):
        return KClass(self.names, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return KClass(self.names, {k: v * other for k, v in self.terms.items()})
        if not isinstance(other, KClass):
            return NotImplemented
        self._same(other)
        terms: dict[tuple[int, ...], int] = {}
        for a, va in self.terms.items():
            for b, vb in other.terms.items():
                lab = tuple(x + y for x, y in zip(a, b))
                terms[lab] = terms.get(lab, 0) + va * vb
        return KClass(self.names, terms)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, KClass):
            return NotImplemented
        return self.names == other.names and self.terms == other.terms

    @property
    def rank(self) -> int:
        return sum(self.terms.values())

    def dual(self) -> "KClass":
        return KClass(self.names, {tuple(-a for a in k): v for k, v in self.terms.items()})

    def rename(self, names: Sequence[str]) -> "KClass":
        """Re-express over another generator list; missing generators get exponent 0."""
        names = tuple(names)
        missing = [n for n, col in zip(self.names, zip(*self.terms) if self.terms else []) if any(col) and n not in names]
        if missing:
            raise ValueError(f"cannot drop generators {missing} carrying nonzero exponents")
        idx = {n: i for i, n in enumerate(self.names)}
        terms = {}
        for k, v in self.terms.items():
            lab = tuple(k[idx[n]] if n in idx else 0 for n in names)
            terms[lab] = terms.get(lab, 0) + v
        return KClass(names, terms)

    def pushforward(self, name: str, n: int) -> "KClass":
        """Exact K-theoretic pushforward along a P^n factor: O(a) |-> chi(P^n, O(a))."""
        i = self.names.index(name)
        names = self.names[:i] + self.names[i + 1:]
        terms: dict[tuple[int, ...], int] = {}
        for k, v in self.terms.items():
            chi = euler_characteristic_pn(n, k[i])
            if chi:
                lab = k[:i] + k[i + 1:]
                terms[lab] = terms.get(lab, 0) + v * chi
        return KClass(names, terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = [f"{v}*O({','.join(map(str, k))})" for k, v in sorted(self.terms.items())]
        return f"KClass[{','.join(self.names)}](" + " + ".join(parts) + ")"


def euler_characteristic_pn(n: int, a: int) -> int:
    """chi(P^n, O(a)) = (a+1)(a+2)...(a+n)/n!, valid for every integer a."""
    num = 1
    for j in range(1, n + 1):
        num *= a + j
    return num // factorial(n)


def _label_class(ring: RingPresentation, names: Sequence[str], label: Sequence[int]) -> RingClass:
    return ring.linear({n: a for n, a in zip(names, label) if a})


def ch(ring: RingPresentation, k: KClass) -> RingClass:
    """Chern character sum_L n_L exp(c_1(L))."""
    out = ring.zero()
    for label, n in k.terms.items():
        out = out + ring.exp(_label_class(ring, k.names, label)) * n
    return out


def chern_of_kclass(ring: RingPresentation, k: KClass) -> RingClass:
    """Total Chern class prod_L (1 + c_1(L))^(n_L), computed without ch."""
    out = ring.one()
    dim = ring.dimension
    inv = [Fraction((-1) ** j) for j in range(dim + 1)]
    for label, n in k.terms.items():
        x = _label_class(ring, k.names, label)
        if x.is_zero():
            continue
        factor = ring.one() + x if n > 0 else ring.power_series(x, inv)
        for _ in range(abs(n)):
            out = out * factor
    return out


def chern_from_ch(rank: int, chclass: RingClass) -> RingClass:
    """Total Chern class from the Chern character via Newton's identities:
    p_k = k! ch_k and k e_k = sum_{i=1}^k (-1)^(i-1) e_{k-i} p_i."""
    ring = chclass.ring
    ch0 = chclass.part(0)
    if ch0 != ring.one() * rank:
        raise ValueError(f"rank mismatch: ch_0 = {ch0!r}, expected {rank}")
    p = [None] + [chclass.part(k) * factorial(k) for k in range(1, ring.dimension + 1)]
    e = [ring.one()]
    for k in range(1, ring.dimension + 1):
        acc = ring.zero()
        for i in range(1, k + 1):
            term = e[k - i] * p[i]
            acc = acc + (term if i % 2 == 1 else -term)
        e.append(acc * Fraction(1, k))
    out = ring.zero()
    for x in e:
        out = out + x
    return out


def euler_class(rank: int, chclass: RingClass) -> RingClass:
    return chern_from_ch(rank, chclass).part(rank)


def todd_fiber(ring: RingPresentation, factors: Iterable[tuple[str, int]]) -> RingClass:
    """prod (H_i / (1 - e^(-H_i)))^(n_i + 1): the Todd class of the named P^{n_i} factors."""
    series = todd_series(ring.dimension)
    out = ring.one()
    for name, n in factors:
        t = ring.power_series(ring.linear({name: 1}), series)
        for _ in range(n + 1):
            out = out * t
    return out


def todd_inverse_of_lines(ring: RingPresentation, classes: Iterable[RingClass]) -> RingClass:
    """td^{-1} of a direct sum of line bundles with the given first Chern classes."""
    series = inverse_todd_series(ring.dimension)
    out = ring.one()
    for x in classes:
        out = out * ring.power_series(x, series)
    return out


def grr_pushforward(x: RingClass, factors: Sequence[tuple[str, int]]) -> RingClass:
    """ch of the pushforward along the named P^n factors: integrate x * td over the fibers."""
    y = x * todd_fiber(x.ring, factors)
    for name, _ in factors:
        y = fiber_integral(y, name)
    return y


def tangent_projective_space(names: Sequence[str], name: str, n: int) -> KClass:
    """T_{P^n} = (n+1) O(1) - O."""
    return KClass.line(names, {name: 1}, n + 1) - KClass.trivial(names)


def tangent_projective_bundle(bundle: KClass, taut: str) -> KClass:
    """Relative tangent bundle of P(E): E (x) O(1) - O."""
    return bundle * KClass.line(bundle.names, {taut: 1}) - KClass.trivial(bundle.names)
