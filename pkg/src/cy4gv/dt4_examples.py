"""DT4 descendent invariants <tau_m(gamma)>_beta for the worked example geometries.

In the local examples X is the total space of a bundle N over a surface or
threefold S, the moduli space M is smooth, and the virtual class is the Euler
class of an obstruction bundle on M. A universal sheaf F on S x M gives
ch(i_* F) = i_*(ch(F) td(N)^-1) on X x M, so that

    tau_m(gamma) = pi_*( gamma|_S . [ch(F) td(N)^-1]_(3 + m - codim S) ).

The integral is multiplied by the orientation sign (-1)^(c_1(Y).beta - 1).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .chow import (
    KClass,
    RingClass,
    RingPresentation,
    ch,
    chern_from_ch,
    chern_of_kclass,
    euler_class,
    fiber_integral,
    product_ring,
    tangent_projective_bundle,
    tangent_projective_space,
)
from .chow import todd_inverse_of_lines


@dataclass(frozen=True)
class Dt4Result:
    geometry: str
    beta: tuple[int, ...]
    insertion: str
    alpha: tuple[Fraction, ...]
    unsigned: Fraction
    orientation_sign: int
    details: dict = field(default_factory=dict, compare=False)

    @property
    def value(self) -> Fraction:
        return self.orientation_sign * self.unsigned


def orientation_sign(c1_dot_beta: int) -> int:
    """(-1)^(c_1(Y).beta - 1)."""
    return -1 if (c1_dot_beta - 1) % 2 else 1


def descendent_class(
    ring: RingPresentation,
    sheaf: KClass,
    normal: Sequence[RingClass],
    surface: Sequence[tuple[str, int]],
    insertion: RingClass,
    m: int,
) -> RingClass:
    """pi_*(gamma|_S . [ch(F) td(N)^-1]_(3+m-c)) with c = rank N, pushed along the S factors."""
    degree = 3 + m - len(normal)
    y = (ch(ring, sheaf) * todd_inverse_of_lines(ring, normal)).part(degree) * insertion
    for name, _ in surface:
        y = fiber_integral(y, name)
    return y


def integrate_moduli(ring: RingPresentation, x: RingClass, surface: Sequence[tuple[str, int]]) -> Fraction:
    """Integrate a class pulled back from M by capping with a point of S."""
    return ring.integrate(x * ring.monomial({name: n for name, n in surface}))


def _alpha(alpha) -> tuple[Fraction, ...]:
    return tuple(Fraction(a) for a in alpha)


# --- K_{P^3} -------------------------------------------------------------------

def _p3_plane_bundle(twist: int):
    """E = f_* O_H(twist) for the universal hyperplane H in P^3 x (P^3)^dual,
    from [O_H(t)] = [O(t,0)] - [O(t-1,-1)] pushed along the first factor.
    Returns the ring P^3_H x P(E) over (P^3)^dual, E as a K-class, and the chern data."""
    names = ("H", "h2")
    o_h = KClass.line(names, (twist, 0)) - KClass.line(names, (twist - 1, -1))
    bundle = o_h.pushforward("H", 3)
    base = product_ring([("H", 3), ("h2", 3)])
    c = chern_from_ch(bundle.rank, ch(base, bundle.rename(names)))
    ring = base.projective_bundle("h1", [c.part(i) for i in range(1, bundle.rank + 1)])
    return ring, bundle.rename(("H", "h2", "h1")), c


def plane_conic_bundle() -> tuple[RingPresentation, KClass, RingClass]:
    """Ring of P^3 x M_1(P^3, 2) with M_1(P^3, 2) = P(f_* O_H(2)) over the dual P^3."""
    return _p3_plane_bundle(2)


def local_p3_data(d: int) -> dict:
    """Universal sheaf, obstruction class, virtual class and integration weight for d = 1, 2."""
    if d not in (1, 2):
        raise ValueError("K_P3 pipelines exist for d = 1 and d = 2")
    ring, bundle, _ = _p3_plane_bundle(d)
    names = ring.names
    line = lambda **k: KClass.line(names, k)
    one = KClass.trivial(names)
    # the curve is cut out in P^3 by the plane (degree 1, class h2) and by the
    # tautological section (degree d, class h1)
    sheaf = (one - line(H=-1, h2=-1)) * (one - line(H=-d, h1=-1))
    rhom = (sheaf.dual() * sheaf).pushforward("H", 3).rename(names)
    tangent = tangent_projective_space(names, "h2", 3) + tangent_projective_bundle(bundle, "h1")
    weight = ring.one()
    if d == 1:
        # P(f_* O_H(1)) is the flag variety {line in plane}; forgetting the plane
        # is a P^1-bundle over Gr(2,4) whose fibers have h2-degree 1
        tangent = tangent - line(h2=1, h1=-1)
        weight = ring.gen("h2")
    obs = tangent + rhom - one
    dim = ring.dimension - 3 - (1 if d == 1 else 0)
    if obs.rank != dim - 1:
        raise RuntimeError(f"obstruction rank {obs.rank} does not match virtual dimension one")
    vir = euler_class(obs.rank, ch(ring, obs))
    return {
        "ring": ring,
        "bundle": bundle,
        "sheaf": sheaf,
        "rhom": rhom,
        "tangent": tangent,
        "obstruction": obs,
        "virtual": vir,
        "weight": weight,
        "normal": [ring.linear({"H": -4})],
    }


def local_p3_tau(d: int, alpha=(1,), m: int = 1, data: dict | None = None) -> Dt4Result:
    """<tau_1(a [P^2])>_d on K_P3 (m = 1), <tau_2(1)>_d (m = 2) or <tau_0(a' [P^1])> (m = 0)."""
    data = data or local_p3_data(d)
    ring = data["ring"]
    (a,) = _alpha(alpha)
    insertion = {0: ring.monomial({"H": 2}), 1: ring.gen("H"), 2: ring.one()}[m] * (a if m != 2 else 1)
    tau = descendent_class(ring, data["sheaf"], data["normal"], [("H", 3)], insertion, m)
    unsigned = integrate_moduli(ring, data["virtual"] * tau * data["weight"], [("H", 3)])
    return Dt4Result("local_p3", (d,), f"tau{m}", (a,), unsigned, orientation_sign(4 * d), {"tau": tau})


def unreduced_virtual_coefficients(obs: KClass, rank: int) -> list[Fraction]:
    """Coefficients of h1^(7-j) h2^j in c_rank(Obs), with h1 treated as free
    (P^8 x P^3), i.e. before imposing the projective-bundle relation."""
    ring = product_ring([("H", 0), ("h2", 3), ("h1", 8)])
    c = chern_of_kclass(ring, obs).part(rank)
    return [c.coefficient({"h1": rank - j, "h2": j}) for j in range(4)]


# --- local P^2 -----------------------------------------------------------------

LOCAL_P2_NORMAL = (-1, -2)


def local_p2_cubic_sheaf() -> tuple[KClass, KClass]:
    """Universal sheaf for d = 3 on P^9 x P^2 x P^2 (H1, H2 on M, H3 on S).
    Returns (normalized class, class before normalization)."""
    names = ("H1", "H2", "H3")
    line = lambda *lab: KClass.line(names, lab)
    one = KClass.trivial(names)
    o_curve = one - line(-1, 0, -3)
    # Beilinson: O_Delta = O - O(-1) (x) Omega(1) + O(-2) (x) Omega^2(2), Omega(1) = 3O - O(1)
    o_diag = one - line(0, -1, 0) * 3 + line(0, -1, 1) + line(0, -2, -1)
    ideal = o_curve - o_diag
    raw = -(ideal.dual() * line(0, 0, -3))
    return raw * line(-1, 0, 0), raw


def local_p2_data(d: int) -> dict:
    if d in (1, 2):
        n_m = {1: 2, 2: 5}[d]
        ring = product_ring([("M", n_m), ("S", 2)])
        names = ring.names
        sheaf = KClass.trivial(names) - KClass.line(names, (-1, -d))
        surface, twist_name, divisor = [("S", 2)], "S", ring.one()
    elif d == 3:
        ring = product_ring([("H1", 9), ("H2", 2), ("H3", 2)])
        names = ring.names
        sheaf, _ = local_p2_cubic_sheaf()
        surface, twist_name, divisor = [("H3", 2)], "H3", ring.linear({"H1": 1, "H2": 3})
    else:
        raise ValueError("local P^2 pipelines exist for d <= 3")
    twist = KClass.line(names, {twist_name: -1})
    obs = -((sheaf.dual() * sheaf * twist).pushforward(twist_name, 2).rename(names))
    vir = euler_class(obs.rank, ch(ring, obs))
    return {
        "ring": ring,
        "sheaf": sheaf,
        "obstruction": obs,
        "virtual": vir,
        "divisor": divisor,
        "surface": surface,
        "normal": [ring.linear({twist_name: k}) for k in LOCAL_P2_NORMAL],
        "point": ring.monomial({twist_name: 2}),
        "line": ring.gen(twist_name),
    }


def local_p2_tau(d: int, alpha=(1,), m: int = 1, data: dict | None = None) -> Dt4Result:
    """<tau_1(a H)>_d (m=1), <tau_0(a [pt])>_d (m=0) or <tau_2(1)>_d (m=2) on Tot_P2(O(-1)+O(-2))."""
    data = data or local_p2_data(d)
    ring = data["ring"]
    (a,) = _alpha(alpha)
    insertion = {0: data["point"] * a, 1: data["line"] * a, 2: ring.one()}[m]
    tau = descendent_class(ring, data["sheaf"], data["normal"], data["surface"], insertion, m)
    unsigned = integrate_moduli(ring, data["virtual"] * tau * data["divisor"], data["surface"])
    # Y = Tot_P2(O(-1)) has c_1(Y) = 2H
    return Dt4Result("local_p2", (d,), f"tau{m}", (a,), unsigned, orientation_sign(2 * d), {"tau": tau})


# --- local P^1 x P^1 -------------------------------------------------------------

P1P1_NAMES = ("H1", "H2", "H3", "H4", "H5")


def local_p1p1_sheaf() -> tuple[KClass, KClass]:
    """Universal sheaf for (2,2) on P^8 x (P^1 x P^1) x (P^1 x P^1): H1 on the linear
    system, (H2,H3) the marked point, (H4,H5) the surface.
    Returns (normalized class, class before normalization)."""
    names = P1P1_NAMES
    line = lambda *lab: KClass.line(names, lab)
    one = KClass.trivial(names)
    o_curve = one - line(-1, 0, 0, -2, -2)
    o_diag = (one - line(0, -1, 0, -1, 0)) * (one - line(0, 0, -1, 0, -1))
    ideal = o_curve - o_diag
    raw = -(ideal.dual() * line(0, 0, 0, -2, -2))
    return raw * line(-1, 0, 0, 0, 0), raw


def local_p1p1_data() -> dict:
    ring = product_ring([("H1", 8), ("H2", 1), ("H3", 1), ("H4", 1), ("H5", 1)])
    names = ring.names
    sheaf, _ = local_p1p1_sheaf()
    twist = KClass.line(names, (0, 0, 0, -1, -1))
    obs = -((sheaf.dual() * sheaf * twist).pushforward("H4", 1).pushforward("H5", 1).rename(names))
    vir = euler_class(obs.rank, ch(ring, obs))
    normal = ring.linear({"H4": -1, "H5": -1})
    return {
        "ring": ring,
        "sheaf": sheaf,
        "obstruction": obs,
        "virtual": vir,
        "divisor": ring.linear({"H1": 1, "H2": 2, "H3": 2}),
        "normal": [normal, normal],
    }


def local_p1p1_tau(alpha=(1, 1), m: int = 1, data: dict | None = None) -> Dt4Result:
    """<tau_1(a H_1 + b H_2)>_(2,2) (m=1), <tau_0(c [pt])> (m=0, alpha=(c,)) or <tau_2(1)> (m=2)."""
    data = data or local_p1p1_data()
    ring = data["ring"]
    alpha = _alpha(alpha)
    if m == 1:
        a, b = alpha
        insertion = ring.linear({"H4": a, "H5": b})
    elif m == 0:
        insertion = ring.monomial({"H4": 1, "H5": 1}) * alpha[0]
    else:
        insertion = ring.one()
    tau = descendent_class(ring, data["sheaf"], data["normal"], [("H4", 1), ("H5", 1)], insertion, m)
    unsigned = integrate_moduli(ring, data["virtual"] * tau * data["divisor"], [("H4", 1), ("H5", 1)])
    # Y = Tot(O(-1,-1)) has c_1(Y) = (1,1), so c_1(Y).beta = 4
    return Dt4Result("local_p1p1", (2, 2), f"tau{m}", alpha, unsigned, orientation_sign(4), {"tau": tau})


# --- elliptic fibration and CY3 x E ------------------------------------------------

def elliptic_tau1(r: int, alpha, dt4: dict) -> Dt4Result:
    """Pair the ch_4 pushforward a1 (D + c r^2 B) + a2 B with the virtual class,
    which is a sign times PD(c_3(X)). ``dt4`` is the fixture's dt4 section."""
    if r < 1:
        raise ValueError("r must be positive")
    a1, a2 = _alpha(alpha)
    push = dt4["ch4_pushforward"]
    c3 = dt4["c3_pairing"]
    d_coeff = a1 * Fraction(push["alpha1_D"])
    b_coeff = a1 * Fraction(push["alpha1_B_per_r2"]) * r * r + a2 * Fraction(push["alpha2_B"])
    unsigned = d_coeff * Fraction(c3["D"]) + b_coeff * Fraction(c3["B"])
    return Dt4Result("elliptic_p3", (r,), "tau1", (a1, a2), unsigned, int(dt4["virtual_sign"]))


def product_cy3xE_tau1(r: int, alpha_dot_E, chi_y) -> Fraction:
    """beta = r[E]: the moduli space is Y x Pic^1(E) with virtual class -chi(Y)[Pic^1(E)]
    when r = 1; for r > 1 the moduli space is empty."""
    if r < 1:
        raise ValueError("r must be positive")
    if r > 1:
        return Fraction(0)
    return -Fraction(chi_y) * Fraction(alpha_dot_E)


def product_cy3xE_fiber_tau1(integral_alpha_E, deg_vir) -> Fraction:
    """beta in H_2(Y): (int_E alpha_2) . deg [M_1(Y, beta)]^vir."""
    return Fraction(integral_alpha_E) * Fraction(deg_vir)
