from fractions import Fraction

import pytest

from cy4gv.chow import KClass
from cy4gv.conjecture import tau2_rhs
from cy4gv.dt4_examples import (
    elliptic_tau1,
    local_p1p1_data,
    local_p1p1_tau,
    local_p2_data,
    local_p2_tau,
    local_p3_data,
    local_p3_tau,
    orientation_sign,
    product_cy3xE_fiber_tau1,
    product_cy3xE_tau1,
)
from cy4gv.geometry import load_fixture

P1P1_ALPHAS = [(1, 1), (1, 0), (0, 1), (2, 3), (Fraction(1, 2), Fraction(-3, 4)), (5, -2)]


@pytest.fixture(scope="module")
def p3_two():
    return local_p3_data(2)


@pytest.fixture(scope="module")
def p2_three():
    return local_p2_data(3)


@pytest.fixture(scope="module")
def p1p1():
    return local_p1p1_data()


def test_orientation_sign():
    assert orientation_sign(4) == -1
    assert orientation_sign(3) == 1


def test_local_p3_obstruction(p3_two):
    names = p3_two["obstruction"].names
    line = lambda lab, n=1: KClass.line(names, lab, n)
    expected = line({"h1": 1, "h2": 1}, 20) + KClass.trivial(names) - line({"h1": 1}, 10) - line({"h2": 1}, 4)
    assert p3_two["obstruction"] == expected


def test_local_p3_degree_two(p3_two):
    res = local_p3_tau(2, (1,), 1, p3_two)
    assert res.unsigned == 30
    assert res.orientation_sign == -1
    assert res.value == -30
    assert local_p3_tau(2, (1,), 0, p3_two).value == -820
    assert local_p3_tau(2, (1,), 2, p3_two).value == Fraction(-2050, 3)


def test_local_p3_degree_one():
    data = local_p3_data(1)
    assert local_p3_tau(1, (1,), 1, data).value == -10
    assert local_p3_tau(1, (1,), 0, data).value == -20
    assert local_p3_tau(1, (1,), 2, data).value == Fraction(-50, 3)


def test_local_p3_scales_with_alpha(p3_two):
    assert local_p3_tau(2, (Fraction(-2, 3),), 1, p3_two).value == 20


def test_local_p2_degree_three(p2_three):
    assert local_p2_tau(3, (1,), 1, p2_three).value == Fraction(3, 2)
    assert local_p2_tau(3, (1,), 0, p2_three).value == -1
    assert local_p2_tau(3, (1,), 2, p2_three).value == Fraction(-1, 3)


@pytest.mark.parametrize("d,values", [(1, (-1, Fraction(-1, 2), Fraction(-1, 3))), (2, (1, Fraction(-1, 2), Fraction(1, 3)))])
def test_local_p2_low_degree(d, values):
    data = local_p2_data(d)
    assert tuple(local_p2_tau(d, (1,), m, data).value for m in range(3)) == values


@pytest.mark.parametrize("alpha", P1P1_ALPHAS)
def test_local_p1p1(alpha, p1p1):
    a, b = (Fraction(x) for x in alpha)
    assert local_p1p1_tau(alpha, 1, p1p1).value == -2 * (a + b)


def test_local_p1p1_other_descendents(p1p1):
    assert local_p1p1_tau((1,), 0, p1p1).value == 2
    assert local_p1p1_tau((), 2, p1p1).value == Fraction(1, 3)


def test_tau2_matches_c2_prediction(p3_two, p2_three, p1p1):
    assert local_p3_tau(2, (1,), 2, p3_two).value == tau2_rhs(load_fixture("local_p3"), (2,))
    assert local_p2_tau(3, (1,), 2, p2_three).value == tau2_rhs(load_fixture("local_p2"), (3,))
    assert local_p1p1_tau((), 2, p1p1).value == tau2_rhs(load_fixture("local_p1p1"), (2, 2))


def test_elliptic_pairing():
    g = load_fixture("elliptic_p3")
    for r in range(1, 6):
        for a1, a2 in [(1, 0), (2, 1), (Fraction(3, 2), -2)]:
            res = elliptic_tau1(r, (a1, a2), g.extras["dt4"])
            assert res.value == (20 - 1920 * r * r) * a1 + 960 * a2


def test_product_cy3xE():
    assert product_cy3xE_tau1(1, 1, -200) == 200
    assert product_cy3xE_tau1(2, 1, -200) == 0
    assert product_cy3xE_fiber_tau1(3, Fraction(1, 2)) == Fraction(3, 2)
    with pytest.raises(ValueError):
        product_cy3xE_tau1(0, 1, -200)
