from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cy4gv.foundation import (
    CurveClass,
    NovikovSeries,
    decompositions,
    divisors_of,
    effective_classes,
    format_rational,
    geometric_log,
    sigma,
    to_rational,
)


def test_divisors_of_examples():
    assert divisors_of(CurveClass((2, 2))) == [(1, (2, 2)), (2, (1, 1))]
    assert divisors_of(CurveClass((1, 2))) == [(1, (1, 2))]
    assert divisors_of(CurveClass((6,))) == [(1, (6,)), (2, (3,)), (3, (2,)), (6, (1,))]


def test_divisors_of_rejects_non_effective():
    with pytest.raises(ValueError, match="not effective"):
        divisors_of(CurveClass((1, -1)))
    with pytest.raises(ValueError, match="not effective"):
        divisors_of(CurveClass((0, 0)))


def test_decompositions_examples():
    assert decompositions(CurveClass((1, 1))) == [((0, 1), (1, 0)), ((1, 0), (0, 1))]
    assert decompositions(CurveClass((2,))) == [((1,), (1,))]
    assert decompositions(CurveClass((3,))) == [((1,), (2,)), ((2,), (1,))]
    assert decompositions(CurveClass((1,))) == []


def test_geometric_log_examples():
    s = geometric_log(CurveClass((1,)), (1,), 3)
    assert s.terms == {(1,): -1, (2,): Fraction(-1, 2), (3,): Fraction(-1, 3)}
    assert geometric_log(CurveClass((2,)), (1,), 3).terms == {(2,): -1}
    s = geometric_log(CurveClass((1, 1)), (1, 1), 4)
    assert s.terms == {(1, 1): -1, (2, 2): Fraction(-1, 2)}
    # cutoff below the degree gives the empty series
    assert len(geometric_log(CurveClass((3,)), (1,), 2)) == 0


def test_sigma():
    assert [sigma(d) for d in (1, 6, 12)] == [1, 12, 28]
    with pytest.raises(ValueError):
        sigma(0)


def test_rationals():
    assert to_rational("-3/6") == Fraction(-1, 2)
    assert format_rational(Fraction(4, 2)) == "2"
    assert format_rational(Fraction(-3, 9)) == "-1/3"
    with pytest.raises(TypeError):
        to_rational(0.5)


def test_curve_class_arithmetic():
    b = CurveClass((2, 1))
    assert b + CurveClass((1, 1)) == (3, 2)
    assert b - CurveClass((2, 2)) == (0, -1)
    assert 3 * b == (6, 3) and b * 2 == (4, 2)
    assert CurveClass.from_key(b.key()) == b
    with pytest.raises(ValueError):
        b + CurveClass((1,))


def test_effective_classes_sorted_by_degree():
    cl = effective_classes(2, (1, 1), 2)
    assert cl == [(0, 1), (1, 0), (0, 2), (1, 1), (2, 0)]


def test_series_truncates_and_drops_zeros():
    s = NovikovSeries((1,), 2, {(1,): 1, (2,): 0, (3,): 5})
    assert s.terms == {(1,): 1}
    with pytest.raises(ValueError):
        NovikovSeries((1,), 2, {(0,): 1})


classes = st.tuples(st.integers(0, 3), st.integers(0, 3)).filter(any)
coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=6)
series = st.dictionaries(classes, coeffs, max_size=6).map(lambda d: NovikovSeries((1, 1), 5, d))


@settings(max_examples=60, deadline=None)
@given(series, series, series)
def test_series_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(st.tuples(st.integers(0, 12), st.integers(0, 12)).filter(any))
def test_divisors_reconstruct(beta):
    beta = CurveClass(beta)
    for k, small in divisors_of(beta):
        assert k * small == beta


@given(st.integers(1, 4), st.integers(4, 20))
def test_geometric_log_coefficients(d, cutoff):
    s = geometric_log(CurveClass((d,)), (1,), cutoff)
    for k in range(1, cutoff // d + 1):
        assert -s[(k * d,)] == Fraction(1, k)
