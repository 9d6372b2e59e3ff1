"""The nine acceptance criteria, one test each."""
import random
from fractions import Fraction

import pytest

from cy4gv.chow import KClass, ch, chern_from_ch, chern_of_kclass, euler_characteristic_pn, integrate, product_ring
from cy4gv.conjecture import rhs_genus1, rhs_is_linear, rhs_terms
from cy4gv.constraints import (
    binomial_recursion_check,
    closed_form_gw,
    constraint_records,
    restricted_binomial_display,
)
from cy4gv.dt4_examples import (
    elliptic_tau1,
    local_p1p1_tau,
    local_p2_tau,
    local_p3_data,
    local_p3_tau,
    plane_conic_bundle,
    unreduced_virtual_coefficients,
)
from cy4gv.foundation import CurveClass, NovikovSeries, effective_classes
from cy4gv.geometry import FIXTURE_NAMES, load_fixture, n0_vector, n1, pair
from cy4gv.gv_series import gv0_from_gw0, gv1_from_gw1, gv1_from_tables, gw0_from_gv0, gw0_from_table, gw1_from_gv1, gw1_from_tables
from cy4gv.heuristic import (
    ELLIPTIC_SIGN,
    BlowupFamilyData,
    blowup_descendent,
    blowup_descendent_closed_form,
    elliptic_total,
)
from cy4gv.meeting import MeetingTable, meeting_table
from oracles import chi_brute, newton_to_ch

ELLIPTIC_ALPHAS = [(1, 0), (2, 1), (Fraction(3, 2), -2), (-5, Fraction(7, 3))]
P1P1_ALPHAS = [(1, 1), (1, 0), (2, 3), (Fraction(1, 2), Fraction(-3, 4))]


def _fixture(name):
    g = load_fixture(name)
    return g, meeting_table(g)


@pytest.mark.criterion(1, "meeting invariants")
def test_criterion_1_meeting_invariants():
    g, mt = _fixture("elliptic_p3")
    assert all(mt.get((r1,), (r2,)) == 46080 for r1 in range(1, 6) for r2 in range(1, 6))
    g, mt = _fixture("local_p3")
    assert (mt.get((1,), (1,)), mt.get((1,), (2,))) == (-1400, -67000)
    g, mt = _fixture("local_p1p1")
    got = [mt.get((1, 1), (1, 1)), mt.get((0, 1), (2, 1)), mt.get((0, 2), (2, 0)), mt.get((1, 0), (1, 2))]
    assert got == [-4, 2, 0, 2]
    g, mt = _fixture("local_p2")
    assert (mt.get((1,), (1,)), mt.get((1,), (2,))) == (6, 4)


@pytest.mark.criterion(2, "conjecture right-hand side")
def test_criterion_2_conjecture_rhs():
    g, mt = _fixture("elliptic_p3")
    for a1, a2 in ELLIPTIC_ALPHAS:
        for r in range(1, 6):
            assert rhs_genus1(g, mt, (r,), (a1, a2)) == (20 - 1920 * r * r) * Fraction(a1) + 960 * Fraction(a2)
    g, mt = _fixture("local_p3")
    assert rhs_genus1(g, mt, (2,), (1,)) == -30
    assert rhs_genus1(g, mt, (3,), (1,)) == -22610
    g, mt = _fixture("local_p2")
    assert rhs_genus1(g, mt, (3,), (1,)) == Fraction(3, 2)
    g, mt = _fixture("local_p1p1")
    for a, b in P1P1_ALPHAS:
        assert rhs_genus1(g, mt, (2, 2), (a, b)) == -2 * (Fraction(a) + Fraction(b))


@pytest.mark.criterion(3, "DT4 pipelines equal the right-hand side")
def test_criterion_3_dt4_pipelines():
    g, mt = _fixture("local_p2")
    value = local_p2_tau(3, (1,)).value
    assert value == Fraction(3, 2) == rhs_genus1(g, mt, (3,), (1,))

    g, mt = _fixture("local_p1p1")
    for a, b in P1P1_ALPHAS:
        value = local_p1p1_tau((a, b)).value
        assert value == -2 * (Fraction(a) + Fraction(b)) == rhs_genus1(g, mt, (2, 2), (a, b))

    g, mt = _fixture("local_p3")
    res = local_p3_tau(2, (1,))
    assert res.unsigned == 30 and res.value == -30 == rhs_genus1(g, mt, (2,), (1,))

    g, mt = _fixture("elliptic_p3")
    for a1, a2 in ELLIPTIC_ALPHAS:
        for r in range(1, 6):
            value = elliptic_tau1(r, (a1, a2), g.extras["dt4"]).value
            assert value == (20 - 1920 * r * r) * Fraction(a1) + 960 * Fraction(a2) == rhs_genus1(g, mt, (r,), (a1, a2))


@pytest.mark.criterion(4, "intersection-engine oracles")
def test_criterion_4_engine_oracles():
    ring, _, _ = plane_conic_bundle()
    pairings = [integrate(ring.monomial({"H": 3, "h1": 8 - j, "h2": j})) for j in range(4)]
    assert pairings == [-4, 6, -4, 1]

    obs = local_p3_data(2)["obstruction"]
    assert unreduced_virtual_coefficients(obs, obs.rank) == [120, 840, 3080, 7700]

    for n in range(5):
        for k in range(-4, 7):
            assert euler_characteristic_pn(n, k) == chi_brute(n, k)

    rng = random.Random(4)
    for trial in range(100):
        names = ("H",) if trial % 2 else ("a", "b")
        ring = product_ring([("H", 4)] if trial % 2 else [("a", 2), ("b", 2)])
        bundle = KClass(names, {})
        for _ in range(rng.randint(1, 5)):
            bundle = bundle + KClass.line(names, tuple(rng.randint(-3, 3) for _ in names))
        chclass = ch(ring, bundle)
        c = chern_from_ch(bundle.rank, chclass)
        assert c == chern_of_kclass(ring, bundle)
        assert newton_to_ch(bundle.rank, c) == chclass


@pytest.mark.criterion(5, "constraint identities")
def test_criterion_5_constraints():
    g, mt = _fixture("local_p1p1")
    records = constraint_records(g, mt, 6)
    assert {r.beta for r in records} == set(g.classes(6))
    for rec in records:
        assert pair(g, rec.alpha, rec.beta) == 0
        assert rec.gv_form[0] == rec.gv_form[1]
        assert rec.resummed[0] == rec.resummed[1]
        assert rec.gw_form[0] == rec.gw_form[1]
    for d1 in range(1, 11):
        for d2 in range(1, 11):
            lhs, rhs = binomial_recursion_check(d1, d2)
            assert lhs == rhs
    # the strictly-positive restricted variant does not hold
    lhs, rhs = restricted_binomial_display(2, 1)
    assert lhs != rhs


@pytest.mark.criterion(6, "series inversions")
def test_criterion_6_series_inversions():
    for name in FIXTURE_NAMES:
        g, mt = _fixture(name)
        for a in range(g.m):
            table = gv0_from_gw0(gw0_from_gv0(g, a, g.degree_bound))
            assert all(table[b] == n0_vector(g, b)[a] for b in g.classes(g.degree_bound))
        cutoff = min(g.degree_bound, g.gv1_degree_bound)
        table = gv1_from_gw1(g, gw1_from_gv1(g, mt, cutoff), mt)
        assert all(table[b] == n1(g, b) for b in g.classes(cutoff))

    rng = random.Random(6)
    for trial in range(100):
        rank = 1 + trial % 2
        ample = (1,) * rank
        classes = effective_classes(rank, ample, 8)
        gv = {b: rng.randint(-50, 50) for b in classes}
        c2 = {b: rng.randint(-50, 50) for b in classes}
        entries = {
            (b1, b2): rng.randint(-20, 20)
            for b1 in classes for b2 in classes
            if tuple(b1) <= tuple(b2) and sum(b1) + sum(b2) <= 8
        }
        mt = MeetingTable(ample, 8, entries)
        assert all(gv0_from_gw0(gw0_from_table(gv, ample, 8))[b] == gv[b] for b in classes)
        back = gv1_from_tables(gw1_from_tables(gv, c2, mt, ample, 8), c2, mt)
        assert all(back[b] == gv[b] for b in classes)

    classes = effective_classes(2, (1, 1), 4)
    series = NovikovSeries((1, 1), 4, {b: closed_form_gw(*b) for b in classes})
    assert gv0_from_gw0(series)[(2, 2)] == 2


@pytest.mark.criterion(7, "genus-0 regression")
def test_criterion_7_genus0_regression():
    assert local_p2_tau(3, (1,), m=0).value == -1
    assert local_p1p1_tau((1,), m=0).value == 2


@pytest.mark.criterion(8, "linearity")
def test_criterion_8_linearity():
    cases = {
        "elliptic_p3": [(r,) for r in range(1, 6)],
        "local_p2": [(3,)],
        "local_p1p1": [(2, 2), (3, 1)],
        "local_p3": [(2,), (3,)],
        "cy3xE_template": [(1,), (2,)],
    }
    for name, betas in cases.items():
        g, mt = _fixture(name)
        for beta in betas:
            report = rhs_is_linear(g, mt, beta, trials=20)
            assert report.passed and report.trials == 20, (name, beta)
    g, mt = _fixture("local_p1p1")
    bad = mt.replace((1, 0), (1, 2), mt.get((1, 0), (1, 2)) + 1)
    assert not rhs_is_linear(g, bad, (2, 2), trials=20).passed


@pytest.mark.criterion(9, "heuristic harness")
def test_criterion_9_heuristic():
    rng = random.Random(9)
    rand = lambda: Fraction(rng.randint(-9, 9), rng.randint(1, 6))
    done = 0
    while done < 20:
        k = rng.randint(0, 5)
        t = rand()
        if t == 0:
            continue
        data = BlowupFamilyData(k, rand(), t, tuple(rand() for _ in range(k)), rand())
        assert blowup_descendent(data) == blowup_descendent_closed_form(data)
        done += 1
    for name, beta, alpha in [
        ("local_p2", (3,), (1,)),
        ("local_p3", (3,), (1,)),
        ("elliptic_p3", (2,), (2, 1)),
        ("cy3xE_template", (1,), (3, -2)),
    ]:
        g, mt = _fixture(name)
        third = rhs_terms(g, mt, CurveClass(beta), alpha)[2]
        assert ELLIPTIC_SIGN * elliptic_total(g, beta, alpha) == third
