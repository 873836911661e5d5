from fractions import Fraction

import numpy as np
import pytest

from wildhodge import fq
from wildhodge.hodge import WildType, e_polynomial, n2_genus0_cases

HEADLINE = WildType(g=0, r_vec=(3,), n=2)
EMPTY = WildType(g=0, r_vec=(1,), n=2)


@pytest.mark.parametrize("n,q,classes", [(2, 2, 3), (2, 3, 8), (2, 5, 24), (2, 7, 48), (3, 2, 6)])
def test_group_tables(n, q, classes):
    tb = fq.build_group(n, q)
    assert tb.order == fq.gl_order(n, q) == len(tb.matrices)
    assert tb.class_count == classes
    assert int(tb.class_sizes.sum()) == tb.order
    # inverse and identity
    assert (tb.mul[np.arange(tb.order), tb.inv] == tb.identity).all()
    # subgroup orders: |U| = q^C(n,2), |T| = (q-1)^n, |N| = (q-1)^n n!
    assert len(tb.U_plus) == len(tb.U_minus) == q ** (n * (n - 1) // 2)
    assert len(tb.T) == (q - 1) ** n


def test_group_guards():
    with pytest.raises(ValueError):
        fq.build_group(2, 4)
    with pytest.raises(fq.GuardError):
        fq.build_group(3, 3)


@pytest.mark.parametrize("q", [2, 3, 5])
def test_commutator_count_mass(q):
    tb = fq.build_group(2, q)
    d = fq.commutator_count(tb)
    assert d.total_mass() == tb.order ** 2
    # D(1) = |G| * number of classes
    assert d.at_identity() == tb.order * tb.class_count


def test_convolution_against_direct_products():
    tb = fq.build_group(2, 3)
    a = fq.indicator(tb, tb.class_members(tb.diag([1, 2])))
    b = fq.indicator(tb, tb.class_members(tb.diag([2, 2])))
    direct = np.zeros(tb.order, dtype=np.int64)
    for x in tb.class_members(tb.diag([1, 2])):
        for y in tb.class_members(tb.diag([2, 2])):
            direct[tb.mul[x, y]] += 1
    assert list((a * b).on_elements()) == list(direct)


def test_stokes_distribution_mass():
    tb = fq.build_group(2, 3)
    dist = fq.stokes_product_distribution(tb, 2)
    assert sum(dist) == 3 ** 4
    with pytest.raises(ValueError):
        fq.stokes_count_function(tb, tb.identity, 1)
    with pytest.raises(ValueError):
        fq.stokes_count_function(tb, tb.diag([1, 2]), 0)


def test_generic_search():
    gt = fq.find_generic(HEADLINE, 5)
    assert gt and gt.wild == ((2, 3),)
    assert not fq.find_generic(HEADLINE, 3)
    assert not fq.find_generic(HEADLINE, 2)
    assert fq.smallest_generic_prime(HEADLINE) == 5
    assert fq.is_generic(HEADLINE, [], [(2, 3)], 5)
    assert not fq.is_generic(HEADLINE, [], [(1, 4)], 5)  # eigenvalue 1 alone
    assert not fq.is_generic(HEADLINE, [], [(2, 2)], 5)  # not regular


def test_headline_count():
    gt = fq.find_generic(HEADLINE, 5)
    solutions = fq.count_solutions_bruteforce(HEADLINE, gt)
    assert solutions == 59520
    assert fq.count_points(HEADLINE, gt, solutions=solutions) == 31
    assert fq.fused_count(HEADLINE, gt) == 31
    assert e_polynomial(HEADLINE).evaluate(5) == 31


def test_gauge_fixing_is_exact():
    gt = fq.find_generic(HEADLINE, 5)
    assert fq.count_solutions_bruteforce(HEADLINE, gt, gauge=False) == fq.count_solutions_bruteforce(HEADLINE, gt)


def test_empty_case_count():
    gt = fq.find_generic(EMPTY, 5)
    assert fq.count_points(EMPTY, gt) == 0
    assert fq.fused_count(EMPTY, gt) == 0


@pytest.mark.parametrize("case", n2_genus0_cases(), ids=lambda c: c[0].describe())
@pytest.mark.parametrize("q", [5, 7])
def test_three_oracles_n2(case, q):
    wt, _ = case
    gt = fq.find_generic(wt, q)
    if not gt:
        # only the four-puncture tame case lacks a generic tuple, and only at q = 5
        assert (wt.k, wt.m, q) == (4, 0, 5)
        return
    brute = fq.count_points(wt, gt)
    assert brute == fq.fused_count(wt, gt) == e_polynomial(wt).evaluate(Fraction(q))


@pytest.mark.parametrize(
    "wt,value",
    [
        (WildType(g=1, mu=((1, 1),)), 496),
        (WildType(g=1, mu=((1, 1),), r_vec=(1,)), 356576),
        (WildType(g=1, r_vec=(1,), n=2), 11696),
        (WildType(g=1, r_vec=(2,), n=2), 298096),
    ],
    ids=lambda x: x.describe() if isinstance(x, WildType) else str(x),
)
def test_genus_one(wt, value):
    assert not fq.find_generic(wt, 3)
    gt = fq.find_generic(wt, 5)
    assert fq.fused_count(wt, gt) == value == e_polynomial(wt).evaluate(5)


def test_genus_one_bruteforce():
    wt = WildType(g=1, r_vec=(1,), n=2)
    gt = fq.find_generic(wt, 5)
    assert fq.count_points(wt, gt) == 11696


def test_affine_d4_needs_q7():
    wt = WildType(g=0, mu=((1, 1),) * 4)
    assert not fq.find_generic(wt, 5)
    assert fq.fused_count(wt, fq.find_generic(wt, 7)) == 78


def test_check_guard():
    gt = fq.find_generic(HEADLINE, 5)
    with pytest.raises(fq.GuardError):
        fq.count_solutions_bruteforce(HEADLINE, gt, max_checks=10)
