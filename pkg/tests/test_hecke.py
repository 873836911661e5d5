import random
from fractions import Fraction
from itertools import product
from math import factorial

import pytest

from wildhodge import hecke
from wildhodge.fq import GuardError
from wildhodge.partitions import Partition

SMALL = [(2, 2), (2, 3), (3, 2)]


@pytest.mark.parametrize("n,q", [(2, 2), (2, 3), (2, 5), (3, 2)])
def test_dimension_and_double_cosets(n, q):
    alg = hecke.hecke_algebra(n, q)
    assert alg.dim == (q - 1) ** n * factorial(n)
    assert int(alg.dc_sizes.sum()) == alg.group.order


@pytest.mark.parametrize("n,q", [(2, 2), (2, 3)])
def test_associativity_and_identity_exhaustive(n, q):
    alg = hecke.hecke_algebra(n, q)
    T = [alg.T(v) for v in alg.basis]
    one = alg.one()
    for a in T:
        assert one * a == a * one == a
    for a, b, c in product(T, repeat=3):
        assert ((a * b) * c).coeffs == (a * (b * c)).coeffs


@pytest.mark.parametrize("n,q", [(2, 5), (3, 2)])
def test_associativity_random(n, q):
    alg = hecke.hecke_algebra(n, q)
    rng = random.Random(7)
    for _ in range(30):
        a, b, c = (alg.T(rng.choice(alg.basis)) for _ in range(3))
        assert ((a * b) * c).coeffs == (a * (b * c)).coeffs


def test_torus_elements_multiply_like_the_group():
    alg = hecke.hecke_algebra(2, 5)
    tb = alg.group
    for h in tb.T:
        for v in alg.basis:
            assert (alg.T(int(h)) * alg.T(v)).coeffs == alg.T(int(tb.mul[h, v])).coeffs


@pytest.mark.parametrize("q", [3, 5])
def test_quadratic_relation_example(q):
    alg = hecke.hecke_algebra(2, q)
    tb = alg.group
    w = alg.T(alg.omega(1))
    rhs = alg.T(tb.diag([q - 1, q - 1])).scale(q)
    for t in range(1, q):
        rhs = rhs + alg.T(tb.diag([t, pow(t, -1, q)])) * w
    assert (w * w).coeffs == rhs.coeffs


@pytest.mark.parametrize("n,q", SMALL)
def test_presentation(n, q):
    rep = hecke.presentation_check(n, q)
    assert rep.ok, rep.checks


def test_mismatched_algebras():
    a = hecke.hecke_algebra(2, 2).one()
    b = hecke.hecke_algebra(2, 3).one()
    with pytest.raises(ValueError):
        a * b


def test_reduced_words():
    assert hecke.reduced_words_w0(3) == [(1, 2, 1), (2, 1, 2)]
    assert len(hecke.reduced_words_w0(4)) == 16
    for n in range(2, 6):
        word = hecke.bubble_sort_word(n)
        assert len(word) == n * (n - 1) // 2
        assert word in set(hecke.reduced_words_w0(n))


@pytest.mark.parametrize("n,q", SMALL)
def test_t0_squared_central_and_word_independent(n, q):
    x = hecke.t0_squared(n, q)
    assert hecke.is_central(x)
    assert len({hecke.t0_squared(n, q, w).coeffs for w in hecke.reduced_words_w0(n)}) == 1
    assert hecke.is_central(hecke.t0_squared(n, q, lift="s"))


def test_t0_n2_is_omega_squared():
    alg = hecke.hecke_algebra(2, 3)
    w = alg.T(alg.omega(1))
    assert hecke.t0_squared(2, 3).coeffs == (w * w).coeffs


@pytest.mark.parametrize(
    "lam_type,f",
    [
        (((0, (2,)),), 2),
        (((0, (1, 1)),), 0),
        (((0, (1,)), (1, (1,))), 1),
        (((0, (3,)),), 6),
        (((0, (2, 1)),), 3),
        (((0, (1, 1, 1)),), 0),
    ],
)
def test_f_lambda(lam_type, f):
    assert hecke.f_lambda(lam_type) == f
    assert hecke.f_lambda_via_characters(lam_type) == f


@pytest.mark.parametrize("n,q", [(2, 3), (2, 5), (3, 2), (3, 3), (4, 2)])
def test_f_lambda_two_paths_and_dimension_count(n, q):
    types = hecke.lambda_types(n, q)
    for lt in types:
        assert hecke.f_lambda(lt) == hecke.f_lambda_via_characters(lt)
    assert sum(hecke.degree(lt) ** 2 for lt in types) == (q - 1) ** n * factorial(n)


def test_spectrum_2_3():
    rep = hecke.t0sq_spectrum_check(2, 3)
    assert rep.ok
    assert rep.eigenvalues == [1, 1, 3, 3, 3, 3, 9, 9]


def test_spectrum_2_2():
    rep = hecke.t0sq_spectrum_check(2, 2)
    assert rep.ok and rep.eigenvalues == [1, 4]


@pytest.mark.parametrize("n,q", SMALL + [(2, 5)])
@pytest.mark.parametrize("lift", hecke.LIFTS)
def test_spectrum_both_lifts(n, q, lift):
    assert hecke.t0sq_spectrum_check(n, q, lift).ok


def test_signed_lift_differs_when_q_odd():
    # omega_0^2 = -I for n = 2, so the signed lift picks up psi(-1) on mixed types
    assert hecke.omega0_sign(2, 3) == -1
    assert hecke.omega0_sign(3, 2) == 1
    assert hecke.t0sq_spectrum_check(2, 3, "omega").eigenvalues == [-3, -3, -3, -3, 1, 1, 9, 9]
    assert hecke.central_sign(((0, (1,)), (1, (1,))), -1) == -1
    assert hecke.central_sign(((1, Partition((2,))),), -1) == 1


@pytest.mark.parametrize("n,q", SMALL + [(2, 5)])
def test_lift_relation(n, q):
    assert hecke.lift_relation_holds(n, q)


@pytest.mark.parametrize("n,q", SMALL)
def test_actions_commute(n, q):
    assert hecke.actions_commute(n, q)


def test_trace_count_examples():
    alg = hecke.hecke_algebra(2, 3)
    e = alg.group.identity
    w0 = hecke.longest_element(alg)
    for word in ([w0, w0], [e, e], [alg.s(1), e], [e, w0, w0, e]):
        for x in (e, w0, alg.group.diag([1, 2])):
            res = hecke.trace_count_sides(x, word, 3)
            assert res.agree
    # (U w0 U)^2 never contains the identity when q is odd: w0^-1 lies in another cell
    assert hecke.bruhat_trace_count(e, [w0, w0], 3) == 0
    assert hecke.bruhat_trace_count(e, [e, e], 3) == 48


def test_trace_count_random():
    for x, word in hecke.random_trace_samples(20, 2, 3, seed=1):
        res = hecke.trace_count_sides(x, word, 3)
        assert res.lhs == res.rhs and isinstance(res.rhs, Fraction)


def test_trace_count_bad_word():
    with pytest.raises(ValueError):
        hecke.trace_count_sides(0, [0], 3)


def test_guards():
    with pytest.raises(GuardError):
        hecke.HeckeAlgebra(2, 37)
