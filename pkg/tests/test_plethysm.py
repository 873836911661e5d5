import pytest
from hypothesis import given, settings, strategies as st

from wildhodge.partitions import partitions_of
from wildhodge.plethysm import adams, pleth_exp, pleth_log
from wildhodge.polys import LaurentPoly2, RatFunc2
from wildhodge.symfunc import SymSeries

DEG = 4


def test_exp_of_single_variable_is_complete_homogeneous():
    x = SymSeries.monomial(1, DEG, [(1,)])
    e = pleth_exp(x)
    assert e.homogeneous(0) == SymSeries.one(1, DEG)
    for d in range(1, DEG + 1):
        assert e.homogeneous(d) == SymSeries.from_basis(1, DEG, [("h", (d,))])


def test_exp_of_scaled_variable():
    # Exp(z m_1) = sum_n h_n(z x) : coefficient of m_(1,1) in degree 2 is z^2
    z = RatFunc2.var(0)
    x = SymSeries.monomial(1, 2, [(1,)], coeff=z)
    assert pleth_exp(x).coefficient([(1, 1)]) == z ** 2


def test_adams_scales_partitions_and_variables():
    z = RatFunc2.var(0)
    f = SymSeries.monomial(2, 4, [(2,), (1,)], coeff=z + 1)
    g = adams(2, SymSeries.monomial(2, 6, [(1,), (1,)], coeff=z + 1))
    assert g.coefficient([(2,), (2,)]) == z ** 2 + 1
    assert adams(1, f) == f
    with pytest.raises(ValueError):
        adams(0, f)


@st.composite
def series(draw):
    out = SymSeries.zero(2, DEG)
    for _ in range(draw(st.integers(1, 3))):
        d1 = draw(st.integers(0, 2))
        d2 = draw(st.integers(0 if d1 else 1, 2))
        lam = draw(st.sampled_from(partitions_of(d1)))
        nu = draw(st.sampled_from(partitions_of(d2)))
        c = RatFunc2(LaurentPoly2.monomial(draw(st.integers(0, 2)), draw(st.integers(0, 2)), draw(st.integers(-2, 2))))
        out = out + SymSeries.monomial(2, DEG, [lam, nu], coeff=c)
    return out


@settings(max_examples=25, deadline=None)
@given(series())
def test_log_inverts_exp(f):
    assert pleth_log(pleth_exp(f)) == f


@settings(max_examples=25, deadline=None)
@given(series(), series())
def test_exp_turns_sums_into_products(f, g):
    assert pleth_exp(f + g) == pleth_exp(f) * pleth_exp(g)


def test_log_needs_unit_constant_term():
    with pytest.raises(ValueError):
        pleth_log(SymSeries.one(1, 2).scale(2))
    with pytest.raises(ValueError):
        pleth_exp(SymSeries.one(1, 2))


def test_log_of_one_is_zero():
    assert pleth_log(SymSeries.one(1, 3)).is_zero()


def test_mobius_needed_at_degree_two():
    # Log(1 + h_1 + h_2 + ...) = m_1 in one alphabet; a naive series log leaves p_2 / 2 behind
    g = SymSeries.one(1, 3)
    for d in range(1, 4):
        g = g + SymSeries.from_basis(1, 3, [("h", (d,))])
    assert pleth_log(g) == SymSeries.monomial(1, 3, [(1,)])
