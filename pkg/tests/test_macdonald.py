import pytest

from wildhodge.macdonald import (
    closed_form_pairing,
    macdonald,
    pair_with_sign,
    specialization_check,
)
from wildhodge.partitions import Partition, partitions_of
from wildhodge.polys import LaurentPoly2

SHAPES = [lam for n in range(1, 7) for lam in partitions_of(n)]
q, t = LaurentPoly2.var(0), LaurentPoly2.var(1)


def _schur(lam):
    return {nu: c for nu, c in macdonald(lam).schur_expansion().items() if not c.is_zero()}


def test_small_schur_expansions():
    one = LaurentPoly2.const(1)
    assert _schur((2,)) == {Partition((2,)): one, Partition((1, 1)): q}
    assert _schur((1, 1)) == {Partition((2,)): one, Partition((1, 1)): t}
    assert _schur((2, 1)) == {Partition((3,)): one, Partition((2, 1)): q + t, Partition((1, 1, 1)): q * t}
    assert _schur((3,)) == {Partition((3,)): one, Partition((2, 1)): q + q ** 2, Partition((1, 1, 1)): q ** 3}


@pytest.mark.parametrize("lam", SHAPES, ids=str)
def test_pairing_with_sign_character(lam):
    assert pair_with_sign(lam) == closed_form_pairing(lam)


@pytest.mark.parametrize("lam", SHAPES, ids=str)
def test_transpose_symmetry(lam):
    assert macdonald(lam).expansion == macdonald(lam.conjugate()).swap().expansion


@pytest.mark.parametrize("lam", SHAPES, ids=str)
def test_specialization_and_positivity(lam):
    assert specialization_check(lam)
    for c in macdonald(lam).schur_expansion().values():
        assert all(v >= 0 for v in c.terms.values())
    # the coefficient of s_(n) is always 1
    assert macdonald(lam).schur_expansion()[Partition((lam.size,))] == LaurentPoly2.const(1)


def test_bound_and_truncation():
    with pytest.raises(ValueError):
        macdonald((4, 3))
    h = macdonald((2, 1), max_vars=2)
    assert all(len(nu) <= 2 for nu in h.expansion)
    assert h.coefficient((1, 1, 1)).is_zero()
