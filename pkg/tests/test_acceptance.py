"""The ten acceptance criteria, each at exact equality.

Run with ``pytest tests/test_acceptance.py -v`` (the PASS/FAIL lines appear in
the terminal summary) or directly with ``python tests/test_acceptance.py``.
"""

import sys
import time
from contextlib import contextmanager
from fractions import Fraction

from wildhodge import fq, hecke, hodge, macdonald as mac
from wildhodge.hodge import WildType
from wildhodge.partitions import partitions_of

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # pragma: no cover - direct script run from elsewhere
    ACCEPTANCE_LINES = []


@contextmanager
def criterion(number: int, title: str, budget_s: float):
    start = time.perf_counter()
    status = "FAIL"
    try:
        yield
        status = "PASS"
    finally:
        elapsed = time.perf_counter() - start
        timing = f"{elapsed:.2f}s / budget {budget_s:.0f}s"
        if elapsed > budget_s:
            status = "FAIL"
            timing += " (over budget)"
        line = f"[{status}] criterion {number:2d}: {title} ({timing})"
        ACCEPTANCE_LINES.append(line)
        print(line)
    assert elapsed <= budget_s


def _n2(g, k, r_vec):
    return WildType(g=g, mu=((1, 1),) * k, r_vec=tuple(r_vec), n=2)


CRITERION_3 = [_n2(g, k, (r,)) for g in (1, 2) for k, r in ((1, 1), (0, 2))]


def test_criterion_01_n2_closed_forms():
    with criterion(1, "n=2, g=0 mixed Hodge polynomials", 5):
        for wt, expected in hodge.n2_genus0_cases():
            assert hodge.mixed_hodge_conjectural(wt) == expected, wt.describe()


def test_criterion_02_empty_case():
    with criterion(2, "H vanishes for one simple wild pole and nothing else, n=2,3,4", 30):
        for n in (2, 3, 4):
            assert hodge.hh_poly(WildType(g=0, r_vec=(1,), n=n)).is_zero()


def test_criterion_03_e_polynomial_general_genus():
    with criterion(3, "E-polynomial equals the three-term formula for g=1,2", 10):
        for wt in CRITERION_3:
            assert hodge.e_polynomial(wt) == hodge.n2_closed_form_e(wt.g, wt.k, wt.m, wt.r), wt.describe()


def test_criterion_04_symmetry_and_palindromicity():
    with criterion(4, "H(z,w) = H(-w,-z) and E(q) = q^d E(1/q)", 10):
        instances = [wt for wt, _ in hodge.n2_genus0_cases()] + CRITERION_3
        instances += [WildType(g=0, r_vec=(1,), n=n) for n in (2, 3, 4)]
        for wt in instances:
            h = hodge.hh_poly(wt)
            assert hodge.swap_symmetric(h), wt.describe()
            if not h.is_zero():
                assert hodge.palindromic(hodge.e_polynomial(wt), hodge.dimension(wt)), wt.describe()


def test_criterion_05_curious_poincare_duality():
    with criterion(5, "WH(q,t) = (qt)^d WH(1/(qt^2), t) on every n=2, g=0 instance", 5):
        for wt, _ in hodge.n2_genus0_cases():
            wh = hodge.mixed_hodge_conjectural(wt)
            assert hodge.curious_poincare(wh, hodge.dimension(wt)), wt.describe()


def test_criterion_06_oracle_agreement():
    with criterion(6, "brute force = fusion = 31 = q^(d/2) H(q^-1/2, q^1/2) at q=5; empty case 0; g=1", 300):
        wt = WildType(g=0, r_vec=(3,), n=2)
        gt = fq.find_generic(wt, 5)
        assert gt
        brute = fq.count_points(wt, gt)
        fused = fq.fused_count(wt, gt)
        formula = hodge.e_polynomial(wt).evaluate(Fraction(5))
        assert brute == fused == formula == 31

        empty = WildType(g=0, r_vec=(1,), n=2)
        gt = fq.find_generic(empty, 5)
        assert fq.count_points(empty, gt) == fq.fused_count(empty, gt) == 0

        genus_one = WildType(g=1, mu=((1, 1),), r_vec=(1,))
        gt = fq.find_generic(genus_one, 5)
        assert fq.fused_count(genus_one, gt) == hodge.e_polynomial(genus_one).evaluate(Fraction(5)) == 356576


def test_criterion_07_macdonald_suite():
    with criterion(7, "Macdonald pairing, transpose symmetry, q=t=1 for |lambda| <= 6", 120):
        for n in range(1, 7):
            for lam in partitions_of(n):
                assert mac.pair_with_sign(lam) == mac.closed_form_pairing(lam), lam
                assert mac.macdonald(lam).expansion == mac.macdonald(lam.conjugate()).swap().expansion, lam
                assert mac.specialization_check(lam), lam


def test_criterion_08_hecke_suite():
    title = ("presentation, centrality, annihilating polynomial and rank multiplicities of T_0^2 "
             "for (2,2),(2,3),(3,2)")
    with criterion(8, title, 120):
        for n, q in ((2, 2), (2, 3), (3, 2)):
            assert hecke.presentation_check(n, q).ok, (n, q)
            assert hecke.is_central(hecke.t0_squared(n, q)), (n, q)
            rep = hecke.t0sq_spectrum_check(n, q)
            assert rep.annihilated and rep.central, (n, q)
            assert rep.ranks == rep.predicted, (n, q)
            # the signed lift s_i h_i(-1) differs by the central element T_(omega_0^2) = T_(+-I)
            signed = hecke.t0sq_spectrum_check(n, q, lift="omega")
            assert signed.ok and hecke.lift_relation_holds(n, q), (n, q)
        assert hecke.t0sq_spectrum_check(2, 3).eigenvalues == [1, 1, 3, 3, 3, 3, 9, 9]


def test_criterion_09_trace_identity():
    with criterion(9, "Bruhat-cell count equals the Hecke trace on 20 random samples at (2,3)", 60):
        samples = hecke.random_trace_samples(20, 2, 3, seed=2024)
        assert len(samples) == 20
        for x, word in samples:
            res = hecke.trace_count_sides(x, word, 3)
            assert res.agree, (x, word, res)


def test_criterion_10_tame_equivalence():
    with criterion(10, "wild (mu, 1^n) with r=1 equals its tame partner at n=2 and n=3", 300):
        wild, tame = hodge.tame_equivalence_types((1, 1))
        assert hodge.hh_poly(wild) == hodge.hh_poly(tame) == 1
        assert hodge.tame_equivalence_check((1, 1, 1)) is True


if __name__ == "__main__":
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_criterion")]
    failed = 0
    for test in tests:
        try:
            test()
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
