"""The Yokonuma-Hecke algebra of ``GL_n(F_p)`` relative to its upper unitriangular subgroup.

The algebra is realized concretely: elements are U-bi-invariant functions on
the group, written in the basis ``T_v`` (indicator of ``U v U``) with ``v``
running over monomial matrices, and multiplied by

    (a * b)(g) = 1/|U| sum_x a(g x^-1) b(x).

Structure constants are computed once per ``(n, p)`` by direct convolution.
The abstract Yokonuma-Hecke presentation is only ever used as a test of this
realization.

>>> alg = hecke_algebra(2, 3)
>>> alg.dim
8
>>> sorted(t0sq_spectrum_check(2, 3).eigenvalues)
[1, 1, 3, 3, 3, 3, 9, 9]
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, prod
from typing import Iterable, Sequence

import flint
import numpy as np
from sympy import primitive_root

from .fq import GroupTable, GuardError, build_group
from .partitions import Partition, partitions_of

MAX_MODULE_DIM = 200
MAX_ALGEBRA_DIM = 1000


class HeckeAlgebra:
    def __init__(self, n: int, q: int):
        self.n, self.q = n, q
        dim = (q - 1) ** n * factorial(n)
        if dim > MAX_ALGEBRA_DIM:
            raise GuardError(f"algebra dimension {dim} exceeds the guard {MAX_ALGEBRA_DIM}")
        self.group: GroupTable = build_group(n, q)
        tb = self.group
        self.U = tb.U_plus
        self.basis = [int(v) for v in tb.N]
        self.dim = len(self.basis)
        self.position = {v: i for i, v in enumerate(self.basis)}
        self._double_cosets()
        self.structure = self._structure_constants()

    def _double_cosets(self):
        tb, U = self.group, self.U
        dc_of = np.full(tb.order, -1, dtype=np.int64)
        members = []
        for i, v in enumerate(self.basis):
            cell = np.unique(tb.mul[tb.mul[U[:, None], v], U[None, :]])
            if (dc_of[cell] >= 0).any():
                raise RuntimeError("monomial matrices do not separate double cosets")
            dc_of[cell] = i
            members.append(cell)
        if (dc_of < 0).any():
            raise RuntimeError("double cosets do not cover the group")
        self.dc_of = dc_of
        self.dc_members = members
        self.dc_sizes = np.array([len(c) for c in members], dtype=np.int64)

    def _structure_constants(self) -> np.ndarray:
        """``c[a, b, v]``: coefficient of ``T_v`` in ``T_a * T_b``."""
        tb = self.group
        u = len(self.U)
        c = np.zeros((self.dim, self.dim, self.dim), dtype=np.int64)
        for b in range(self.dim):
            xs_inv = tb.inv[self.dc_members[b]]
            for vi, v in enumerate(self.basis):
                counts = np.bincount(self.dc_of[tb.mul[v, xs_inv]], minlength=self.dim)
                if (counts % u).any():
                    raise ArithmeticError("non-integral Hecke structure constant")
                c[:, b, vi] = counts // u
        return c

    # elements
    def element(self, coeffs: dict[int, object] | None = None) -> HeckeElement:
        vec = [Fraction(0)] * self.dim
        for v, c in (coeffs or {}).items():
            vec[self.position[v]] += Fraction(c)
        return HeckeElement(self, tuple(vec))

    def T(self, v: int) -> HeckeElement:
        return self.element({self.coset_rep(v): 1})

    def one(self) -> HeckeElement:
        return self.T(self.group.identity)

    def coset_rep(self, g: int) -> int:
        return self.basis[int(self.dc_of[g])]

    def as_function(self, x: HeckeElement) -> np.ndarray:
        """Values on every group element."""
        vals = np.array(x.coeffs, dtype=object)
        return vals[self.dc_of]

    # special elements
    def h(self, i: int, t: int) -> int:
        """Diagonal matrix with ``t`` in position ``i`` (1-based)."""
        d = [1] * self.n
        d[i - 1] = t % self.q
        return self.group.diag(d)

    def s(self, i: int) -> int:
        m = np.eye(self.n, dtype=np.int64)
        m[[i - 1, i]] = m[[i, i - 1]]
        return int(self.group.index(m))

    def omega(self, i: int) -> int:
        tb = self.group
        return int(tb.mul[self.s(i), self.h(i, -1)])

    def generator(self) -> int:
        return int(primitive_root(self.q)) if self.q > 2 else 1


@lru_cache(maxsize=None)
def hecke_algebra(n: int, q: int) -> HeckeAlgebra:
    return HeckeAlgebra(n, q)


@dataclass(frozen=True)
class HeckeElement:
    algebra: HeckeAlgebra = field(repr=False, compare=False)
    coeffs: tuple

    def _same(self, other: HeckeElement):
        if (self.algebra.n, self.algebra.q) != (other.algebra.n, other.algebra.q):
            raise ValueError("Hecke elements from different algebras")

    def __add__(self, other: HeckeElement) -> HeckeElement:
        self._same(other)
        return HeckeElement(self.algebra, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: HeckeElement) -> HeckeElement:
        self._same(other)
        return HeckeElement(self.algebra, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> HeckeElement:
        return HeckeElement(self.algebra, tuple(-a for a in self.coeffs))

    def scale(self, c) -> HeckeElement:
        c = Fraction(c)
        return HeckeElement(self.algebra, tuple(a * c for a in self.coeffs))

    def __rmul__(self, c) -> HeckeElement:
        return self.scale(c)

    def __mul__(self, other):
        if not isinstance(other, HeckeElement):
            return self.scale(other)
        return hecke_multiply(self, other)

    def __pow__(self, k: int) -> HeckeElement:
        out = self.algebra.one()
        for _ in range(k):
            out = out * self
        return out

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def support(self) -> dict[int, Fraction]:
        return {self.algebra.basis[i]: c for i, c in enumerate(self.coeffs) if c}


def hecke_multiply(a: HeckeElement, b: HeckeElement) -> HeckeElement:
    a._same(b)
    alg = a.algebra
    out = [Fraction(0)] * alg.dim
    c = alg.structure
    for i, x in enumerate(a.coeffs):
        if not x:
            continue
        for j, y in enumerate(b.coeffs):
            if not y:
                continue
            xy = x * y
            for v in np.flatnonzero(c[i, j]):
                out[v] += xy * int(c[i, j, v])
    return HeckeElement(alg, tuple(out))


# ---------------------------------------------------------------- presentation

def _reduced_words(perm: tuple[int, ...]) -> list[tuple[int, ...]]:
    """All reduced words (1-based simple transpositions) of a permutation in one-line notation."""
    n = len(perm)
    descents = [i for i in range(n - 1) if perm[i] > perm[i + 1]]
    if not descents:
        return [()]
    words = []
    for i in descents:
        p = list(perm)
        p[i], p[i + 1] = p[i + 1], p[i]
        words.extend(w + (i + 1,) for w in _reduced_words(tuple(p)))
    return words


def reduced_words_w0(n: int) -> list[tuple[int, ...]]:
    return sorted(set(_reduced_words(tuple(range(n, 0, -1)))))


def bubble_sort_word(n: int) -> tuple[int, ...]:
    """Deterministic reduced word for the longest permutation, from bubble sort."""
    perm = list(range(n, 0, -1))
    swaps = []
    for end in range(n - 1, 0, -1):
        for i in range(end):
            if perm[i] > perm[i + 1]:
                perm[i], perm[i + 1] = perm[i + 1], perm[i]
                swaps.append(i + 1)
    # sorting applied s_{a1}, s_{a2}, ... on the right, so w0 = s_{ak} ... s_{a1}
    return tuple(reversed(swaps))


LIFTS = ("omega", "s")


def _lift(alg: HeckeAlgebra, i: int, lift: str) -> int:
    if lift == "omega":
        return alg.omega(i)
    if lift == "s":
        return alg.s(i)
    raise ValueError(f"unknown lift {lift!r}; expected one of {LIFTS}")


def longest_element(alg: HeckeAlgebra, word: Sequence[int] | None = None, lift: str = "omega") -> int:
    word = bubble_sort_word(alg.n) if word is None else tuple(word)
    return alg.group.product(alg.group.identity, *(_lift(alg, i, lift) for i in word))


def t0(alg: HeckeAlgebra, word: Sequence[int] | None = None, lift: str = "omega") -> HeckeElement:
    """``T_{i_1} ... T_{i_N}`` along a reduced word of the longest permutation.

    ``lift="omega"`` uses the signed lifts ``s_i h_i(-1)``; ``lift="s"`` uses the
    permutation matrices.  Their squares differ by the central element
    ``T_{omega_0^2}``, and ``omega_0^2 = +-1`` (scalar).
    """
    word = bubble_sort_word(alg.n) if word is None else tuple(word)
    out = alg.one()
    for i in word:
        out = out * alg.T(_lift(alg, i, lift))
    return out


def t0_squared(n: int, q: int, word: Sequence[int] | None = None, lift: str = "omega") -> HeckeElement:
    alg = hecke_algebra(n, q)
    x = t0(alg, word, lift)
    return x * x


def is_central(x: HeckeElement) -> bool:
    alg = x.algebra
    for v in alg.basis:
        t = alg.T(v)
        if not (x * t - t * x).is_zero():
            return False
    return True


@dataclass
class CheckReport:
    checks: list[tuple[str, bool]] = field(default_factory=list)

    def add(self, name: str, ok: bool):
        self.checks.append((name, bool(ok)))

    @property
    def ok(self) -> bool:
        return all(ok for _, ok in self.checks)


def presentation_check(n: int, q: int) -> CheckReport:
    """Relations of the Yokonuma-Hecke presentation with d = q - 1, u = q."""
    alg = hecke_algebra(n, q)
    d, u = q - 1, q
    tg = alg.generator()
    T = {i: alg.T(alg.omega(i)) for i in range(1, n)}
    H = {j: alg.T(alg.h(j, tg)) for j in range(1, n + 1)}
    one = alg.one()
    rep = CheckReport()

    def hpow(j: int, e: int) -> HeckeElement:
        return alg.T(alg.h(j, pow(tg, e % d, q) if d else 1))

    rep.add("far commutation", all((T[i] * T[j] - T[j] * T[i]).is_zero()
                                   for i in T for j in T if abs(i - j) > 1))
    rep.add("braid", all((T[i] * T[i + 1] * T[i] - T[i + 1] * T[i] * T[i + 1]).is_zero()
                         for i in range(1, n - 1)))
    rep.add("torus commutation", all((H[i] * H[j] - H[j] * H[i]).is_zero() for i in H for j in H))

    def swap(i: int, j: int) -> int:
        return i + 1 if j == i else i if j == i + 1 else j

    rep.add("torus twist", all((H[j] * T[i] - T[i] * H[swap(i, j)]).is_zero() for i in T for j in H))
    rep.add("torus order", all((H[j] ** d - one).is_zero() for j in H))
    ok = True
    for i in T:
        e = alg.element()
        for j in range(1, d + 1):
            e = e + hpow(i, j) * hpow(i + 1, -j)
        e = e.scale(Fraction(1, d))
        f = (hpow(i, d // 2) * hpow(i + 1, d // 2)) if d % 2 == 0 else one
        lhs = T[i] * T[i]
        rhs = f.scale(u) + (e * T[i]).scale(u - 1)
        ok = ok and (lhs - rhs).is_zero()
    rep.add("quadratic relation", ok)
    # the same relation in group terms
    ok = True
    for i in T:
        rhs = alg.T(alg.group.mul[alg.h(i, -1), alg.h(i + 1, -1)]).scale(q)
        for t in range(1, q):
            rhs = rhs + alg.T(alg.group.mul[alg.h(i, t), alg.h(i + 1, pow(t, -1, q))]) * T[i]
        ok = ok and (T[i] * T[i] - rhs).is_zero()
    rep.add("quadratic relation (group form)", ok)
    return rep


# ---------------------------------------------------------------- f_Lambda and degrees

LambdaType = tuple[tuple[int, Partition], ...]


def lambda_types(n: int, q: int) -> list[LambdaType]:
    """Maps from Z/(q-1) to partitions of total size n, as sorted (psi, partition) pairs."""
    d = q - 1
    out = []

    def rec(psi: int, left: int, acc: tuple):
        if psi == d:
            if left == 0:
                out.append(acc)
            return
        for size in range(left, -1, -1):
            for lam in partitions_of(size):
                rec(psi + 1, left - size, acc + ((psi, lam),) if size else acc)

    rec(0, n, ())
    return out


def f_lambda(lam_type: Iterable[tuple[int, Iterable[int]]]) -> int:
    """``C(n,2) + sum_psi n(lam_psi') - n(lam_psi)``."""
    parts = [Partition(p) for _, p in lam_type]
    n = sum(p.size for p in parts)
    return comb(n, 2) + sum(p.conjugate().weighted_size() - p.weighted_size() for p in parts)


def f_lambda_via_characters(lam_type: Iterable[tuple[int, Iterable[int]]]) -> Fraction:
    """Same integer, from central character values at a transposition.

    Each block of size ``n_j`` contributes ``C(n_j, 2) chi(s)/chi(1)`` with the
    ratio computed from the diagonal boxes.
    """
    parts = [Partition(p) for _, p in lam_type]
    n = sum(p.size for p in parts)
    total = Fraction(comb(n, 2))
    for p in parts:
        nj = p.size
        if nj < 2:
            continue
        ratio = Fraction(2, nj * (nj - 1)) * sum(comb(b + 1, 2) - comb(a + 1, 2) for b, a in p.frobenius_coordinates())
        total += comb(nj, 2) * ratio
    return total


def degree(lam_type: Iterable[tuple[int, Iterable[int]]]) -> int:
    parts = [Partition(p) for _, p in lam_type]
    n = sum(p.size for p in parts)
    return factorial(n) // prod(factorial(p.size) for p in parts) * prod(p.count_standard_tableaux() for p in parts)


# ---------------------------------------------------------------- spectrum

def _left_matrix(x: HeckeElement) -> flint.fmpq_mat:
    alg = x.algebra
    cols = []
    for v in alg.basis:
        cols.append((x * alg.T(v)).coeffs)
    dim = alg.dim
    return flint.fmpq_mat(dim, dim, [_fmpq(cols[j][i]) for i in range(dim) for j in range(dim)])


def _fmpq(x: Fraction) -> flint.fmpq:
    return flint.fmpq(x.numerator, x.denominator)


def omega0_sign(n: int, q: int) -> int:
    """The scalar ``c`` with ``omega_0^2 = c I``."""
    alg = hecke_algebra(n, q)
    w = longest_element(alg)
    m = alg.group.matrices[alg.group.mul[w, w]]
    c = int(m[0, 0])
    if not (m == c * np.eye(n, dtype=m.dtype)).all():
        raise ArithmeticError("omega_0^2 is not scalar")
    return 1 if c == 1 else -1


def central_sign(lam_type: Iterable[tuple[int, Iterable[int]]], c: int) -> int:
    """Value of ``T_{cI}`` on the irreducible labelled by ``lam_type`` (``c = +-1``).

    Characters of ``F_q^x`` are indexed so that ``psi_j(t_g) = exp(2 pi i j/(q-1))``,
    hence ``psi_j(-1) = (-1)^j``.
    """
    if c == 1:
        return 1
    return (-1) ** sum(j * Partition(p).size for j, p in lam_type)


@dataclass
class SpectrumReport:
    n: int
    q: int
    lift: str
    predicted: dict[int, int]          # eigenvalue -> predicted multiplicity, sum of (deg)^2
    ranks: dict[int, int]              # eigenvalue -> rank of the complementary product
    annihilated: bool
    central: bool
    eigenvalues: list[int]

    @property
    def ok(self) -> bool:
        return self.annihilated and self.central and self.ranks == self.predicted


def t0sq_spectrum_check(n: int, q: int, lift: str = "s") -> SpectrumReport:
    """Check that ``T_0^2`` acts on the type-``Lambda`` isotypic part by ``q^f_Lambda``.

    With ``lift="omega"`` the prediction is ``eps_Lambda q^f_Lambda``, where
    ``eps_Lambda`` is the central character of ``omega_0^2 = +-I``.
    """
    alg = hecke_algebra(n, q)
    x = t0_squared(n, q, lift=lift)
    M = _left_matrix(x)
    dim = alg.dim
    eye = flint.fmpq_mat(dim, dim, [int(i == j) for i in range(dim) for j in range(dim)])
    c = omega0_sign(n, q) if lift == "omega" else 1
    predicted: dict[int, int] = {}
    for lt in lambda_types(n, q):
        ev = central_sign(lt, c) * q ** f_lambda(lt)
        predicted[ev] = predicted.get(ev, 0) + degree(lt) ** 2
    factors = {ev: M - eye * ev for ev in predicted}
    full = eye
    for ev in sorted(factors):
        full = full * factors[ev]
    annihilated = all(full[i, j] == 0 for i in range(dim) for j in range(dim))
    ranks = {}
    for ev0 in predicted:
        rest = eye
        for ev in sorted(factors):
            if ev != ev0:
                rest = rest * factors[ev]
        ranks[ev0] = rest.rank()
    eigen = sorted(ev for ev, mult in ranks.items() for _ in range(mult))
    return SpectrumReport(n, q, lift, predicted, ranks, annihilated, is_central(x), eigen)


def lift_relation_holds(n: int, q: int) -> bool:
    """``T_{omega_0}^2 = T_{s_0}^2 * T_{omega_0^2}``."""
    alg = hecke_algebra(n, q)
    w = longest_element(alg)
    rhs = t0_squared(n, q, lift="s") * alg.T(int(alg.group.mul[w, w]))
    return (t0_squared(n, q) - rhs).is_zero()


# ---------------------------------------------------------------- permutation module and trace count

class PermutationModule:
    """Functions on right cosets ``U g``, with the G-action and the Hecke action as matrices."""

    def __init__(self, alg: HeckeAlgebra):
        tb = alg.group
        dim = tb.order // len(alg.U)
        if dim > MAX_MODULE_DIM:
            raise GuardError(f"module dimension {dim} exceeds the guard {MAX_MODULE_DIM}")
        self.algebra = alg
        coset_of = np.full(tb.order, -1, dtype=np.int64)
        reps = []
        for g in range(tb.order):
            if coset_of[g] < 0:
                coset_of[tb.mul[alg.U, g]] = len(reps)
                reps.append(g)
        self.coset_of = coset_of
        self.reps = np.array(reps)
        self.dim = len(reps)

    def group_matrix(self, g: int) -> np.ndarray:
        """``(g.f)(y) = f(y g)``; ``g`` sends the indicator of ``U c`` to that of ``U c g^-1``."""
        tb = self.algebra.group
        mat = np.zeros((self.dim, self.dim), dtype=object)
        mat[:] = 0
        ginv = tb.inv[g]
        for c, rep in enumerate(self.reps):
            mat[self.coset_of[tb.mul[rep, ginv]], c] = 1
        return mat

    def hecke_matrix(self, phi: HeckeElement) -> np.ndarray:
        """``(phi.f)(y) = 1/|U| sum_x phi(x) f(x^-1 y)`` in the indicator basis."""
        alg = self.algebra
        tb = alg.group
        values = alg.as_function(phi)
        u = len(alg.U)
        mat = np.zeros((self.dim, self.dim), dtype=object)
        mat[:] = Fraction(0)
        xs = np.arange(tb.order)
        for d, y in enumerate(self.reps):
            cosets = self.coset_of[tb.mul[tb.inv[xs], y]]
            for c in range(self.dim):
                mask = cosets == c
                if mask.any():
                    mat[d, c] = Fraction(sum(values[mask]), u)
        return mat


@lru_cache(maxsize=None)
def permutation_module(n: int, q: int) -> PermutationModule:
    return PermutationModule(hecke_algebra(n, q))


@dataclass(frozen=True)
class TraceCount:
    lhs: int
    rhs: Fraction

    @property
    def agree(self) -> bool:
        return self.lhs == self.rhs


def trace_count_sides(x: int, word: Sequence[int], q: int, n: int = 2) -> TraceCount:
    """Both sides of the Bruhat-cell trace formula for ``word = (v1, w1, ..., vk, wk)``."""
    if len(word) % 2 or not word:
        raise ValueError("word must have even positive length (v1, w1, ..., vk, wk)")
    alg = hecke_algebra(n, q)
    tb = alg.group
    U = alg.U
    # left side: distribution of products a1 ... ak with ai in vi U wi U
    dist = np.zeros(tb.order, dtype=object)
    dist[:] = 0
    dist[tb.identity] = 1
    for v, w in zip(word[::2], word[1::2]):
        cell = np.unique(tb.mul[tb.mul[tb.mul[v, U][:, None], w], U[None, :]].ravel())
        new = np.zeros(tb.order, dtype=object)
        new[:] = 0
        support = np.flatnonzero(dist != 0)
        for a in cell:
            np.add.at(new, tb.mul[support, a], dist[support])
        dist = new
    lhs = tb.centralizer_order(x) * int(sum(dist[tb.class_members(x)]))
    # right side: trace of x composed with T_v1 * T_w1 * ... on the permutation module
    phi = alg.one()
    for v in word:
        phi = phi * alg.T(v)
    module = permutation_module(n, q)
    trace = np.trace(module.group_matrix(x).dot(module.hecke_matrix(phi)))
    scale = Fraction(len(U) ** len(word), prod(int(alg.dc_sizes[alg.dc_of[v]]) for v in word[::2]))
    return TraceCount(lhs, scale * Fraction(trace))


class OracleDisagreement(AssertionError):
    pass


def bruhat_trace_count(x: int, word: Sequence[int], q: int, n: int = 2) -> int:
    """Direct count of the Bruhat-cell solution set; raises if the trace formula disagrees."""
    res = trace_count_sides(x, word, q, n)
    if not res.agree:
        raise OracleDisagreement(f"trace formula mismatch: {res.lhs} != {res.rhs}")
    return res.lhs


def random_trace_samples(count: int, n: int, q: int, seed: int = 0, max_k: int = 2):
    rng = np.random.default_rng(seed)
    alg = hecke_algebra(n, q)
    out = []
    for _ in range(count):
        x = int(rng.integers(alg.group.order))
        k = int(rng.integers(1, max_k + 1))
        word = [int(alg.basis[i]) for i in rng.integers(alg.dim, size=2 * k)]
        out.append((x, word))
    return out


def actions_commute(n: int, q: int) -> bool:
    """The Hecke action on functions on ``U\\G`` commutes with right translation, on generators."""
    alg = hecke_algebra(n, q)
    module = permutation_module(n, q)
    tb = alg.group
    gens = [alg.s(i) for i in range(1, n)] + [alg.h(j, alg.generator()) for j in range(1, n + 1)]
    gens += [int(u) for u in alg.U]
    hecke_gens = [alg.T(alg.omega(i)) for i in range(1, n)] + [alg.T(alg.h(j, alg.generator())) for j in range(1, n + 1)]
    ident = module.hecke_matrix(alg.one())
    if not (ident == np.eye(module.dim, dtype=object)).all():
        return False
    for g in gens:
        G = module.group_matrix(g)
        for x in hecke_gens:
            H = module.hecke_matrix(x)
            if not (G.dot(H) == H.dot(G)).all():
                return False
    return True
