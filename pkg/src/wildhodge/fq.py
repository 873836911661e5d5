"""Finite-field oracles: point counts of wild character varieties over F_p.

Everything is computed inside an explicit multiplication table of
``GL_n(F_p)``, so only tiny groups are in reach (n = 2 with p <= 7, n = 3 with
p = 2).  Two independent counts are provided:

* :func:`count_solutions_bruteforce` enumerates tuples of matrices and checks
  the defining product equation for each of them;
* :func:`fused_count` convolves class functions (commutator counts, class
  indicators and Stokes counts) and evaluates at the identity.

Both must agree with each other and with the E-polynomial.

>>> grp = build_group(2, 3)
>>> grp.order, grp.class_count
(48, 8)
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import prod
from typing import Sequence

import numpy as np
from sympy import isprime

from .hodge import WildType
from .partitions import Partition

MAX_GROUP_ORDER = 6000
MAX_CHECKS = 10 ** 9


class GuardError(RuntimeError):
    """A size guard refused a computation."""


def gl_order(n: int, q: int) -> int:
    return prod(q ** n - q ** i for i in range(n))


class GroupTable:
    """Enumerated ``GL_n(F_p)`` with a full multiplication table.

    Elements are indices into :attr:`matrices` (shape ``(order, n, n)``).
    """

    def __init__(self, n: int, p: int):
        if not isprime(p):
            raise ValueError(f"only prime fields are supported, got q={p}")
        order = gl_order(n, p)
        if order > MAX_GROUP_ORDER:
            raise GuardError(f"|GL_{n}(F_{p})| = {order} exceeds the guard {MAX_GROUP_ORDER}")
        self.n, self.q, self.order = n, p, order
        self._weights = p ** np.arange(n * n, dtype=np.int64)
        mats = self._enumerate()
        self.matrices = mats
        lookup = np.full(p ** (n * n), -1, dtype=np.int64)
        lookup[self.encode(mats)] = np.arange(order)
        self._lookup = lookup
        self.mul = self._table()
        self.identity = int(self.index(np.eye(n, dtype=np.int64)))
        self.inv = np.argmax(self.mul == self.identity, axis=1)
        self._classes()
        self._subgroups()

    # construction
    def _enumerate(self) -> np.ndarray:
        n, p = self.n, self.q
        codes = np.arange(p ** (n * n), dtype=np.int64)
        digits = (codes[:, None] // self._weights[None, :]) % p
        mats = digits.reshape(-1, n, n)
        dets = np.rint(np.linalg.det(mats.astype(float))).astype(np.int64) % p
        return mats[dets != 0]

    def encode(self, mats: np.ndarray) -> np.ndarray:
        flat = np.asarray(mats).reshape(-1, self.n * self.n)
        return flat @ self._weights

    def index(self, mats) -> np.ndarray | int:
        mats = np.asarray(mats, dtype=np.int64) % self.q
        out = self._lookup[self.encode(mats)]
        if (out < 0).any():
            raise ValueError("matrix is not invertible")
        return out if mats.ndim == 3 else int(out[0])

    def _table(self) -> np.ndarray:
        order, p = self.order, self.q
        mats = self.matrices
        table = np.empty((order, order), dtype=np.int32)
        chunk = max(1, 200000 // order)
        for start in range(0, order, chunk):
            block = np.einsum("aij,bjk->abik", mats[start:start + chunk], mats) % p
            table[start:start + chunk] = self._lookup[self.encode(block)].reshape(-1, order)
        return table

    def _classes(self):
        class_of = np.full(self.order, -1, dtype=np.int64)
        reps = []
        sizes = []
        everything = np.arange(self.order)
        for x in range(self.order):
            if class_of[x] >= 0:
                continue
            orbit = np.unique(self.mul[self.mul[everything, x], self.inv])
            class_of[orbit] = len(reps)
            reps.append(x)
            sizes.append(len(orbit))
        self.class_of = class_of
        self.class_reps = np.array(reps)
        self.class_sizes = np.array(sizes, dtype=np.int64)
        self.class_count = len(reps)

    def _subgroups(self):
        m = self.matrices
        n = self.n
        eye = np.eye(n, dtype=bool)
        upper = np.triu(np.ones((n, n), dtype=bool), 1)
        lower = upper.T
        diag_ones = (m[:, eye] == 1).all(axis=1)
        self.U_plus = np.flatnonzero(diag_ones & (m[:, lower] == 0).all(axis=1))
        self.U_minus = np.flatnonzero(diag_ones & (m[:, upper] == 0).all(axis=1))
        self.T = np.flatnonzero((m[:, ~eye] == 0).all(axis=1))
        diag = m[self.T][:, eye]
        distinct = np.array([len(set(row)) == n for row in diag.tolist()], dtype=bool)
        self.T_reg = self.T[distinct]
        self.N = np.flatnonzero(((m != 0).sum(axis=1) == 1).all(axis=1) & ((m != 0).sum(axis=2) == 1).all(axis=1))

    # queries
    def diag(self, values: Sequence[int]) -> int:
        return int(self.index(np.diag([int(v) for v in values])))

    def centralizer_order(self, x: int) -> int:
        return self.order // int(self.class_sizes[self.class_of[x]])

    def class_members(self, x: int) -> np.ndarray:
        return np.flatnonzero(self.class_of == self.class_of[x])

    def product(self, *xs: int) -> int:
        out = self.identity
        for x in xs:
            out = int(self.mul[out, x])
        return out


@lru_cache(maxsize=None)
def build_group(n: int, q: int) -> GroupTable:
    return GroupTable(n, q)


# ---------------------------------------------------------------- class functions

@dataclass(frozen=True)
class ClassFunction:
    """Exact values, one per conjugacy class of ``table``."""

    table: GroupTable
    values: tuple

    @classmethod
    def from_elements(cls, table: GroupTable, elem_values) -> ClassFunction:
        elem_values = np.asarray(elem_values, dtype=object)
        reps = elem_values[table.class_reps]
        return cls(table, tuple(reps.tolist()))

    def on_elements(self) -> np.ndarray:
        return np.array(self.values, dtype=object)[self.table.class_of]

    def __call__(self, x: int):
        return self.values[self.table.class_of[x]]

    def at_identity(self):
        return self(self.table.identity)

    def total_mass(self):
        return sum(v * int(s) for v, s in zip(self.values, self.table.class_sizes))

    def convolve(self, other: ClassFunction) -> ClassFunction:
        """``(f * h)(x) = sum_y f(y) h(y^-1 x)``, computed once per class."""
        tb = self.table
        f = self.on_elements()
        h = other.on_elements()
        return ClassFunction(tb, tuple(np.dot(f, h[tb.mul[tb.inv, x]]) for x in tb.class_reps))

    __mul__ = convolve


def indicator(table: GroupTable, members) -> ClassFunction:
    vals = np.zeros(table.order, dtype=object)
    vals[:] = 0
    vals[np.asarray(members)] = 1
    return ClassFunction.from_elements(table, vals)


def delta_identity(table: GroupTable) -> ClassFunction:
    return indicator(table, [table.identity])


def commutator_count(table: GroupTable) -> ClassFunction:
    """``D(x) = #{(a, b) : a^-1 b^-1 a b = x}``."""
    if table.order ** 2 > MAX_CHECKS:
        raise GuardError("commutator enumeration too large")
    tb = table
    ab = tb.mul  # ab[a, b] = a b
    ba = tb.mul.T
    comm = tb.mul[tb.inv[ba], ab]  # (b a)^-1 (a b)
    counts = np.bincount(comm.ravel(), minlength=tb.order)
    return ClassFunction.from_elements(tb, [int(c) for c in counts])


def stokes_product_distribution(table: GroupTable, r: int) -> np.ndarray:
    """``cnt[P]`` = number of tuples ``S_1..S_2r`` (odd upper, even lower unitriangular)
    with ``S_2r ... S_2 S_1 = P``."""
    tb = table
    dist = np.zeros(tb.order, dtype=object)
    dist[:] = 0
    dist[tb.identity] = 1
    for i in range(1, 2 * r + 1):
        grp = tb.U_plus if i % 2 else tb.U_minus
        new = np.zeros(tb.order, dtype=object)
        new[:] = 0
        support = np.flatnonzero(dist != 0)
        for s in grp:
            np.add.at(new, tb.mul[s, support], dist[support])
        dist = new
    return dist


def stokes_count_function(table: GroupTable, xi: int, r: int) -> ClassFunction:
    """``N(g) = #{(a, S) : a g a^-1 = xi S_2r ... S_1}`` for regular diagonal ``xi``."""
    tb = table
    if xi not in set(tb.T_reg.tolist()):
        raise ValueError("xi must be a regular diagonal matrix")
    if r < 1:
        raise ValueError("stokes_count_function is only defined for r >= 1")
    dist = stokes_product_distribution(tb, r)
    landed = np.zeros(tb.class_count, dtype=object)
    landed[:] = 0
    support = np.flatnonzero(dist != 0)
    targets = tb.class_of[tb.mul[xi, support]]
    for c, v in zip(targets.tolist(), dist[support].tolist()):
        landed[c] += v
    cent = tb.order // tb.class_sizes
    return ClassFunction(tb, tuple(int(landed[c]) * int(cent[c]) for c in range(tb.class_count)))


# ---------------------------------------------------------------- generic eigenvalues

@dataclass(frozen=True)
class GenericTuple:
    """Eigenvalues for each tame class (one per part of mu^i) and each wild point (n distinct)."""

    q: int
    tame: tuple[tuple[int, ...], ...]
    wild: tuple[tuple[int, ...], ...]

    def tame_diagonal(self, mu: Partition, i: int) -> list[int]:
        out = []
        for value, mult in zip(self.tame[i], mu):
            out.extend([value] * mult)
        return out

    def describe(self) -> str:
        tame = " ".join(f"C{i + 1}={list(v)}" for i, v in enumerate(self.tame))
        wild = " ".join(f"xi{j + 1}=diag{tuple(v)}" for j, v in enumerate(self.wild))
        return " ".join(x for x in (tame, wild) if x)


class NotFound:
    """No generic eigenvalue tuple exists over F_q for the requested type."""

    def __init__(self, q: int, reason: str = ""):
        self.q = q
        self.reason = reason

    def __bool__(self) -> bool:
        return False

    def __repr__(self) -> str:
        return f"NotFound(q={self.q})"


def _submultiset_products(values: Sequence[int], mults: Sequence[int], q: int, size: int) -> set[int]:
    out = set()
    for counts in product(*(range(m + 1) for m in mults)):
        if sum(counts) == size:
            out.add(prod(pow(v, c, q) for v, c in zip(values, counts)) % q)
    return out


def is_generic(t: WildType, tame: Sequence[Sequence[int]], wild: Sequence[Sequence[int]], q: int) -> bool:
    n = t.n
    blocks = [(tuple(v), tuple(mu)) for v, mu in zip(tame, t.mu)]
    blocks += [(tuple(v), (1,) * n) for v in wild]
    for vals, mults in blocks:
        if len(set(vals)) != len(vals) or any(v % q == 0 for v in vals):
            return False
    total = prod(pow(v, m, q) for vals, mults in blocks for v, m in zip(vals, mults)) % q
    if total != 1:
        return False
    for size in range(1, n):
        reach = {1}
        for vals, mults in blocks:
            prods = _submultiset_products(vals, mults, q, size)
            reach = {(a * b) % q for a in reach for b in prods}
        if 1 in reach:
            return False
    return True


def find_generic(t: WildType, q: int) -> GenericTuple | NotFound:
    """First generic eigenvalue assignment in lexicographic order, or :class:`NotFound`."""
    units = list(range(1, q))
    choices = []
    for mu in t.mu:
        choices.append([c for c in product(units, repeat=len(mu)) if len(set(c)) == len(c)])
    for _ in range(t.m):
        choices.append([c for c in product(units, repeat=t.n) if len(set(c)) == t.n])
    if any(not c for c in choices):
        return NotFound(q, "not enough distinct eigenvalues in F_q^x")
    for combo in product(*choices):
        tame, wild = combo[:t.k], combo[t.k:]
        if is_generic(t, tame, wild, q):
            return GenericTuple(q, tuple(tame), tuple(wild))
    return NotFound(q, "every eigenvalue assignment violates genericity")


def smallest_generic_prime(t: WildType, start: int = 2, limit: int = 50) -> int | None:
    for p in range(start, limit + 1):
        if isprime(p) and find_generic(t, p):
            return p
    return None


# ---------------------------------------------------------------- counts

def _tame_class(table: GroupTable, t: WildType, gt: GenericTuple, i: int) -> np.ndarray:
    return table.class_members(table.diag(gt.tame_diagonal(t.mu[i], i)))


def _factor_arrays(table: GroupTable, t: WildType, gt: GenericTuple, gauge: bool) -> list[np.ndarray]:
    """One array per factor of the defining product; entries enumerate the variable tuples."""
    tb = table
    factors = []
    for _ in range(t.g):
        a = np.repeat(np.arange(tb.order), tb.order)
        b = np.tile(np.arange(tb.order), tb.order)
        # (A, B) = A B A^-1 B^-1
        factors.append(tb.mul[tb.mul[tb.mul[a, b], tb.inv[a]], tb.inv[b]])
    for i in range(t.k):
        factors.append(_tame_class(tb, t, gt, i))
    for j, r in enumerate(t.r_vec):
        xi = tb.diag(gt.wild[j])
        s_prod = np.array([tb.identity])
        for i in range(1, 2 * r + 1):
            grp = tb.U_plus if i % 2 else tb.U_minus
            # S_i multiplies on the left of S_{i-1} ... S_1
            s_prod = tb.mul[grp[:, None], s_prod[None, :]].ravel()
        inner = tb.mul[xi, s_prod]
        cs = np.array([tb.identity]) if (gauge and j == 0) else np.arange(tb.order)
        block = tb.mul[tb.mul[tb.inv[cs][:, None], inner[None, :]], cs[:, None]].ravel()
        factors.append(block)
    return factors


def count_solutions_bruteforce(t: WildType, gt: GenericTuple, q: int | None = None, *, gauge: bool = True,
                               max_checks: int = MAX_CHECKS) -> int:
    """Number of matrix tuples solving the defining equation over F_q.

    With ``gauge=True`` and at least one wild point, ``C_1`` is fixed to the
    identity and the result multiplied by ``|G|``: right multiplication of
    ``C_1`` by ``G`` together with simultaneous conjugation of the other
    matrices permutes solutions freely.
    """
    q = gt.q if q is None else q
    tb = build_group(t.n, q)
    gauge = gauge and t.m > 0
    factors = _factor_arrays(tb, t, gt, gauge)
    total_checks = prod(len(f) for f in factors)
    if total_checks > max_checks:
        raise GuardError(f"brute force needs {total_checks} checks, guard is {max_checks}")
    partial = np.array([tb.identity], dtype=np.int64)
    for f in factors[:-1]:
        partial = tb.mul[partial[:, None], f[None, :]].ravel()
    last = factors[-1]
    hits = 0
    chunk = max(1, 4_000_000 // max(1, len(last)))
    for start in range(0, len(partial), chunk):
        block = tb.mul[partial[start:start + chunk, None], last[None, :]]
        hits += int(np.count_nonzero(block == tb.identity))
    return hits * (tb.order if gauge else 1)


def count_points(t: WildType, gt: GenericTuple, q: int | None = None, *, solutions: int | None = None) -> Fraction:
    """Points of the quotient: ``#U (q - 1) / (|G| (q - 1)^(n m))``."""
    q = gt.q if q is None else q
    if solutions is None:
        solutions = count_solutions_bruteforce(t, gt, q)
    value = Fraction(solutions * (q - 1), gl_order(t.n, q) * (q - 1) ** (t.n * t.m))
    if value.denominator != 1:
        raise ArithmeticError(f"non-integral point count {value}; the action is not free")
    return value


def fused_count(t: WildType, gt: GenericTuple, q: int | None = None) -> Fraction:
    """Point count from iterated class-function convolution evaluated at the identity."""
    q = gt.q if q is None else q
    tb = build_group(t.n, q)
    acc = delta_identity(tb)
    if t.g:
        d = commutator_count(tb)
        for _ in range(t.g):
            acc = acc * d
    for i in range(t.k):
        acc = acc * indicator(tb, _tame_class(tb, t, gt, i))
    for j, r in enumerate(t.r_vec):
        acc = acc * stokes_count_function(tb, tb.diag(gt.wild[j]), r)
    torus = (q - 1) ** t.n
    value = Fraction(acc.at_identity() * (q - 1), tb.order * torus ** t.m)
    return value
