"""Symmetric functions in several independent alphabets.

Series are stored in the monomial basis: a key is a tuple with one
:class:`Partition` per alphabet, and the value is a :class:`RatFunc2`.  Series
are truncated at a total degree ``max_degree``; products silently drop
anything above it.

Schur and complete homogeneous functions only appear as conversion targets
and as the second argument of the Hall pairing, where ``<m_lam, h_mu>`` is the
Kronecker delta and ``<s_lam, s_mu>`` likewise.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterable, Mapping, Sequence

from .partitions import Partition, partitions_of
from .polys import RatFunc2

Key = tuple[Partition, ...]


# ---------------------------------------------------------------- Kostka numbers

def _horizontal_strips(lam: Partition, size: int):
    """Partitions rho inside lam with lam/rho a horizontal strip of ``size`` boxes."""
    ell = len(lam)

    def rec(i: int, left: int, acc: tuple[int, ...]):
        if i == ell:
            if left == 0:
                yield Partition(acc)
            return
        # row i of rho lies between lam[i+1] and lam[i]
        low = lam[i + 1] if i + 1 < ell else 0
        for rho_i in range(lam[i], low - 1, -1):
            take = lam[i] - rho_i
            if take > left:
                break
            yield from rec(i + 1, left - take, acc + (rho_i,))

    yield from rec(0, size, ())


@lru_cache(maxsize=None)
def _kostka(lam: Partition, content: tuple[int, ...]) -> int:
    if not content:
        return 1 if not lam else 0
    last = content[-1]
    return sum(_kostka(rho, content[:-1]) for rho in _horizontal_strips(lam, last))


def kostka(lam: Iterable[int], nu: Iterable[int]) -> int:
    """Number of semistandard tableaux of shape ``lam`` and content ``nu``.

    >>> kostka((2, 1), (1, 1, 1))
    2
    >>> kostka((1, 1), (2,))
    0
    """
    lam, nu = Partition(lam), Partition(nu)
    if lam.size != nu.size:
        raise ValueError(f"size mismatch: |{lam}| != |{nu}|")
    return _kostka(lam, tuple(nu))


@lru_cache(maxsize=None)
def kostka_matrix(n: int) -> tuple[tuple[int, ...], ...]:
    """Rows indexed by lam, columns by nu, both in ``partitions_of(n)`` order."""
    parts = partitions_of(n)
    return tuple(tuple(kostka(lam, nu) for nu in parts) for lam in parts)


def _unitriangular_inverse(mat: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    # partitions_of is reverse-lex, a linear extension of dominance, so the
    # Kostka matrix is upper unitriangular in that order
    size = len(mat)
    inv = [[0] * size for _ in range(size)]
    for j in range(size):
        inv[j][j] = 1
        for i in range(j - 1, -1, -1):
            inv[i][j] = -sum(mat[i][k] * inv[k][j] for k in range(i + 1, j + 1))
    return tuple(tuple(row) for row in inv)


@lru_cache(maxsize=None)
def inverse_kostka_matrix(n: int) -> tuple[tuple[int, ...], ...]:
    return _unitriangular_inverse(kostka_matrix(n))


@lru_cache(maxsize=None)
def _index(n: int) -> dict[Partition, int]:
    return {lam: i for i, lam in enumerate(partitions_of(n))}


def to_schur(component: Mapping[Partition, object], n: int) -> dict[Partition, object]:
    """Monomial coefficients of a degree-``n`` function to Schur coefficients."""
    kinv = inverse_kostka_matrix(n)
    idx = _index(n)
    out: dict[Partition, object] = {}
    for lam in partitions_of(n):
        j = idx[lam]
        acc = 0
        for nu, c in component.items():
            e = kinv[idx[Partition(nu)]][j]
            if e:
                acc = acc + c * e
        if acc != 0:
            out[lam] = acc
    return out


def from_schur(component: Mapping[Partition, object], n: int) -> dict[Partition, object]:
    """Schur coefficients to monomial coefficients: ``s_lam = sum_nu K[lam, nu] m_nu``."""
    kmat = kostka_matrix(n)
    idx = _index(n)
    out: dict[Partition, object] = {}
    for nu in partitions_of(n):
        j = idx[nu]
        acc = 0
        for lam, c in component.items():
            e = kmat[idx[Partition(lam)]][j]
            if e:
                acc = acc + c * e
        if acc != 0:
            out[nu] = acc
    return out


@lru_cache(maxsize=None)
def _pairing_weights(kind: str, lam: Partition) -> dict[Partition, int]:
    """nu -> <m_nu, b> for the basis element b = kind_lam."""
    n = lam.size
    idx = _index(n)
    j = idx[lam]
    if kind == "h":
        return {lam: 1}
    if kind == "s":
        kinv = inverse_kostka_matrix(n)
        return {nu: kinv[idx[nu]][j] for nu in partitions_of(n) if kinv[idx[nu]][j]}
    if kind == "m":
        # h = N m with N = K^T K, so <m_nu, m_lam> = (N^{-1})[lam, nu]
        kinv = inverse_kostka_matrix(n)
        size = len(kinv)
        # N^{-1} = K^{-1} (K^{-1})^T
        out = {}
        for nu in partitions_of(n):
            i = idx[nu]
            v = sum(kinv[j][a] * kinv[i][a] for a in range(size))
            if v:
                out[nu] = v
        return out
    raise ValueError(f"unknown basis {kind!r}; expected 'h', 's' or 'm'")


# ---------------------------------------------------------------- monomial products

def _distinct_perms(vec: tuple[int, ...]) -> list[tuple[int, ...]]:
    counts = Counter(vec)
    keys = sorted(counts)
    out: list[tuple[int, ...]] = []
    cur: list[int] = []

    def rec(left: int):
        if left == 0:
            out.append(tuple(cur))
            return
        for k in keys:
            if counts[k]:
                counts[k] -= 1
                cur.append(k)
                rec(left - 1)
                cur.pop()
                counts[k] += 1

    rec(len(vec))
    return out


@lru_cache(maxsize=None)
def monomial_product(lam: Partition, nu: Partition) -> tuple[tuple[Partition, int], ...]:
    """Expansion of ``m_lam * m_nu`` in the monomial basis.

    The coefficient of ``m_kappa`` is the number of ways to write the exponent
    vector ``kappa`` as ``alpha + beta`` with ``alpha`` a rearrangement of
    ``lam`` and ``beta`` one of ``nu``.

    >>> monomial_product(Partition((1,)), Partition((1,)))
    ((Partition(2), 1), (Partition(1, 1), 2))
    """
    if not lam:
        return ((nu, 1),)
    if not nu:
        return ((lam, 1),)
    width = len(lam) + len(nu)
    alphas = _distinct_perms(tuple(lam) + (0,) * len(nu))
    betas = _distinct_perms(tuple(nu) + (0,) * len(lam))
    tally: Counter = Counter()
    for a in alphas:
        for b in betas:
            s = tuple(x + y for x, y in zip(a, b))
            if all(s[i] >= s[i + 1] for i in range(width - 1)):
                tally[s] += 1
    res = sorted(((Partition(k), c) for k, c in tally.items()), key=lambda kv: _rank(kv[0]))
    return tuple(res)


def _rank(lam: Partition) -> int:
    return _index(lam.size)[lam]


# ---------------------------------------------------------------- series

def _key_degree(key: Key) -> int:
    return sum(p.size for p in key)


def _sum_ratfuncs(values: list[RatFunc2]) -> RatFunc2:
    """Sum grouped by denominator first, so gcd work happens once per distinct denominator."""
    groups: dict = {}
    for v in values:
        d = v.den
        if d in groups:
            groups[d] = groups[d] + v.num
        else:
            groups[d] = v.num
    total = RatFunc2.const(0)
    for d, num in groups.items():
        if num:
            total = total + RatFunc2(num, d)
    return total


class SymSeries:
    """Truncated series in ``alphabet_count`` alphabets, monomial basis, RatFunc2 coefficients."""

    __slots__ = ("alphabet_count", "max_degree", "coeffs")

    def __init__(self, alphabet_count: int, max_degree: int, coeffs: Mapping[Key, object] | None = None):
        self.alphabet_count = alphabet_count
        self.max_degree = max_degree
        clean: dict[Key, RatFunc2] = {}
        for key, c in (coeffs or {}).items():
            key = tuple(Partition(p) for p in key)
            if len(key) != alphabet_count:
                raise ValueError(f"key {key} has wrong number of alphabets")
            if _key_degree(key) > max_degree:
                continue
            c = RatFunc2.coerce(c)
            if c:
                clean[key] = clean[key] + c if key in clean else c
        self.coeffs = {k: v for k, v in clean.items() if v}

    # constructors
    @classmethod
    def zero(cls, alphabet_count: int, max_degree: int) -> SymSeries:
        return cls(alphabet_count, max_degree)

    @classmethod
    def one(cls, alphabet_count: int, max_degree: int) -> SymSeries:
        return cls(alphabet_count, max_degree, {cls.empty_key(alphabet_count): 1})

    @staticmethod
    def empty_key(alphabet_count: int) -> Key:
        return tuple(Partition() for _ in range(alphabet_count))

    @classmethod
    def monomial(cls, alphabet_count: int, max_degree: int, key: Sequence[Iterable[int]], coeff=1) -> SymSeries:
        return cls(alphabet_count, max_degree, {tuple(Partition(p) for p in key): coeff})

    @classmethod
    def from_basis(cls, alphabet_count: int, max_degree: int, elements: Sequence[tuple[str, Iterable[int]]], coeff=1) -> SymSeries:
        """Tensor product of ``h``, ``s`` or ``m`` basis elements, one per alphabet."""
        if len(elements) != alphabet_count:
            raise ValueError("one basis element per alphabet expected")
        factors = []
        for kind, lam in elements:
            lam = Partition(lam)
            if kind == "m":
                factors.append({lam: 1})
            elif kind == "s":
                factors.append(from_schur({lam: 1}, lam.size))
            elif kind == "h":
                # h_lam = sum_kappa K[kappa,lam] s_kappa
                n = lam.size
                schur = {kap: kostka(kap, lam) for kap in partitions_of(n) if kostka(kap, lam)}
                factors.append(from_schur(schur, n))
            else:
                raise ValueError(f"unknown basis {kind!r}")
        coeffs = {}
        for combo in product(*(f.items() for f in factors)):
            c = coeff
            for _, v in combo:
                c = c * v
            coeffs[tuple(k for k, _ in combo)] = c
        return cls(alphabet_count, max_degree, coeffs)

    def _like(self, coeffs: Mapping[Key, RatFunc2]) -> SymSeries:
        out = SymSeries.__new__(SymSeries)
        out.alphabet_count = self.alphabet_count
        out.max_degree = self.max_degree
        out.coeffs = {k: v for k, v in coeffs.items() if v and _key_degree(k) <= self.max_degree}
        return out

    def _check(self, other: SymSeries):
        if (self.alphabet_count, self.max_degree) != (other.alphabet_count, other.max_degree):
            raise ValueError("series have different alphabet counts or truncation degrees")

    # queries
    def coefficient(self, key: Sequence[Iterable[int]]) -> RatFunc2:
        return self.coeffs.get(tuple(Partition(p) for p in key), RatFunc2.const(0))

    def constant_term(self) -> RatFunc2:
        return self.coeffs.get(self.empty_key(self.alphabet_count), RatFunc2.const(0))

    def min_degree(self) -> int:
        degs = [_key_degree(k) for k in self.coeffs]
        return min(degs) if degs else self.max_degree + 1

    def homogeneous(self, degree: int) -> SymSeries:
        return self._like({k: v for k, v in self.coeffs.items() if _key_degree(k) == degree})

    def component(self, alphabet: int, rest: Key) -> dict[Partition, RatFunc2]:
        """Coefficients indexed by the partition in ``alphabet`` with the others fixed to ``rest``."""
        out = {}
        for key, c in self.coeffs.items():
            if key[:alphabet] + key[alphabet + 1:] == tuple(rest):
                out[key[alphabet]] = c
        return out

    def is_zero(self) -> bool:
        return not self.coeffs

    # arithmetic
    def __add__(self, other) -> SymSeries:
        if not isinstance(other, SymSeries):
            other = SymSeries.one(self.alphabet_count, self.max_degree) * RatFunc2.coerce(other)
        self._check(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out[k] + v if k in out else v
        return self._like(out)

    __radd__ = __add__

    def __neg__(self) -> SymSeries:
        return self._like({k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other) -> SymSeries:
        return self + (-other)

    def __rsub__(self, other) -> SymSeries:
        return (-self) + other

    def scale(self, c) -> SymSeries:
        c = RatFunc2.coerce(c) if not isinstance(c, (int, Fraction)) else c
        return self._like({k: v * c for k, v in self.coeffs.items()})

    def __mul__(self, other) -> SymSeries:
        if not isinstance(other, SymSeries):
            return self.scale(other)
        return multiply(self, other)

    def __rmul__(self, other) -> SymSeries:
        return self.scale(other)

    def __pow__(self, k: int) -> SymSeries:
        out = SymSeries.one(self.alphabet_count, self.max_degree)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymSeries):
            return NotImplemented
        if (self.alphabet_count, self.max_degree) != (other.alphabet_count, other.max_degree):
            return False
        keys = set(self.coeffs) | set(other.coeffs)
        zero = RatFunc2.const(0)
        return all(self.coeffs.get(k, zero) == other.coeffs.get(k, zero) for k in keys)

    __hash__ = None

    def map_coefficients(self, f) -> SymSeries:
        return self._like({k: f(v) for k, v in self.coeffs.items()})

    def truncate(self, max_degree: int) -> SymSeries:
        out = SymSeries(self.alphabet_count, max_degree)
        out.coeffs = {k: v for k, v in self.coeffs.items() if _key_degree(k) <= max_degree}
        return out

    def __repr__(self) -> str:
        terms = sorted(self.coeffs.items(), key=lambda kv: (_key_degree(kv[0]), [tuple(p) for p in kv[0]]))
        body = " + ".join(f"({v})*m[{','.join(str(p) for p in k)}]" for k, v in terms)
        return f"SymSeries({self.alphabet_count}, {self.max_degree}: {body or '0'})"


def multiply(f: SymSeries, g: SymSeries) -> SymSeries:
    """Truncated product in the monomial basis."""
    f._check(g)
    top = f.max_degree
    acc: dict[Key, list[RatFunc2]] = defaultdict(list)
    g_items = sorted(g.coeffs.items(), key=lambda kv: _key_degree(kv[0]))
    for ka, ca in f.coeffs.items():
        da = _key_degree(ka)
        for kb, cb in g_items:
            if da + _key_degree(kb) > top:
                break
            c = ca * cb
            expansions = [monomial_product(a, b) for a, b in zip(ka, kb)]
            for combo in product(*expansions):
                mult = 1
                for _, e in combo:
                    mult *= e
                acc[tuple(p for p, _ in combo)].append(c * mult if mult != 1 else c)
    return f._like({k: _sum_ratfuncs(v) for k, v in acc.items()})


def hall_pair(f: SymSeries, elements: Sequence[tuple[str, Iterable[int]]]) -> RatFunc2:
    """Hall pairing of ``f`` with a tensor of basis elements, e.g. ``[("h", (2,1)), ("s", (1,1))]``.

    Only the matching multi-degree component of ``f`` contributes.
    """
    if len(elements) != f.alphabet_count:
        raise ValueError(f"expected {f.alphabet_count} basis elements, got {len(elements)}")
    weights = [_pairing_weights(kind, Partition(lam)) for kind, lam in elements]
    degrees = [Partition(lam).size for _, lam in elements]
    if sum(degrees) > f.max_degree:
        raise ValueError(f"pairing degree {sum(degrees)} exceeds truncation {f.max_degree}")
    terms = []
    for combo in product(*(w.items() for w in weights)):
        e = 1
        for _, v in combo:
            e *= v
        c = f.coeffs.get(tuple(p for p, _ in combo))
        if c is not None:
            terms.append(c * e)
    return _sum_ratfuncs(terms) if terms else RatFunc2.const(0)
