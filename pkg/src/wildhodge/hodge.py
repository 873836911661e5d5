"""Generating-function side: hook functions, the Cauchy kernel and the H-polynomials.

A :class:`WildType` bundles the genus, the tame puncture types ``mu``
(``k`` partitions of ``n``) and the pole orders ``r_vec`` of the ``m`` wild
points.  Everything else is a function of it:

>>> t = WildType(g=0, mu=((1, 1), (1, 1)), r_vec=(1,))
>>> hh_poly(t)
RatFunc2('3 + z^2 + w^2')
>>> dimension(t)
2
>>> mixed_hodge_conjectural(t).format(("q", "t"))
'1 + 3*q*t^2 + q^2*t^2'

Normalization.  ``hh_poly`` is the Hall-pairing definition with the prefactor
``(-1)^(rn) (z^2-1)(1-w^2)``.  With that normalization

* the point count is ``E(q) = q^(d/2) H(q^-1/2, q^1/2)``;
* the conjectural mixed Hodge polynomial is
  ``(q t^2)^(d/2) H(-t^-1 q^-1/2, q^1/2)``, which equals
  ``(q t^2)^(d/2) H(-q^1/2, t^-1 q^-1/2)`` by the ``(z, w) -> (-w, -z)`` symmetry
  and specializes to ``E`` at ``t = -1``.

Both are pinned by the closed n = 2 formulas and by finite-field point counts
in the test-suite.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Sequence

from .macdonald import macdonald
from .partitions import Partition, partitions_of
from .plethysm import pleth_log
from .polys import LaurentPoly2, RatFunc2, substitute
from .symfunc import SymSeries, _sum_ratfuncs, hall_pair

Z = RatFunc2.var(0)
W = RatFunc2.var(1)


@dataclass(frozen=True)
class WildType:
    """Genus, tame types and wild pole orders.  ``n`` is only needed when ``mu`` is empty."""

    g: int
    mu: tuple[Partition, ...] = ()
    r_vec: tuple[int, ...] = ()
    n: int | None = None

    def __post_init__(self):
        mu = tuple(Partition(p) for p in self.mu)
        r_vec = tuple(int(r) for r in self.r_vec)
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "r_vec", r_vec)
        sizes = {p.size for p in mu}
        if self.n is not None:
            sizes.add(int(self.n))
        if len(sizes) != 1:
            raise ValueError(f"puncture types must share one size n, got sizes {sorted(sizes)}")
        n = sizes.pop()
        if n < 1:
            raise ValueError("n must be positive")
        object.__setattr__(self, "n", n)
        if self.g < 0:
            raise ValueError("genus must be non-negative")
        if any(r <= 0 for r in r_vec):
            raise ValueError("pole orders must be positive")
        if not mu and not r_vec:
            raise ValueError("need at least one puncture (k + m >= 1)")

    @property
    def k(self) -> int:
        return len(self.mu)

    @property
    def m(self) -> int:
        return len(self.r_vec)

    @property
    def r(self) -> int:
        return sum(self.r_vec)

    @property
    def mu_tilde(self) -> tuple[Partition, ...]:
        return self.mu + (Partition((1,) * self.n),) * self.m

    def describe(self) -> str:
        mu = ",".join(str(p) for p in self.mu) or "-"
        return f"n={self.n} g={self.g} mu={mu} r={list(self.r_vec)}"


def hook_function(lam, g: int, r: int) -> RatFunc2:
    """Product over the boxes of ``lam`` of the hook weight in (z, w)."""
    lam = Partition(lam)
    if g < 0 or r < 0:
        raise ValueError("g and r must be non-negative")
    return _hook_function(lam, g, r)


@lru_cache(maxsize=None)
def _hook_function(lam: Partition, g: int, r: int) -> RatFunc2:
    num = LaurentPoly2.const(1)
    den = LaurentPoly2.const(1)
    z, w = LaurentPoly2.var(0), LaurentPoly2.var(1)
    for i, j in lam.boxes():
        a, l = lam.arm(i, j), lam.leg(i, j)
        num = num * (LaurentPoly2.monomial(2 * a, 2 * l, -1) ** r)
        num = num * (z ** (2 * a + 1) - w ** (2 * l + 1)) ** (2 * g)
        den = den * (z ** (2 * a + 2) - w ** (2 * l)) * (z ** (2 * a) - w ** (2 * l + 2))
    return RatFunc2(num, den)


@lru_cache(maxsize=None)
def _macdonald_zw(lam: Partition) -> tuple[tuple[Partition, RatFunc2], ...]:
    """Monomial expansion of the Macdonald polynomial at (q, t) = (z^2, w^2)."""
    h = macdonald(lam, bound=max(lam.size, 6))
    return tuple(
        (nu, RatFunc2(c.map_exponents(lambda a, b: (2 * a, 2 * b)), _reduced=True))
        for nu, c in sorted(h.expansion.items(), key=lambda kv: partitions_of(lam.size).index(kv[0]))
    )


def cauchy_kernel(n: int, g: int, r: int, alphabets: int) -> SymSeries:
    """Sum over |lam| <= n of hook_function(lam) times one Macdonald factor per alphabet.

    The series is truncated at total degree ``alphabets * n``; every term has
    the same degree in each alphabet.
    """
    terms: dict = defaultdict(list)
    for d in range(1, n + 1):
        for lam in partitions_of(d):
            weight = hook_function(lam, g, r)
            exp = _macdonald_zw(lam)
            for combo in product(exp, repeat=alphabets):
                c = weight
                for _, v in combo:
                    c = c * v
                terms[tuple(nu for nu, _ in combo)].append(c)
    out = {key: _sum_ratfuncs(cs) for key, cs in terms.items()}
    out[SymSeries.empty_key(alphabets)] = RatFunc2.const(1)
    return SymSeries(alphabets, alphabets * n, out)


def _prefactor() -> RatFunc2:
    return (Z ** 2 - 1) * (1 - W ** 2)


def hh_poly(t: WildType, method: str = "auto") -> RatFunc2:
    """The rational function H_{mu~, r}(z, w).

    ``method="direct"`` pairs Log of the kernel with genus-g, pole-order-r hook
    weights against ``h_mu~``; ``method="extended"`` uses the r = 0 kernel in
    ``k + m + r`` alphabets and pairs the extra ``r`` of them with ``s_(1^n)``.
    ``auto`` picks the extended path, which has no sign bookkeeping.
    """
    if method == "auto":
        method = "extended"
    return _hh_poly(t.g, t.mu_tilde, t.r, method)


@lru_cache(maxsize=None)
def _hh_poly(g: int, mu_tilde: tuple[Partition, ...], r: int, method: str) -> RatFunc2:
    n = mu_tilde[0].size
    K = len(mu_tilde)
    if method == "direct":
        log = pleth_log(cauchy_kernel(n, g, r, K))
        pairing = hall_pair(log, [("h", p) for p in mu_tilde])
        return pairing * ((-1) ** (r * n)) * _prefactor()
    if method == "extended":
        log = pleth_log(cauchy_kernel(n, g, 0, K + r))
        basis = [("h", p) for p in mu_tilde] + [("s", (1,) * n)] * r
        return hall_pair(log, basis) * _prefactor()
    raise ValueError(f"unknown method {method!r}")


def dimension(t: WildType) -> int:
    n = t.n
    norm = sum(p.squared_norm() for p in t.mu)
    return (2 * t.g + t.k - 2) * n * n - norm + n * (n - 1) * (t.m + t.r) + 2


def _as_polynomial(f: RatFunc2, what: str) -> LaurentPoly2:
    if not f.is_laurent():
        raise ArithmeticError(f"{what} is not a polynomial: {f.format(('q', 't'))}")
    p = f.as_laurent()
    if not p.is_polynomial():
        raise ArithmeticError(f"{what} has negative powers: {p.format(('q', 't'))}")
    return p


def e_polynomial(t: WildType) -> LaurentPoly2:
    """Point-count polynomial in q (stored with t-exponent 0)."""
    d = dimension(t)
    h = hh_poly(t)
    val = substitute(h, (1, Fraction(-1, 2), 0), (1, Fraction(1, 2), 0))
    return _as_polynomial(val * RatFunc2(LaurentPoly2.monomial(d // 2, 0)), "E-polynomial")


def mixed_hodge_conjectural(t: WildType) -> LaurentPoly2:
    """Conjectural mixed Hodge polynomial in (q, t); see the module notes for the substitution."""
    d = dimension(t)
    h = hh_poly(t)
    val = substitute(h, (-1, Fraction(-1, 2), -1), (1, Fraction(1, 2), 0))
    return _as_polynomial(val * RatFunc2(LaurentPoly2.monomial(d // 2, d)), "mixed Hodge polynomial")


def n2_closed_form(g: int, k: int, m: int, r: int) -> LaurentPoly2:
    """Closed three-term formula for n = 2 and all tame types (1,1); depends on k + m and r."""
    if g < 0 or k < 0 or m < 0 or r < 0 or k + m < 1:
        raise ValueError("need g, k, m, r >= 0 and k + m >= 1")
    if (m == 0) != (r == 0):
        raise ValueError("wild points and total pole order must vanish together")
    q, t = RatFunc2.var(0), RatFunc2.var(1)
    s = k + m
    qt2 = q * t ** 2
    first = (qt2 + 1) ** s * (q ** 2 * t ** 3 + 1) ** (2 * g) * (1 + q * t) ** (2 * g) / (
        (q ** 2 * t ** 2 - 1) * (q ** 2 * t ** 4 - 1)
    )
    second = Fraction(2 ** s, 2) * qt2 ** (2 * g + r - 2 + s) * (q * t + 1) ** (4 * g) / ((q - 1) * (qt2 - 1))
    third = (
        t ** (-2 * r) * qt2 ** (2 * g + 2 * r - 2 + s) * (q + 1) ** s * (q ** 2 * t + 1) ** (2 * g)
        * (1 + q * t) ** (2 * g) / ((q ** 2 - 1) * (q ** 2 * t ** 2 - 1))
    )
    return _as_polynomial(first - second + third, "n = 2 closed form")


def n2_closed_form_e(g: int, k: int, m: int, r: int) -> LaurentPoly2:
    """The t = -1 specialization of :func:`n2_closed_form`, written out independently."""
    q = RatFunc2.var(0)
    s = k + m
    first = (q + 1) ** s * (q ** 2 - 1) ** (2 * g - 2) * (q - 1) ** (2 * g)
    second = Fraction(2 ** s, 2) * q ** (2 * g + r - 2 + s) * (q - 1) ** (4 * g - 2)
    third = q ** (2 * g + 2 * r - 2 + s) * (q + 1) ** s * (q ** 2 - 1) ** (2 * g - 2) * (q - 1) ** (2 * g)
    return _as_polynomial(first - second + third, "n = 2 E-polynomial")


def swap_symmetric(f: RatFunc2) -> bool:
    """Whether f(z, w) = f(-w, -z)."""
    return f == f.subs_monomial((-1, 0, 1), (-1, 1, 0))


def palindromic(e: LaurentPoly2, d: int) -> bool:
    """E(q) = q^d E(1/q) for a polynomial in q."""
    return e == e.map_exponents(lambda a, b: (d - a, b))


def curious_poincare(wh: LaurentPoly2, d: int) -> bool:
    """WH(q, t) = (qt)^d WH(1/(q t^2), t)."""
    # q^a t^b  ->  (qt)^d q^-a t^(b - 2a)
    return wh == wh.map_exponents(lambda a, b: (d - a, d + b - 2 * a))


def tame_equivalence_types(mu) -> tuple[WildType, WildType] | None:
    """The wild type (mu, (1^n)) with r = 1 and its tame partner; None when degenerate."""
    mu = Partition(mu)
    n = mu.size
    n2 = n - mu[0]
    if n2 < 1:
        return None
    wild = WildType(g=0, mu=(mu,), r_vec=(1,))
    hook = Partition((n2 - 1, 1))
    tame = WildType(g=0, mu=(hook,) * n + (Partition(mu[1:]),))
    return wild, tame


def tame_equivalence_check(mu) -> bool | None:
    """Compare both sides of the wild/tame identity; None marks the degenerate case."""
    pair = tame_equivalence_types(mu)
    if pair is None:
        return None
    wild, tame = pair
    return hh_poly(wild) == hh_poly(tame)


def n2_genus0_cases() -> list[tuple[WildType, LaurentPoly2]]:
    """The n = 2, g = 0 instances with their expected mixed Hodge polynomials."""
    q, t = LaurentPoly2.var(0), LaurentPoly2.var(1)
    one = LaurentPoly2.const(1)
    eleven = Partition((1, 1))

    def wt(k: int, r_vec: Sequence[int]) -> WildType:
        return WildType(g=0, mu=(eleven,) * k, r_vec=tuple(r_vec), n=2)

    def poly(c: int) -> LaurentPoly2:
        return one + c * q * t ** 2 + q ** 2 * t ** 2

    return [
        (wt(3, ()), one),
        (wt(1, (1,)), one),
        (wt(0, (2,)), one),
        (wt(4, ()), poly(4)),
        (wt(2, (1,)), poly(3)),
        (wt(1, (2,)), poly(2)),
        (wt(0, (1, 1)), poly(2)),
        (wt(0, (3,)), poly(1)),
    ]
