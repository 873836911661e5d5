"""Modified Macdonald polynomials from the Haglund-Haiman-Loehr fillings formula.

Diagrams are drawn in French convention: row 0 is the bottom row and has
length ``lam[0]``.  For a filling ``sigma`` of the cells,

* a descent is a cell ``u`` above row 0 with ``sigma(u) > sigma(v)``, ``v``
  the cell directly below;
* ``maj`` is the sum of ``leg(u) + 1`` over descents;
* ``u, v`` attack each other when they share a row, or when ``v`` is one row
  below ``u`` and strictly to its left;
* ``inv`` counts attacking pairs ``(u, v)`` with ``u`` earlier in reading order
  (rows top to bottom, each left to right) and ``sigma(u) > sigma(v)``, minus
  the sum of ``arm(u)`` over descents.

Then ``H_lam = sum_sigma q^inv t^maj x^sigma``.  The coefficient of ``m_nu`` is
the sum over fillings whose content is exactly ``nu``.

>>> h = macdonald((2,))
>>> h.coefficient((1, 1))
LaurentPoly2('1 + z')
>>> pair_with_sign((2, 1)).format(("q", "t"))
'q*t'
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from math import factorial

from .partitions import Partition, multinomial, partitions_of
from .polys import LaurentPoly2
from .symfunc import to_schur

DEFAULT_BOUND = 6

_cache: dict[Partition, dict[Partition, LaurentPoly2]] = {}
_lock = threading.Lock()


@dataclass(frozen=True)
class MacdonaldPoly:
    shape: Partition
    expansion: dict[Partition, LaurentPoly2] = field(compare=False)

    def coefficient(self, nu) -> LaurentPoly2:
        return self.expansion.get(Partition(nu), LaurentPoly2())

    def schur_expansion(self) -> dict[Partition, LaurentPoly2]:
        return to_schur(self.expansion, self.shape.size)

    def swap(self) -> MacdonaldPoly:
        """Exchange the roles of q and t."""
        return MacdonaldPoly(
            self.shape.conjugate(),
            {nu: c.map_exponents(lambda a, b: (b, a)) for nu, c in self.expansion.items()},
        )


def _cell_data(lam: Partition):
    cells = [(i, j) for i, row in enumerate(lam) for j in range(row)]
    # reading order: top row first, left to right
    reading = sorted(cells, key=lambda c: (-c[0], c[1]))
    pos = {c: k for k, c in enumerate(reading)}
    attacks = []
    for u in reading:
        i, j = u
        for v in reading:
            if pos[v] <= pos[u]:
                continue
            a, b = v
            if a == i or (a == i - 1 and b < j):
                attacks.append((pos[u], pos[v]))
    below = []
    for k, (i, j) in enumerate(reading):
        if i > 0:
            below.append((k, pos[(i - 1, j)], lam.arm(i, j), lam.leg(i, j)))
    return len(reading), attacks, below


def _fillings_with_content(content: Partition, size: int):
    """All words of length ``size`` using letter ``v`` exactly ``content[v]`` times."""
    counts = list(content)
    word = [0] * size

    def rec(k: int):
        if k == size:
            yield word
            return
        for v, c in enumerate(counts):
            if c:
                counts[v] -= 1
                word[k] = v
                yield from rec(k + 1)
                counts[v] += 1

    yield from rec(0)


def _expand(lam: Partition) -> dict[Partition, LaurentPoly2]:
    n = lam.size
    size, attacks, below = _cell_data(lam)
    out: dict[Partition, LaurentPoly2] = {}
    for nu in partitions_of(n):
        tally: dict[tuple[int, int], int] = {}
        for w in _fillings_with_content(nu, size):
            inv = sum(1 for a, b in attacks if w[a] > w[b])
            maj = 0
            for k, kb, arm, leg in below:
                if w[k] > w[kb]:
                    maj += leg + 1
                    inv -= arm
            tally[(inv, maj)] = tally.get((inv, maj), 0) + 1
        out[nu] = LaurentPoly2(tally)
    return out


def macdonald(lam, max_vars: int | None = None, bound: int = DEFAULT_BOUND) -> MacdonaldPoly:
    """Monomial expansion of the modified Macdonald polynomial of shape ``lam``.

    Coefficients are polynomials in ``(q, t)`` stored as :class:`LaurentPoly2`
    with q as the first variable.  ``max_vars`` limits the number of variables
    (parts of the content); it defaults to ``|lam|``, which loses nothing.
    """
    lam = Partition(lam)
    if lam.size > bound:
        raise ValueError(f"|lam| = {lam.size} exceeds the configured bound {bound}")
    with _lock:
        exp = _cache.get(lam)
    if exp is None:
        exp = _expand(lam)
        with _lock:
            _cache.setdefault(lam, exp)
    if max_vars is not None and max_vars < lam.size:
        exp = {nu: c for nu, c in exp.items() if len(nu) <= max_vars}
    return MacdonaldPoly(lam, dict(exp))


def pair_with_sign(lam) -> LaurentPoly2:
    """Pairing of the Macdonald polynomial with ``s_(1^n)``, read off the expansion."""
    lam = Partition(lam)
    n = lam.size
    schur = macdonald(lam, bound=max(n, DEFAULT_BOUND)).schur_expansion()
    return schur.get(Partition((1,) * n), LaurentPoly2())


def closed_form_pairing(lam) -> LaurentPoly2:
    """``t^n(lam) q^n(lam')``, the known value of :func:`pair_with_sign`."""
    lam = Partition(lam)
    return LaurentPoly2.monomial(lam.conjugate().weighted_size(), lam.weighted_size())


def specialization_check(lam) -> bool:
    """At q = t = 1 the coefficient of m_nu must be the multinomial n!/prod(nu_i!)."""
    h = macdonald(lam, bound=max(Partition(lam).size, DEFAULT_BOUND))
    return all(h.coefficient(nu).evaluate(1, 1) == multinomial(nu) for nu in partitions_of(h.shape.size))


def fillings_total(n: int) -> int:
    """Number of fillings enumerated per shape of size ``n`` (for cost estimates)."""
    return sum(factorial(n) // _prod_fact(nu) for nu in partitions_of(n))


def _prod_fact(nu) -> int:
    out = 1
    for p in nu:
        out *= factorial(p)
    return out
