"""Integer partitions and Young diagram statistics.

A :class:`Partition` is a weakly decreasing tuple of positive integers.
Boxes are addressed by ``(i, j)`` with ``i`` the row and ``j`` the column,
both 0-based, rows drawn top to bottom (English convention).

>>> lam = Partition((3, 1))
>>> lam.conjugate()
Partition(2, 1, 1)
>>> lam.weighted_size(), lam.conjugate().weighted_size()
(1, 3)
>>> [lam.hook(i, j) for i, j in lam.boxes()]
[4, 2, 1, 1]
"""

from __future__ import annotations

from functools import lru_cache
from math import comb, factorial
from typing import Iterable, Iterator


class Partition(tuple):
    """Weakly decreasing tuple of positive integers; ``()`` is the partition of 0."""

    __slots__ = ()

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(int(p) for p in parts)
        if any(p <= 0 for p in parts):
            # zeros are padding, anything negative is an error
            if any(p < 0 for p in parts):
                raise ValueError(f"negative part in {parts}")
            parts = tuple(p for p in parts if p > 0)
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"parts not weakly decreasing: {parts}")
        return super().__new__(cls, parts)

    def __repr__(self) -> str:
        return f"Partition{tuple.__repr__(self)}" if len(self) != 1 else f"Partition({self[0]})"

    def __str__(self) -> str:
        if all(p < 10 for p in self):
            return "".join(str(p) for p in self) or "0"
        return "(" + ",".join(str(p) for p in self) + ")"

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def conjugate(self) -> Partition:
        if not self:
            return self
        return Partition(sum(1 for p in self if p > i) for i in range(self[0]))

    def boxes(self) -> Iterator[tuple[int, int]]:
        for i, p in enumerate(self):
            for j in range(p):
                yield i, j

    def arm(self, i: int, j: int) -> int:
        return self[i] - j - 1

    def leg(self, i: int, j: int) -> int:
        return sum(1 for p in self[i + 1:] if p > j)

    def hook(self, i: int, j: int) -> int:
        return self.arm(i, j) + self.leg(i, j) + 1

    def weighted_size(self) -> int:
        """n(lambda) = sum (i-1) lambda_i with 1-based rows."""
        return sum(i * p for i, p in enumerate(self))

    def squared_norm(self) -> int:
        return sum(p * p for p in self)

    def multiplicities(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for p in self:
            out[p] = out.get(p, 0) + 1
        return out

    def dominates(self, other: Partition) -> bool:
        if self.size != other.size:
            return False
        a = b = 0
        for i in range(max(len(self), len(other))):
            a += self[i] if i < len(self) else 0
            b += other[i] if i < len(other) else 0
            if a < b:
                return False
        return True

    def scaled(self, k: int) -> Partition:
        return Partition(k * p for p in self)

    def frobenius_coordinates(self) -> list[tuple[int, int]]:
        """(arm, leg) of each diagonal box."""
        return [(self.arm(i, i), self.leg(i, i)) for i in range(len(self)) if self[i] > i]

    def count_standard_tableaux(self) -> int:
        prod = 1
        for i, j in self.boxes():
            prod *= self.hook(i, j)
        return factorial(self.size) // prod


def conjugate(lam: Iterable[int]) -> Partition:
    return Partition(lam).conjugate()


def weighted_size(lam: Iterable[int]) -> int:
    return Partition(lam).weighted_size()


@lru_cache(maxsize=None)
def partitions_of(n: int) -> tuple[Partition, ...]:
    """All partitions of ``n`` in reverse lexicographic order, e.g. 4, 31, 22, 211, 1111."""
    if n < 0:
        raise ValueError("n must be non-negative")

    def gen(rest: int, cap: int) -> Iterator[tuple[int, ...]]:
        if rest == 0:
            yield ()
            return
        for first in range(min(rest, cap), 0, -1):
            for tail in gen(rest - first, first):
                yield (first,) + tail

    return tuple(Partition(p) for p in gen(n, n))


def parse_partition(text: str) -> Partition:
    """Parse ``"211"`` or ``"(10,1)"``."""
    text = text.strip()
    if text.startswith("("):
        if not text.endswith(")"):
            raise ValueError(f"unbalanced partition literal {text!r}")
        body = text[1:-1].strip()
        parts = [int(x) for x in body.split(",") if x.strip()] if body else []
    else:
        if not text.isdigit():
            raise ValueError(f"bad partition literal {text!r}")
        parts = [int(c) for c in text]
    return Partition(sorted(parts, reverse=True))


def parse_partition_list(text: str) -> list[Partition]:
    """Parse a comma-separated list of punctures, e.g. ``"21,11"`` or ``"(10,1),11"``."""
    out: list[Partition] = []
    i, text = 0, text.strip()
    while i < len(text):
        if text[i] == "(":
            j = text.index(")", i)
            out.append(parse_partition(text[i:j + 1]))
            i = j + 1
        else:
            j = text.find(",", i)
            j = len(text) if j < 0 else j
            out.append(parse_partition(text[i:j]))
            i = j
        if i < len(text):
            if text[i] != ",":
                raise ValueError(f"expected ',' at position {i} in {text!r}")
            i += 1
    return out


def multinomial(parts: Iterable[int]) -> int:
    parts = list(parts)
    out = factorial(sum(parts))
    for p in parts:
        out //= factorial(p)
    return out


def binom2(n: int) -> int:
    return comb(n, 2)


def hook_polynomial(lam: Iterable[int]):
    """``prod over boxes of (q^h - 1)``, as a Laurent polynomial in the first variable.

    >>> hook_polynomial((2, 1)).format(("q", "t"))
    '-1 + 2*q - q^2 + q^3 - 2*q^4 + q^5'
    """
    from .polys import LaurentPoly2

    out = LaurentPoly2.const(1)
    lam = Partition(lam)
    for i, j in lam.boxes():
        out = out * (LaurentPoly2.monomial(lam.hook(i, j), 0) - 1)
    return out
