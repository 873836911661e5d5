"""Sparse Laurent polynomials and rational functions in two variables.

Both classes are immutable.  Coefficients are Python ints or
:class:`fractions.Fraction`; exponents are arbitrary integers.  The same
classes serve for ``(z, w)`` and ``(q, t)``: variable names only matter when
printing.

Rational functions are kept reduced: numerator and denominator are coprime
(the bivariate gcd comes from FLINT), the denominator is a genuine polynomial
not divisible by either variable, has integer coprime coefficients and a
positive leading coefficient.  Equality is still decided by
cross-multiplication, so it does not depend on that normal form.

>>> z, w = RatFunc2.var(0), RatFunc2.var(1)
>>> (z / w) * (w / z)
RatFunc2('1')
>>> 1 / (1 - z**2) + 1 / (z**2 - 1)
RatFunc2('0')
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from numbers import Rational
from typing import Callable, Iterable, Mapping, Union

import flint

Coef = Union[int, Fraction]
Exp = tuple[int, int]

_FLINT_CTX = flint.fmpz_mpoly_ctx.get(("x0", "x1"), "deglex")


def _norm_coef(c) -> Coef:
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, int):
        return c
    if isinstance(c, Rational):
        c = Fraction(c)
        return c.numerator if c.denominator == 1 else c
    raise TypeError(f"unsupported coefficient {c!r}")


def _glex_key(e: Exp) -> tuple[int, int]:
    return (e[0] + e[1], e[0])


class LaurentPoly2:
    """Finite sum of ``c * x^i * y^j`` with ``(i, j)`` in Z^2 and c rational."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Exp, Coef] | None = None):
        clean: dict[Exp, Coef] = {}
        if terms:
            for (i, j), c in terms.items():
                c = _norm_coef(c)
                if c:
                    clean[(int(i), int(j))] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[Exp, Coef]) -> LaurentPoly2:
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    # constructors
    @classmethod
    def const(cls, c: Coef) -> LaurentPoly2:
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, i: int, j: int, c: Coef = 1) -> LaurentPoly2:
        return cls({(i, j): c})

    @classmethod
    def var(cls, k: int) -> LaurentPoly2:
        return cls.monomial(1, 0) if k == 0 else cls.monomial(0, 1)

    @classmethod
    def coerce(cls, other) -> LaurentPoly2:
        if isinstance(other, LaurentPoly2):
            return other
        if isinstance(other, (int, Fraction)) or isinstance(other, Rational):
            return cls.const(other)
        raise TypeError(f"cannot coerce {type(other).__name__} to LaurentPoly2")

    # accessors
    @property
    def terms(self) -> dict[Exp, Coef]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coefficient(self, i: int, j: int = 0) -> Coef:
        return self._terms.get((i, j), 0)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and (0, 0) in self._terms)

    def constant_value(self) -> Coef:
        if not self.is_constant():
            raise ValueError("not a constant")
        return self._terms.get((0, 0), 0)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def min_exponents(self) -> Exp:
        if not self._terms:
            return (0, 0)
        return (min(e[0] for e in self._terms), min(e[1] for e in self._terms))

    def max_exponents(self) -> Exp:
        if not self._terms:
            return (0, 0)
        return (max(e[0] for e in self._terms), max(e[1] for e in self._terms))

    def is_polynomial(self) -> bool:
        a, b = self.min_exponents()
        return a >= 0 and b >= 0

    def leading(self) -> tuple[Exp, Coef]:
        e = max(self._terms, key=_glex_key)
        return e, self._terms[e]

    def sorted_terms(self) -> list[tuple[Exp, Coef]]:
        """Graded-lex ascending: total degree first, then higher first-variable power."""
        return sorted(self._terms.items(), key=lambda kv: (kv[0][0] + kv[0][1], -kv[0][0]))

    # arithmetic
    def __add__(self, other) -> LaurentPoly2:
        try:
            other = LaurentPoly2.coerce(other)
        except TypeError:
            return NotImplemented
        if len(other._terms) > len(self._terms):
            self, other = other, self
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = _norm_coef(s) if isinstance(s, Fraction) else s
            else:
                out.pop(e, None)
        return LaurentPoly2._raw(out)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly2:
        return LaurentPoly2._raw({e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> LaurentPoly2:
        try:
            other = LaurentPoly2.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> LaurentPoly2:
        return LaurentPoly2.coerce(other) - self

    def __mul__(self, other) -> LaurentPoly2:
        if isinstance(other, (int, Fraction)):
            if not other:
                return LaurentPoly2._raw({})
            return LaurentPoly2._raw({e: _norm_coef(c * other) for e, c in self._terms.items()})
        try:
            other = LaurentPoly2.coerce(other)
        except TypeError:
            return NotImplemented
        out: dict[Exp, Coef] = {}
        for (a, b), c in self._terms.items():
            for (x, y), d in other._terms.items():
                e = (a + x, b + y)
                out[e] = out.get(e, 0) + c * d
        return LaurentPoly2({e: c for e, c in out.items()})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> LaurentPoly2:
        if k < 0:
            if not self.is_monomial():
                raise ValueError("negative power of a non-monomial Laurent polynomial")
            (e, c), = self._terms.items()
            return LaurentPoly2({(e[0] * k, e[1] * k): Fraction(c) ** k})
        out = LaurentPoly2.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def shift(self, i: int, j: int) -> LaurentPoly2:
        return LaurentPoly2._raw({(a + i, b + j): c for (a, b), c in self._terms.items()})

    def scale(self, c: Coef) -> LaurentPoly2:
        return self * _norm_coef(c)

    def map_exponents(self, f: Callable[[int, int], Exp], sign: Callable[[int, int], Coef] | None = None) -> LaurentPoly2:
        out: dict[Exp, Coef] = {}
        for (a, b), c in self._terms.items():
            e = f(a, b)
            v = c * sign(a, b) if sign else c
            out[e] = out.get(e, 0) + v
        return LaurentPoly2(out)

    def subs_monomial(self, zmap: tuple[Coef, int, int], wmap: tuple[Coef, int, int]) -> LaurentPoly2:
        """Substitute x -> c1 X^a Y^b and y -> c2 X^c Y^d (integer exponents)."""
        c1, a1, b1 = zmap
        c2, a2, b2 = wmap
        out: dict[Exp, Coef] = {}
        for (i, j), c in self._terms.items():
            e = (a1 * i + a2 * j, b1 * i + b2 * j)
            out[e] = out.get(e, 0) + c * _pow(c1, i) * _pow(c2, j)
        return LaurentPoly2(out)

    def adams(self, k: int) -> LaurentPoly2:
        return LaurentPoly2._raw({(a * k, b * k): c for (a, b), c in self._terms.items()})

    def evaluate(self, x, y=0):
        total = 0
        for (a, b), c in self._terms.items():
            total += c * _pow(x, a) * _pow(y, b)
        return total

    def content(self) -> Fraction:
        """Positive rational content (gcd of numerators over lcm of denominators)."""
        if not self._terms:
            return Fraction(0)
        nums = [Fraction(c).numerator for c in self._terms.values()]
        dens = [Fraction(c).denominator for c in self._terms.values()]
        g = 0
        for v in nums:
            g = gcd(g, v)
        return Fraction(g, lcm(*dens))

    # comparisons
    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPoly2):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == LaurentPoly2.const(other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # printing
    def format(self, names: tuple[str, str] = ("z", "w"), style: str = "text") -> str:
        if not self._terms:
            return "0"
        pieces: list[str] = []
        for (a, b), c in self.sorted_terms():
            sign = "-" if c < 0 else "+"
            mag = -c if c < 0 else c
            mono = _format_monomial(a, b, names, style)
            if mono and mag == 1:
                body = mono
            elif mono:
                coef = _format_coef(mag, style)
                body = f"{coef}*{mono}" if style == "text" else f"{coef}{mono}"
            else:
                body = _format_coef(mag, style)
            pieces.append((sign, body))
        first_sign, first = pieces[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"LaurentPoly2({self.format()!r})"

    # FLINT bridge (polynomials with integer coefficients only)
    def _to_flint(self):
        return _FLINT_CTX.from_dict({e: int(c) for e, c in self._terms.items()})

    @staticmethod
    def _from_flint(p) -> LaurentPoly2:
        return LaurentPoly2._raw({(int(e[0]), int(e[1])): int(c) for e, c in p.to_dict().items()})


def _pow(c, k: int):
    if k >= 0:
        return c ** k
    return Fraction(1) / Fraction(c) ** (-k)


def _format_coef(c: Coef, style: str) -> str:
    if isinstance(c, Fraction) and c.denominator != 1:
        if style == "latex":
            return rf"\frac{{{c.numerator}}}{{{c.denominator}}}"
        return f"{c.numerator}/{c.denominator}"
    return str(c)


def _format_monomial(a: int, b: int, names: tuple[str, str], style: str) -> str:
    parts = []
    for name, e in ((names[0], a), (names[1], b)):
        if e == 0:
            continue
        if e == 1:
            parts.append(name)
        elif style == "latex":
            parts.append(f"{name}^{{{e}}}")
        else:
            parts.append(f"{name}^{e}")
    return ("*" if style == "text" else "").join(parts)


def _integerize(p: LaurentPoly2) -> tuple[LaurentPoly2, int]:
    """Multiply by the lcm of coefficient denominators; returns (poly, multiplier)."""
    m = 1
    for c in p._terms.values():
        if isinstance(c, Fraction):
            m = lcm(m, c.denominator)
    if m == 1:
        return p, 1
    return p * m, m


class RatFunc2:
    """Quotient of two :class:`LaurentPoly2`, kept in reduced normal form."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=1, *, _reduced: bool = False):
        num = LaurentPoly2.coerce(num)
        den = LaurentPoly2.coerce(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator in RatFunc2")
        if _reduced:
            self.num, self.den = num, den
        else:
            self.num, self.den = _reduce(num, den)

    @classmethod
    def var(cls, k: int) -> RatFunc2:
        return cls(LaurentPoly2.var(k), _reduced=True)

    @classmethod
    def const(cls, c: Coef) -> RatFunc2:
        return cls(LaurentPoly2.const(c), _reduced=True)

    @classmethod
    def coerce(cls, other) -> RatFunc2:
        if isinstance(other, RatFunc2):
            return other
        if isinstance(other, LaurentPoly2):
            return cls(other)
        if isinstance(other, (int, Fraction)) or isinstance(other, Rational):
            return cls.const(other)
        raise TypeError(f"cannot coerce {type(other).__name__} to RatFunc2")

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def is_laurent(self) -> bool:
        return self.den.is_constant()

    def as_laurent(self) -> LaurentPoly2:
        if not self.den.is_constant():
            raise ValueError(f"not a Laurent polynomial: {self}")
        return self.num * Fraction(1, 1) * _inv(self.den.constant_value())

    def __add__(self, other) -> RatFunc2:
        try:
            other = RatFunc2.coerce(other)
        except TypeError:
            return NotImplemented
        if other.num.is_zero():
            return self
        if self.num.is_zero():
            return other
        if self.den == other.den:
            return RatFunc2(self.num + other.num, self.den)
        return RatFunc2(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> RatFunc2:
        return RatFunc2(-self.num, self.den, _reduced=True)

    def __sub__(self, other) -> RatFunc2:
        try:
            other = RatFunc2.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> RatFunc2:
        return RatFunc2.coerce(other) - self

    def __mul__(self, other) -> RatFunc2:
        if isinstance(other, (int, Fraction)):
            if not other:
                return RatFunc2.const(0)
            return RatFunc2(self.num * other, self.den, _reduced=True)
        try:
            other = RatFunc2.coerce(other)
        except TypeError:
            return NotImplemented
        if self.num.is_zero() or other.num.is_zero():
            return RatFunc2.const(0)
        if self.den.is_constant() and other.den.is_constant():
            return RatFunc2(self.num * other.num, self.den * other.den, _reduced=True)
        return RatFunc2(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> RatFunc2:
        try:
            other = RatFunc2.coerce(other)
        except TypeError:
            return NotImplemented
        if other.num.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RatFunc2(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other) -> RatFunc2:
        return RatFunc2.coerce(other) / self

    def __pow__(self, k: int) -> RatFunc2:
        if k < 0:
            return RatFunc2.const(1) / self ** (-k)
        return RatFunc2(self.num ** k, self.den ** k, _reduced=True)

    def __eq__(self, other) -> bool:
        try:
            other = RatFunc2.coerce(other)
        except TypeError:
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self) -> int:
        # normal form is unique, so hashing it is consistent with __eq__
        return hash((self.num, self.den))

    def subs_monomial(self, zmap, wmap) -> RatFunc2:
        return RatFunc2(self.num.subs_monomial(zmap, wmap), self.den.subs_monomial(zmap, wmap))

    def adams(self, k: int) -> RatFunc2:
        if k == 1:
            return self
        return RatFunc2(self.num.adams(k), self.den.adams(k), _reduced=True)

    def swap(self) -> RatFunc2:
        return self.subs_monomial((1, 0, 1), (1, 1, 0))

    def evaluate(self, x, y=0):
        d = self.den.evaluate(x, y)
        if d == 0:
            raise ZeroDivisionError("pole at evaluation point")
        return Fraction(self.num.evaluate(x, y)) / d

    def format(self, names: tuple[str, str] = ("z", "w"), style: str = "text") -> str:
        if self.den == LaurentPoly2.const(1):
            return self.num.format(names, style)
        n, d = self.num.format(names, style), self.den.format(names, style)
        if style == "latex":
            return rf"\frac{{{n}}}{{{d}}}"
        if len(self.num) > 1:
            n = f"({n})"
        if len(self.den) > 1:
            d = f"({d})"
        return f"{n}/{d}"

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"RatFunc2({self.format()!r})"


def _inv(c: Coef) -> Coef:
    return _norm_coef(Fraction(1) / c)


def _reduce(num: LaurentPoly2, den: LaurentPoly2) -> tuple[LaurentPoly2, LaurentPoly2]:
    if num.is_zero():
        return num, LaurentPoly2.const(1)
    # monomial normalization: the denominator becomes a polynomial free of x, y factors
    dmin = den.min_exponents()
    if dmin != (0, 0):
        den = den.shift(-dmin[0], -dmin[1])
        num = num.shift(-dmin[0], -dmin[1])
    if den.is_constant():
        return num * _inv(den.constant_value()), LaurentPoly2.const(1)
    num_i, mn = _integerize(num)
    den_i, md = _integerize(den)
    nmin = num_i.min_exponents()
    num_s = num_i.shift(-nmin[0], -nmin[1])
    g = num_s._to_flint().gcd(den_i._to_flint())
    if not g.is_constant():
        num_s = LaurentPoly2._from_flint(num_s._to_flint() / g)
        den_i = LaurentPoly2._from_flint(den_i._to_flint() / g)
    num_i = num_s.shift(nmin[0], nmin[1])
    # den_i may have regained a monomial factor only if g had one, which it cannot
    # because den_i was monomial-free; still guard for it.
    dmin = den_i.min_exponents()
    if dmin != (0, 0):
        den_i = den_i.shift(-dmin[0], -dmin[1])
        num_i = num_i.shift(-dmin[0], -dmin[1])
    # num/den = (num_i / mn) / (den_i / md)
    scale = Fraction(md, mn)
    c = den_i.content()
    _, lc = den_i.leading()
    if lc < 0:
        c = -c
    den_n = den_i * _inv(c)
    num_n = num_i * _norm_coef(scale / c)
    if den_n.is_constant():
        return num_n * _inv(den_n.constant_value()), LaurentPoly2.const(1)
    return num_n, den_n


def ratfunc(num, den=1) -> RatFunc2:
    return RatFunc2(num, den)


def z_var() -> RatFunc2:
    return RatFunc2.var(0)


def w_var() -> RatFunc2:
    return RatFunc2.var(1)


def _half_exponent(e) -> int:
    """Doubled exponent for an int or half-integer exponent."""
    f = Fraction(e) * 2
    if f.denominator != 1:
        raise ValueError(f"exponent {e} is not a half-integer")
    return int(f)


def substitute(
    f: RatFunc2,
    z: tuple[Coef, object, object],
    w: tuple[Coef, object, object],
    *,
    integral: bool = True,
) -> RatFunc2:
    """Substitute ``z -> c * q^a * t^b`` and ``w -> c' * q^a' * t^b'``.

    Exponents may be half-integers.  The computation runs in doubled exponents
    (internal variables zeta, tau with zeta^2 = q, tau^2 = t) and is mapped back
    to ``(q, t)`` at the end.  With ``integral=True`` a residual odd power of
    zeta or tau raises :class:`ValueError`; otherwise the doubled-exponent result
    is returned as is.
    """
    zc, za, zb = z
    wc, wa, wb = w
    zmap = (_norm_coef(Fraction(zc)), _half_exponent(za), _half_exponent(zb))
    wmap = (_norm_coef(Fraction(wc)), _half_exponent(wa), _half_exponent(wb))
    doubled = f.subs_monomial(zmap, wmap)
    if not integral:
        return doubled
    for part in (doubled.num, doubled.den):
        for (a, b) in part._terms:
            if a % 2 or b % 2:
                raise ValueError(f"substitution leaves half-integer powers: {doubled.format(('zeta', 'tau'))}")
    return RatFunc2(
        doubled.num.map_exponents(lambda a, b: (a // 2, b // 2)),
        doubled.den.map_exponents(lambda a, b: (a // 2, b // 2)),
        _reduced=True,
    )


def from_terms(terms: Iterable[tuple[int, int, Coef]]) -> LaurentPoly2:
    out: dict[Exp, Coef] = {}
    for i, j, c in terms:
        out[(i, j)] = out.get((i, j), 0) + c
    return LaurentPoly2(out)


def to_json(f: LaurentPoly2 | RatFunc2) -> dict:
    """Plain-data form: sorted ``[i, j, "coef"]`` triples, coefficients as exact strings."""
    if isinstance(f, RatFunc2):
        return {"num": to_json(f.num)["terms"], "den": to_json(f.den)["terms"]}
    return {"terms": [[i, j, str(c)] for (i, j), c in f.sorted_terms()]}


def from_json(data: dict) -> LaurentPoly2 | RatFunc2:
    def poly(triples) -> LaurentPoly2:
        return from_terms((int(i), int(j), _norm_coef(Fraction(c))) for i, j, c in triples)

    if "terms" in data:
        return poly(data["terms"])
    return RatFunc2(poly(data["num"]), poly(data["den"]))
