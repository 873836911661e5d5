"""Plethystic exponential and logarithm on truncated symmetric series.

The Adams operation ``psi_k`` raises every alphabet variable and both formal
variables ``z, w`` to the k-th power:

    psi_k(c(z, w) m_lam) = c(z^k, w^k) m_{k lam}

``Exp F = exp(sum_k psi_k F / k)``.  Since ``log Exp F = sum_k psi_k F / k``,
Moebius inversion gives ``Log G = sum_k mu(k)/k psi_k(log G)`` with the
ordinary series logarithm.

>>> from wildhodge.symfunc import SymSeries
>>> x = SymSeries.monomial(1, 2, [(1,)])
>>> pleth_exp(x).homogeneous(2) == SymSeries.from_basis(1, 2, [("h", (2,))])
True
>>> pleth_log(pleth_exp(x)) == x
True
"""

from __future__ import annotations

from fractions import Fraction

from sympy import mobius

from .symfunc import SymSeries, _key_degree


def adams(k: int, f: SymSeries) -> SymSeries:
    if k < 1:
        raise ValueError("Adams operations need k >= 1")
    if k == 1:
        return f
    out = {}
    for key, c in f.coeffs.items():
        if _key_degree(key) * k > f.max_degree:
            continue
        out[tuple(p.scaled(k) for p in key)] = c.adams(k)
    return f._like(out)


def _exp_series(x: SymSeries) -> SymSeries:
    """Ordinary exponential of a series without constant term."""
    total = SymSeries.one(x.alphabet_count, x.max_degree)
    term = total
    low = x.min_degree()
    j = 1
    while not x.is_zero() and j * low <= x.max_degree:
        term = (term * x).scale(Fraction(1, j))
        total = total + term
        j += 1
    return total


def _log_series(g: SymSeries) -> SymSeries:
    """Ordinary logarithm of a series with constant term 1."""
    x = g - 1
    total = SymSeries.zero(g.alphabet_count, g.max_degree)
    if x.is_zero():
        return total
    low = x.min_degree()
    power = x
    j = 1
    while not power.is_zero() and j * low <= g.max_degree:
        total = total + power.scale(Fraction((-1) ** (j + 1), j))
        power = power * x
        j += 1
    return total


def pleth_exp(f: SymSeries) -> SymSeries:
    if f.constant_term():
        raise ValueError("Exp needs a series with zero constant term")
    if f.is_zero():
        return SymSeries.one(f.alphabet_count, f.max_degree)
    low = f.min_degree()
    arg = SymSeries.zero(f.alphabet_count, f.max_degree)
    for k in range(1, f.max_degree // low + 1):
        arg = arg + adams(k, f).scale(Fraction(1, k))
    return _exp_series(arg)


def pleth_log(g: SymSeries) -> SymSeries:
    if g.constant_term() != 1:
        raise ValueError("Log needs a series with constant term 1")
    logg = _log_series(g)
    if logg.is_zero():
        return logg
    low = logg.min_degree()
    out = SymSeries.zero(g.alphabet_count, g.max_degree)
    for k in range(1, g.max_degree // low + 1):
        mu = int(mobius(k))
        if mu:
            out = out + adams(k, logg).scale(Fraction(mu, k))
    return out
