"""Truncated formal power series in t, stored by exponential coefficients.

An :class:`EgfSeries` with coefficients ``a_0 .. a_T`` stands for
``sum a_k t^k / k!`` known through index ``T``; nothing is assumed about the
coefficients past ``T``.  Every binary operation returns a series truncated at
the smaller of its operands' truncations.
"""
from __future__ import annotations

import json
from fractions import Fraction
from math import comb, factorial
from typing import Iterable, Optional

from .core import RatLike, format_rational, rat
from .errors import (
    CompositionOrderError,
    NotDeltaSeries,
    NotInvertible,
    TruncationExhausted,
)


class EgfSeries:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[RatLike]):
        cs = tuple(rat(c) for c in coeffs)
        if not cs:
            raise ValueError("a series needs at least its constant coefficient")
        object.__setattr__(self, "coeffs", cs)

    def __setattr__(self, name, value):
        raise AttributeError("EgfSeries is immutable")

    @property
    def trunc(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int) -> Fraction:
        if not 0 <= k <= self.trunc:
            raise TruncationExhausted(f"coefficient {k} requested from a series known through {self.trunc}")
        return self.coeffs[k]

    def order(self) -> Optional[int]:
        """Index of the first nonzero coefficient, None if zero through trunc."""
        for k, c in enumerate(self.coeffs):
            if c != 0:
                return k
        return None

    def truncate(self, T: int) -> "EgfSeries":
        if T > self.trunc:
            raise TruncationExhausted(f"cannot extend a series known through {self.trunc} to {T}")
        return EgfSeries(self.coeffs[: T + 1])

    def __eq__(self, other):
        if not isinstance(other, EgfSeries):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        body = ", ".join(format_rational(c) for c in self.coeffs)
        return f"EgfSeries([{body}])"

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ps_const(other, self.trunc)
        return ps_add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return ps_scale(self, -1)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ps_const(other, self.trunc)
        return ps_add(self, ps_scale(other, -1))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return ps_scale(self, other)
        return ps_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, r: int):
        return ps_pow(self, r)

    def to_json(self) -> dict:
        return {"coeffs": [format_rational(c) for c in self.coeffs], "trunc": self.trunc}

    @classmethod
    def from_json(cls, data) -> "EgfSeries":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            coeffs, trunc = data["coeffs"], data["trunc"]
        except (TypeError, KeyError):
            raise ValueError('series literal must be {"coeffs": [...], "trunc": T}') from None
        if len(coeffs) != trunc + 1:
            raise ValueError(f"series literal has {len(coeffs)} coefficients but trunc {trunc}")
        return cls(coeffs)


def ps_const(c: RatLike, T: int) -> EgfSeries:
    return EgfSeries([c] + [0] * T)


def ps_t_power(k: int, T: int) -> EgfSeries:
    """The series t^k known through T; its EGF coefficient at k is k!."""
    cs = [0] * (T + 1)
    if k <= T:
        cs[k] = factorial(k)
    return EgfSeries(cs)


def ps_exp_linear(y: RatLike, T: int) -> EgfSeries:
    """e^{yt}: a_k = y^k."""
    y = rat(y)
    cs = [Fraction(1)]
    for _ in range(T):
        cs.append(cs[-1] * y)
    return EgfSeries(cs)


def ps_add(f: EgfSeries, g: EgfSeries) -> EgfSeries:
    T = min(f.trunc, g.trunc)
    return EgfSeries(f.coeffs[k] + g.coeffs[k] for k in range(T + 1))


def ps_scale(f: EgfSeries, c: RatLike) -> EgfSeries:
    c = rat(c)
    return EgfSeries(a * c for a in f.coeffs)


def ps_mul(f: EgfSeries, g: EgfSeries) -> EgfSeries:
    """Binomial convolution (fg)_n = sum_k C(n,k) f_k g_{n-k}."""
    T = min(f.trunc, g.trunc)
    a, b = f.coeffs, g.coeffs
    out = []
    for n in range(T + 1):
        s = Fraction(0)
        for k in range(n + 1):
            if a[k] and b[n - k]:
                s += comb(n, k) * a[k] * b[n - k]
        out.append(s)
    return EgfSeries(out)


def ps_pow(f: EgfSeries, r: int) -> EgfSeries:
    if r < 0:
        return ps_pow(ps_inv(f), -r)
    result = ps_const(1, f.trunc)
    base = f
    while r:
        if r & 1:
            result = ps_mul(result, base)
        r >>= 1
        if r:
            base = ps_mul(base, base)
    return result


def ps_inv(f: EgfSeries) -> EgfSeries:
    a = f.coeffs
    if a[0] == 0:
        raise NotInvertible("series has zero constant term")
    inv0 = 1 / a[0]
    g = [inv0]
    for n in range(1, f.trunc + 1):
        s = sum((comb(n, k) * a[k] * g[n - k] for k in range(1, n + 1) if a[k]), Fraction(0))
        g.append(-inv0 * s)
    return EgfSeries(g)


def ps_derivative(f: EgfSeries) -> EgfSeries:
    if f.trunc == 0:
        raise TruncationExhausted("cannot differentiate a series known only through t^0")
    return EgfSeries(f.coeffs[1:])


def ps_compose(f: EgfSeries, h: EgfSeries) -> EgfSeries:
    """f(h(t)) by Horner's rule on truncated powers of h."""
    if h.coeffs[0] != 0:
        raise CompositionOrderError("inner series must have zero constant term")
    T = min(f.trunc, h.trunc)
    h = h.truncate(T)
    acc = ps_const(f.coeffs[T] / factorial(T), T)
    for k in range(T - 1, -1, -1):
        acc = ps_mul(acc, h)
        acc = EgfSeries((acc.coeffs[0] + f.coeffs[k] / factorial(k),) + acc.coeffs[1:])
    return acc


def ps_comp_inverse(f: EgfSeries) -> EgfSeries:
    """The series g with f(g(t)) = g(f(t)) = t.

    Solved triangularly from g(f(t)) = t: the t^n coefficient of
    sum_k g_k f^k / k! involves g_n only through f^n, whose leading EGF
    coefficient is n! f_1^n.
    """
    if f.order() != 1:
        raise NotDeltaSeries(f"compositional inverse needs order 1, got order {f.order()}")
    T = f.trunc
    powers = [None, f]
    for _ in range(2, T + 1):
        powers.append(ps_mul(powers[-1], f))
    g = [Fraction(0)]
    for n in range(1, T + 1):
        s = Fraction(1 if n == 1 else 0)
        for k in range(1, n):
            if g[k]:
                s -= g[k] / factorial(k) * powers[k].coeffs[n]
        g.append(s * factorial(n) / powers[n].coeffs[n])
    return EgfSeries(g)
