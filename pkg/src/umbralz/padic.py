"""p-adic numbers with an explicit precision window.

A :class:`PadicNum` is ``unit * p^valuation + O(p^(valuation + precision))``
with the unit reduced mod ``p^precision`` and prime to p.  Zero has
valuation :data:`INF`; an exact zero (embedded from the rational 0) has
infinite precision too, while a zero produced by cancelling two
approximations only knows it is divisible by ``p^absprec``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .core import RatLike, rat
from .errors import InvalidPrime, PrimeMismatch

INF = math.inf


@dataclass(frozen=True)
class AtLeast:
    """Valuation known only to be >= bound: the value is zero at this precision."""

    bound: int

    def __str__(self):
        return f">={self.bound}"


Valuation = Union[int, float, AtLeast]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def check_prime(p: int) -> int:
    if not isinstance(p, int) or isinstance(p, bool) or p == 2 or not is_prime(p):
        raise InvalidPrime(f"{p!r} is not an odd prime")
    return p


def vp_int(n: int, p: int) -> int:
    if n == 0:
        return INF
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def vp_rational(q: RatLike, p: int):
    q = rat(q)
    if q == 0:
        return INF
    return vp_int(q.numerator, p) - vp_int(q.denominator, p)


@dataclass(frozen=True)
class PadicNum:
    p: int
    unit: int
    valuation: Union[int, float]
    precision: Union[int, float]

    @property
    def absprec(self):
        """Exponent of the O(p^k) error term."""
        if self.valuation == INF:
            return self.precision
        return self.valuation + self.precision

    def is_zero(self) -> bool:
        return self.valuation == INF

    def __str__(self):
        p = self.p
        if self.is_zero():
            return "0" if self.precision == INF else f"0 + O({p}^{self.precision})"
        return f"{self.unit} * {p}^{self.valuation} + O({p}^{self.absprec})"

    def __add__(self, other):
        return padic_add(self, other)

    def __sub__(self, other):
        return padic_sub(self, other)

    def __mul__(self, other):
        return padic_mul(self, other)

    def __neg__(self):
        return padic_neg(self)


def padic_zero(p: int, absprec=INF) -> PadicNum:
    return PadicNum(p, 0, INF, absprec)


def padic_from_rational(r: RatLike, p: int, M: int) -> PadicNum:
    check_prime(p)
    if M < 1:
        raise ValueError("precision must be positive")
    r = rat(r)
    if r == 0:
        return padic_zero(p)
    vn = vp_int(r.numerator, p)
    vd = vp_int(r.denominator, p)
    num = r.numerator // p**vn
    den = r.denominator // p**vd
    mod = p**M
    return PadicNum(p, num * pow(den, -1, mod) % mod, vn - vd, M)


def _from_scaled(p: int, D: int, shift: int, absprec) -> PadicNum:
    """The p-adic D * p^shift known modulo p^absprec."""
    if absprec == INF:
        raise ValueError("inexact arithmetic on two exact zeros is not meaningful here")
    if D == 0 or D % p ** (absprec - shift) == 0:
        return padic_zero(p, absprec)
    v = vp_int(D, p)
    val = shift + v
    M = absprec - val
    return PadicNum(p, (D // p**v) % p**M, val, M)


def _same_prime(a: PadicNum, b: PadicNum) -> int:
    if a.p != b.p:
        raise PrimeMismatch(f"cannot combine {a.p}-adic and {b.p}-adic numbers")
    return a.p


def padic_add(a: PadicNum, b: PadicNum) -> PadicNum:
    p = _same_prime(a, b)
    if a.is_zero() and a.precision == INF:
        return b
    if b.is_zero() and b.precision == INF:
        return a
    absprec = min(a.absprec, b.absprec)
    if a.is_zero() or b.is_zero():
        x = b if a.is_zero() else a
        if x.is_zero() or x.valuation >= absprec:
            return padic_zero(p, absprec)
        M = absprec - x.valuation
        return PadicNum(p, x.unit % p**M, x.valuation, M)
    m = min(a.valuation, b.valuation)
    D = a.unit * p ** (a.valuation - m) + b.unit * p ** (b.valuation - m)
    return _from_scaled(p, D, m, absprec)


def padic_neg(a: PadicNum) -> PadicNum:
    if a.is_zero():
        return a
    return PadicNum(a.p, (-a.unit) % a.p**a.precision, a.valuation, a.precision)


def padic_sub(a: PadicNum, b: PadicNum) -> PadicNum:
    """a - b, known to the smaller of the two absolute precisions."""
    _same_prime(a, b)
    return padic_add(a, padic_neg(b))


def padic_mul(a: PadicNum, b: PadicNum) -> PadicNum:
    p = _same_prime(a, b)
    if a.is_zero() or b.is_zero():
        if (a.is_zero() and a.precision == INF) or (b.is_zero() and b.precision == INF):
            return padic_zero(p)
        z, other = (a, b) if a.is_zero() else (b, a)
        shift = 0 if other.is_zero() else other.valuation
        return padic_zero(p, z.precision + shift)
    M = min(a.precision, b.precision)
    return PadicNum(p, a.unit * b.unit % p**M, a.valuation + b.valuation, M)


def padic_reduce(a: PadicNum, M: int) -> PadicNum:
    """Drop to relative precision M (never raises precision)."""
    if a.is_zero() or M >= a.precision:
        return a
    return PadicNum(a.p, a.unit % a.p**M, a.valuation, M)


def padic_valuation(a: PadicNum) -> Valuation:
    """The valuation; INF for exact zero, AtLeast(k) for zero mod p^k."""
    if a.is_zero():
        return INF if a.precision == INF else AtLeast(a.precision)
    return a.valuation


def padic_to_fraction(a: PadicNum) -> Fraction:
    """The rational unit * p^valuation (a representative, not the exact value)."""
    if a.is_zero():
        return Fraction(0)
    return Fraction(a.unit) * Fraction(a.p) ** a.valuation
