"""Exact rationals and dense univariate polynomials over Q.

Rationals are plain :class:`fractions.Fraction` values (aliased ``BigRat``);
they are always reduced with a positive denominator.  :class:`Poly` is an
immutable dense coefficient tuple, constant term first, with trailing zeros
trimmed so that equal polynomials compare equal.
"""
from __future__ import annotations

import json
from fractions import Fraction
from math import comb, factorial
from typing import Iterable, Iterator, Sequence, Union

BigRat = Fraction
RatLike = Union[Fraction, int, str]

# degree of the zero polynomial
NEG_INF = float("-inf")


def rat(value: RatLike) -> Fraction:
    """Coerce an int, Fraction or "num/den" string to a Fraction.

    Floats are refused: nothing in this package is allowed to be inexact.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"refusing inexact or boolean value {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot convert {type(value).__name__} to a rational")


def parse_rational(text: str) -> Fraction:
    s = text.strip()
    num, sep, den = s.partition("/")
    try:
        n = int(num)
        d = int(den) if sep else 1
    except ValueError:
        raise ValueError(f"malformed rational {text!r}") from None
    if d == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(n, d)


def format_rational(q: Fraction) -> str:
    """'num/den' in lowest terms, or just 'num' for integers."""
    q = rat(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class Poly:
    """Dense polynomial in x with rational coefficients.

    ``Poly([c0, c1, ...])`` is c0 + c1 x + ...; the zero polynomial has no
    coefficients and degree ``-inf``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[RatLike] = ()):
        cs = [rat(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def monomial(cls, n: int, c: RatLike = 1) -> "Poly":
        if n < 0:
            raise ValueError("monomial degree must be nonnegative")
        return cls([0] * n + [c])

    @classmethod
    def constant(cls, c: RatLike) -> "Poly":
        return cls([c])

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly([{', '.join(format_rational(c) for c in self.coeffs)}])"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mag = format_rational(abs(c))
            if k == 0:
                body = mag
            else:
                xk = "x" if k == 1 else f"x^{k}"
                body = xk if abs(c) == 1 else f"{mag}*{xk}"
            terms.append(("-" if c < 0 else "+", body))
        sign, body = terms[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.coeffs)

    def __call__(self, y: RatLike) -> Fraction:
        return poly_eval(self, y)

    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __add__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.coeff(k) + other.coeff(k) for k in range(n))

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Poly(c * other for c in self.coeffs)
        if not isinstance(other, Poly):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def to_json(self) -> list[str]:
        return [format_rational(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data) -> "Poly":
        """Accepts a list of rational strings/ints, or a JSON text of one."""
        if isinstance(data, str):
            try:
                data = json.loads(data)
            except json.JSONDecodeError as exc:
                raise ValueError(f"polynomial literal is not valid JSON: {exc}") from None
        if not isinstance(data, list):
            raise ValueError("polynomial literal must be a JSON array, constant term first")
        coeffs = []
        for item in data:
            if isinstance(item, bool) or not isinstance(item, (str, int)):
                raise ValueError(f"bad coefficient {item!r}; use rational strings like \"-1/2\"")
            coeffs.append(rat(item))
        return cls(coeffs)


def _as_poly(value):
    if isinstance(value, Poly):
        return value
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return Poly([value])
    return None


def poly_eval(p: Poly, y: RatLike) -> Fraction:
    y = rat(y)
    acc = Fraction(0)
    for c in reversed(p.coeffs):
        acc = acc * y + c
    return acc


def poly_derivative(p: Poly, k: int = 1) -> Poly:
    """k-th formal derivative, i.e. the action of t^k on p."""
    if k < 0:
        raise ValueError("derivative order must be nonnegative")
    if k == 0:
        return p
    # n!/(n-k)! x^(n-k)
    return Poly(p.coeffs[n] * (factorial(n) // factorial(n - k)) for n in range(k, len(p.coeffs)))


def poly_shift(p: Poly, y: RatLike) -> Poly:
    """p(x + y), expanded in powers of x."""
    y = rat(y)
    if y == 0 or p.is_zero():
        return p
    d = len(p.coeffs)
    ypow = [Fraction(1)]
    for _ in range(d - 1):
        ypow.append(ypow[-1] * y)
    out = [Fraction(0)] * d
    for n, c in enumerate(p.coeffs):
        if c == 0:
            continue
        for j in range(n + 1):
            out[j] += c * comb(n, j) * ypow[n - j]
    return Poly(out)


def poly_mul_x(p: Poly) -> Poly:
    if p.is_zero():
        return p
    return Poly((0,) + p.coeffs)


def compositions(n: int, parts: int) -> Iterator[tuple[int, ...]]:
    """All tuples of `parts` nonnegative ints summing to n, lexicographic."""
    if parts <= 0:
        if n == 0:
            yield ()
        return
    if parts == 1:
        yield (n,)
        return
    for first in range(n + 1):
        for rest in compositions(n - first, parts - 1):
            yield (first,) + rest


def multinomial(n: int, ks: Sequence[int]) -> int:
    if sum(ks) != n:
        raise ValueError("parts must sum to n")
    out = factorial(n)
    for k in ks:
        out //= factorial(k)
    return out
