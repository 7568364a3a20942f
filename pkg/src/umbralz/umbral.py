"""Series as linear functionals and operators on polynomials; Appell families."""
from __future__ import annotations

import threading
from fractions import Fraction
from math import factorial
from typing import Sequence

from .core import Poly, RatLike, poly_derivative, poly_eval, poly_mul_x, rat
from .errors import NotInvertible, TruncationExhausted
from .powerseries import (
    EgfSeries,
    ps_derivative,
    ps_exp_linear,
    ps_inv,
    ps_mul,
    ps_t_power,
)


def _need(f: EgfSeries, p: Poly, what: str) -> None:
    if not p.is_zero() and f.trunc < p.degree:
        raise TruncationExhausted(
            f"{what}: series known through t^{f.trunc} cannot act on a degree {p.degree} polynomial"
        )


def pair(f: EgfSeries, p: Poly) -> Fraction:
    """<f(t) | p(x)>, with <f | x^n> = a_n."""
    _need(f, p, "pair")
    return sum((c * f.coeffs[n] for n, c in enumerate(p.coeffs) if c), Fraction(0))


def apply(f: EgfSeries, p: Poly) -> Poly:
    """f(t) p(x) = sum_k a_k/k! p^(k)(x)."""
    _need(f, p, "apply")
    out = Poly()
    if p.is_zero():
        return out
    for k in range(p.degree + 1):
        a = f.coeffs[k]
        if a:
            out = out + poly_derivative(p, k) * (a / factorial(k))
    return out


def reconstruct_series(values: Sequence[RatLike]) -> EgfSeries:
    """The series whose pairings with 1, x, x^2, ... are `values`."""
    return EgfSeries(values)


def reconstruct_poly(p: Poly) -> Poly:
    """Rebuild p from its pairings <t^k | p> / k! as coefficients of x^k."""
    if p.is_zero():
        return p
    T = p.degree
    return Poly(pair(ps_t_power(k, T), p) / factorial(k) for k in range(T + 1))


class AppellFamily:
    """The Appell sequence s_n(x) = g(t)^{-1} x^n for an invertible g.

    Polynomials are memoized; the memo is guarded by a lock so concurrent
    readers see either nothing or the finished value.  s_n is monic exactly
    when g has constant term 1.
    """

    def __init__(self, g: EgfSeries):
        if g.coeffs[0] == 0:
            raise NotInvertible("Appell family needs an invertible series g")
        self.g = g
        self.g_inv = ps_inv(g)
        self._polys: dict[int, Poly] = {}
        self._lock = threading.Lock()
        self._log_deriv = None

    @property
    def trunc(self) -> int:
        return self.g.trunc

    def __repr__(self):
        return f"AppellFamily(g={self.g!r})"

    def poly(self, n: int) -> Poly:
        with self._lock:
            cached = self._polys.get(n)
        if cached is not None:
            return cached
        if n > self.trunc:
            raise TruncationExhausted(f"s_{n} needs g through t^{n}, have t^{self.trunc}")
        s = apply(self.g_inv, Poly.monomial(n))
        with self._lock:
            return self._polys.setdefault(n, s)

    def log_derivative(self) -> EgfSeries:
        """g'(t)/g(t), formed by series division."""
        if self._log_deriv is None:
            self._log_deriv = ps_mul(ps_derivative(self.g), self.g_inv)
        return self._log_deriv


def appell_poly(fam: AppellFamily, n: int) -> Poly:
    return fam.poly(n)


def appell_step(fam: AppellFamily, n: int) -> Poly:
    """s_{n+1} = (x - g'(t)/g(t)) s_n."""
    s = fam.poly(n)
    return poly_mul_x(s) - apply(fam.log_derivative(), s)


def expand_in_appell(p: Poly, fam: AppellFamily) -> list[Fraction]:
    """Coordinates d_k of p in the basis s_0, s_1, ..."""
    if p.is_zero():
        return []
    n = p.degree
    if fam.trunc < n:
        raise TruncationExhausted(f"expansion of degree {n} needs g through t^{n}")
    return [pair(ps_mul(fam.g, ps_t_power(k, n)), p) / factorial(k) for k in range(n + 1)]


def resum_appell(coords: Sequence[RatLike], fam: AppellFamily) -> Poly:
    out = Poly()
    for k, d in enumerate(coords):
        d = rat(d)
        if d:
            out = out + fam.poly(k) * d
    return out


def expand_functional(h: EgfSeries, fam: AppellFamily) -> list[Fraction]:
    """Coordinates e_k of h in the basis g(t) t^k, through the shared truncation."""
    T = min(h.trunc, fam.trunc)
    return [pair(h, fam.poly(k)) / factorial(k) for k in range(T + 1)]


def resum_functional(coords: Sequence[RatLike], fam: AppellFamily) -> EgfSeries:
    T = len(coords) - 1
    acc = EgfSeries([0] * (T + 1))
    for k, e in enumerate(coords):
        e = rat(e)
        if e:
            acc = acc + ps_mul(fam.g, ps_t_power(k, T)) * e
    return acc


def generating_check(fam: AppellFamily, y: RatLike, T: int) -> bool:
    """Does g(t)^{-1} e^{yt} have EGF coefficients s_k(y) for k <= T?"""
    if fam.trunc < T:
        raise TruncationExhausted(f"generating check through t^{T} needs g through t^{T}")
    y = rat(y)
    gen = ps_mul(fam.g_inv.truncate(T), ps_exp_linear(y, T))
    return all(gen.coeffs[k] == poly_eval(fam.poly(k), y) for k in range(T + 1))


def orthogonality_defects(fam: AppellFamily, nmax: int, kmax: int | None = None) -> list[tuple[int, int, Fraction]]:
    """Triples (n, k, value) where <g t^k | s_n> differs from n! delta_{n,k}."""
    kmax = nmax if kmax is None else kmax
    T = max(nmax, kmax)
    bad = []
    for k in range(kmax + 1):
        functional = ps_mul(fam.g.truncate(T), ps_t_power(k, T))
        for n in range(nmax + 1):
            v = pair(functional, fam.poly(n))
            if v != (factorial(n) if n == k else 0):
                bad.append((n, k, v))
    return bad
