"""Euler numbers and polynomials of every order, each by two routes.

Every public function computes its result along two independent paths and
raises :class:`InternalCrossCheckFailure` if they disagree.  The numbers
come from the recurrence E_0 = 1, sum_k C(n,k) E_k + E_n = 0 (n >= 1); the
series side is the multiplicative inverse of (e^t + 1)/2.
"""
from __future__ import annotations

import threading
from contextlib import contextmanager
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, prod

from .core import Poly, compositions, multinomial
from .errors import InternalCrossCheckFailure
from .powerseries import EgfSeries, ps_inv, ps_pow
from .umbral import apply

# C(12 + 4 - 1, 4 - 1): the composition count at n = 12, r = 4
MULTINOMIAL_TERM_LIMIT = comb(15, 3)

_lock = threading.RLock()
_numbers: list[Fraction] = [Fraction(1)]
_polys: dict[int, Poly] = {}
_functionals: dict[int, EgfSeries] = {}
_perturb: dict[int, Fraction] = {}


def euler_g(T: int, r: int = 1) -> EgfSeries:
    """((e^t + 1)/2)^r through t^T."""
    g = EgfSeries([1] + [Fraction(1, 2)] * T)
    return g if r == 1 else ps_pow(g, r)


def euler_functional(T: int, r: int = 1) -> EgfSeries:
    """(2/(e^t + 1))^r through t^T, via series inversion."""
    if r < 0:
        raise ValueError("order r must be nonnegative")
    with _lock:
        cached = _functionals.get(r)
        if cached is None or cached.trunc < T:
            base = ps_inv(euler_g(T))
            cached = base if r == 1 else ps_pow(base, r)
            _functionals[r] = cached
    return cached.truncate(T)


def _clear_caches() -> None:
    del _numbers[1:]
    _polys.clear()


@contextmanager
def perturbed_euler(index: int):
    """Corrupt E_index as returned by the recurrence, for mutation testing.

    Inside the block the recurrence output has E_index negated (or set to 1
    when it is 0).  The series route is untouched so cross-checks notice.
    """
    if index < 0:
        raise ValueError("index must be nonnegative")
    with _lock:
        true_value = _recurrence(index)[index]
        _perturb[index] = -true_value if true_value else Fraction(1)
        _clear_caches()
    try:
        yield _perturb[index]
    finally:
        with _lock:
            _perturb.pop(index, None)
            _clear_caches()


def _recurrence(nmax: int) -> list[Fraction]:
    out = [Fraction(1)]
    for n in range(1, nmax + 1):
        s = sum((comb(n, k) * out[k] for k in range(n)), Fraction(0))
        out.append(-s / 2)
    return out


def euler_numbers(nmax: int) -> list[Fraction]:
    """E_0 .. E_nmax from the recurrence."""
    if nmax < 0:
        raise ValueError("nmax must be nonnegative")
    with _lock:
        n = len(_numbers)
        while n <= nmax:
            s = sum((comb(n, k) * _numbers[k] for k in range(n)), Fraction(0))
            _numbers.append(_perturb.get(n, -s / 2))
            n += 1
        return _numbers[: nmax + 1]


def euler_poly(n: int) -> Poly:
    """E_n(x) = sum_k C(n,k) E_k x^(n-k), checked against (2/(e^t+1)) x^n."""
    with _lock:
        cached = _polys.get(n)
    if cached is not None:
        return cached
    E = euler_numbers(n)
    binomial_route = Poly(comb(n, j) * E[n - j] for j in range(n + 1))
    operator_route = apply(euler_functional(n), Poly.monomial(n))
    if binomial_route != operator_route:
        raise InternalCrossCheckFailure(
            f"E_{n}(x): binomial route {binomial_route} != operator route {operator_route}"
        )
    with _lock:
        return _polys.setdefault(n, binomial_route)


def multinomial_route(n: int, r: int) -> Fraction:
    """E_n^(r) as the sum over compositions of n into r parts."""
    E = euler_numbers(n)
    total = Fraction(0)
    for ks in compositions(n, r):
        term = prod((E[k] for k in ks), start=Fraction(1))
        if term:
            total += multinomial(n, ks) * term
    return total


def euler_order_r_routes(n: int, r: int) -> tuple[Fraction, int]:
    """(E_n^(r), number of routes that agreed on it)."""
    if r < 1:
        raise ValueError("order r must be positive")
    series_value = euler_functional(n, r).coeffs[n]
    if comb(n + r - 1, r - 1) > MULTINOMIAL_TERM_LIMIT:
        return series_value, 1
    direct = multinomial_route(n, r)
    if direct != series_value:
        raise InternalCrossCheckFailure(
            f"E_{n}^({r}): multinomial route {direct} != series route {series_value}"
        )
    return series_value, 2


def euler_order_r(n: int, r: int) -> Fraction:
    return euler_order_r_routes(n, r)[0]


def euler_poly_order_r(n: int, r: int) -> Poly:
    """E_n^(r)(x) by the addition theorem at x = 0, checked against the operator form."""
    if r == 1:
        return euler_poly(n)
    nums = [euler_order_r(k, r) for k in range(n + 1)]
    binomial_route = Poly(comb(n, k) * nums[n - k] for k in range(n + 1))
    operator_route = apply(euler_functional(n, r), Poly.monomial(n))
    if binomial_route != operator_route:
        raise InternalCrossCheckFailure(
            f"E_{n}^({r})(x): binomial route {binomial_route} != operator route {operator_route}"
        )
    return binomial_route


@dataclass
class EulerTable:
    order: int
    values: list[Fraction] = field(default_factory=list)
    polys: list[Poly] = field(default_factory=list)
    routes: list[int] = field(default_factory=list)

    @classmethod
    def build(cls, nmax: int, r: int = 1, with_polys: bool = False) -> "EulerTable":
        table = cls(order=r)
        for n in range(nmax + 1):
            value, routes = euler_order_r_routes(n, r)
            table.values.append(value)
            table.routes.append(routes)
            if with_polys:
                table.polys.append(euler_poly_order_r(n, r))
        return table
