"""The fermionic p-adic integral on Z_p, for polynomial integrands.

The exact value of the integral of p is the pairing <2/(e^t+1) | p>.  The
partial sums S_N = sum_{x < p^N} p(x)(-1)^x are computed two ways: directly,
and from the shift identity with the odd shift p^N, which gives

    S_N = (I[p(x + p^N)] + I[p]) / 2.

That closed form is a consequence of the shift identity and serves as a
cross-check, not as a definition.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

from .core import Poly, RatLike, format_rational, poly_eval, poly_shift, rat
from .errors import BudgetExceeded, InternalCrossCheckFailure
from .euler import euler_functional, euler_poly
from .padic import (
    INF,
    AtLeast,
    check_prime,
    padic_from_rational,
    padic_sub,
    padic_valuation,
)
from .powerseries import EgfSeries
from .umbral import apply, pair

DEFAULT_SUM_BUDGET = 10**7
BUDGET_ENV = "UMBRAL_SUM_BUDGET"


def sum_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return DEFAULT_SUM_BUDGET
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{BUDGET_ENV} must be an integer, got {raw!r}") from None


def _deg(pol: Poly) -> int:
    return 0 if pol.is_zero() else pol.degree


def integral(pol: Poly) -> Fraction:
    return pair(euler_functional(_deg(pol)), pol)


def integral_shifted(pol: Poly, x0: RatLike) -> Fraction:
    """Integral of pol(x0 + y) d mu_{-1}(y)."""
    return integral(poly_shift(pol, x0))


def partial_sum(pol: Poly, p: int, N: int, budget: int | None = None) -> Fraction:
    """sum_{x=0}^{p^N - 1} pol(x) (-1)^x, exactly."""
    check_prime(p)
    if N < 1:
        raise ValueError("N must be positive")
    budget = sum_budget() if budget is None else budget
    count = p**N
    if count > budget:
        raise BudgetExceeded(
            f"{p}^{N} = {count} terms exceeds the summation budget {budget}; "
            f"raise {BUDGET_ENV} or use the closed form"
        )
    if pol.is_zero():
        return Fraction(0)
    # clear denominators once and sum integer values
    D = lcm(*(c.denominator for c in pol.coeffs))
    ints = [int(c * D) for c in reversed(pol.coeffs)]
    total = 0
    for x in range(count):
        v = 0
        for c in ints:
            v = v * x + c
        total += -v if x & 1 else v
    return Fraction(total, D)


def partial_sum_closed_form(pol: Poly, p: int, N: int) -> Fraction:
    check_prime(p)
    return (integral_shifted(pol, p**N) + integral(pol)) / 2


def shift_identity_check(pol: Poly, n: int) -> bool:
    """I[f(x+n)] + (-1)^(n-1) I[f] == 2 sum_{l<n} (-1)^(n-1-l) f(l)."""
    if n < 1:
        raise ValueError("shift must be a positive integer")
    sign = 1 if (n - 1) % 2 == 0 else -1
    lhs = integral_shifted(pol, n) + sign * integral(pol)
    rhs = 2 * sum(((-1) ** (n - 1 - l) * poly_eval(pol, l) for l in range(n)), Fraction(0))
    return lhs == rhs


def iterated_integral_poly(pol: Poly, r: int) -> Poly:
    """The polynomial x -> r-fold integral of pol(x1 + ... + xr + x).

    One variable at a time: x^n integrates to E_n(x), so each pass replaces
    the monomial basis by Euler polynomials.
    """
    q = pol
    for _ in range(r):
        acc = Poly()
        for n, c in enumerate(q.coeffs):
            if c:
                acc = acc + euler_poly(n) * c
        q = acc
    return q


def integral_order_r(pol: Poly, r: int, x0: RatLike = 0) -> Fraction:
    if r < 1:
        raise ValueError("r must be positive")
    x0 = rat(x0)
    operator_value = poly_eval(apply(euler_functional(_deg(pol), r), pol), x0)
    iterated_value = poly_eval(iterated_integral_poly(pol, r), x0)
    if operator_value != iterated_value:
        raise InternalCrossCheckFailure(
            f"order-{r} integral of {pol}: operator route {operator_value} != iterated route {iterated_value}"
        )
    return operator_value


def functional_from_integral(T: int, r: int = 1) -> EgfSeries:
    """The series whose k-th EGF coefficient is the integral of x^k."""
    if r == 1:
        return EgfSeries(integral(Poly.monomial(k)) for k in range(T + 1))
    return EgfSeries(integral_order_r(Poly.monomial(k), r, 0) for k in range(T + 1))


@dataclass
class ReportRow:
    N: int
    S_N: Fraction
    valuation: object
    closed_form_ok: bool
    direct: bool

    def to_json(self) -> dict:
        v = self.valuation
        if v == INF:
            v = "inf"
        elif isinstance(v, AtLeast):
            v = str(v)
        return {
            "N": self.N,
            "S_N": format_rational(self.S_N),
            "valuation": v,
            "closed_form_ok": self.closed_form_ok,
            "direct": self.direct,
        }


@dataclass
class IntegralReport:
    integrand: Poly
    p: int
    exact: Fraction
    precision: int
    rows: list[ReportRow] = field(default_factory=list)

    @property
    def partial_sums(self):
        return [(row.N, row.S_N) for row in self.rows]

    @property
    def valuations(self):
        return [(row.N, row.valuation) for row in self.rows]

    @property
    def closed_form_check(self):
        return [row.closed_form_ok for row in self.rows]

    def to_json(self) -> dict:
        return {
            "integrand": self.integrand.to_json(),
            "p": self.p,
            "exact": format_rational(self.exact),
            "precision": self.precision,
            "rows": [row.to_json() for row in self.rows],
        }


def _difference_valuation(s: Fraction, exact: Fraction, p: int, M: int):
    v = padic_valuation(padic_sub(padic_from_rational(s, p, M), padic_from_rational(exact, p, M)))
    if isinstance(v, AtLeast) and s == exact:
        return INF
    return v


def convergence_report(
    pol: Poly,
    p: int,
    Nmax: int,
    M: int = 20,
    budget: int | None = None,
    require_direct: bool = False,
) -> IntegralReport:
    """Partial sums S_1..S_Nmax with v_p(S_N - exact).

    Direct summation runs whenever p^N fits the budget and must match the
    closed form; past the budget only the closed form is reported, unless
    `require_direct` is set, in which case BudgetExceeded propagates.
    """
    check_prime(p)
    budget = sum_budget() if budget is None else budget
    exact = integral(pol)
    report = IntegralReport(integrand=pol, p=p, exact=exact, precision=M)
    for N in range(1, Nmax + 1):
        closed = partial_sum_closed_form(pol, p, N)
        direct = require_direct or p**N <= budget
        ok = True
        if direct:
            ok = partial_sum(pol, p, N, budget) == closed
        report.rows.append(
            ReportRow(N, closed, _difference_valuation(closed, exact, p, M), ok, direct)
        )
    return report
