"""Registry of identities and a deterministic runner that checks them all.

Each identity is a generator of ``(inputs, thunk)`` cases.  The runner
calls each thunk; a falsy return or any exception is a failure, recorded
with the serialized inputs so the case can be reproduced.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Callable, Iterator, Optional

from .core import (
    Poly,
    compositions,
    format_rational,
    multinomial,
    poly_derivative,
    poly_eval,
    poly_mul_x,
    poly_shift,
)
from .euler import (
    euler_functional,
    euler_g,
    euler_numbers,
    euler_order_r,
    euler_poly,
    euler_poly_order_r,
    multinomial_route,
)
from .fermionic import (
    functional_from_integral,
    integral,
    integral_order_r,
    integral_shifted,
    iterated_integral_poly,
    partial_sum,
    partial_sum_closed_form,
    shift_identity_check,
)
from .padic import AtLeast, padic_from_rational, padic_sub, padic_valuation
from .powerseries import (
    EgfSeries,
    ps_add,
    ps_derivative,
    ps_exp_linear,
    ps_inv,
    ps_mul,
    ps_scale,
    ps_t_power,
)
from .umbral import (
    AppellFamily,
    apply,
    appell_step,
    expand_functional,
    expand_in_appell,
    generating_check,
    orthogonality_defects,
    pair,
    reconstruct_poly,
    reconstruct_series,
    resum_appell,
    resum_functional,
)

Case = tuple[dict, Callable[[], object]]


@dataclass
class SuiteConfig:
    nmax: int = 10
    rmax: int = 3
    primes: tuple[int, ...] = (3, 5, 7)
    seed: int = 0
    cases: int = 100
    Nmax: int = 3
    shifts: int = 10


@dataclass
class SuiteResult:
    id: str
    params: str
    passed: bool
    counterexample: Optional[dict] = None
    cases: int = 0
    wall_time: float = 0.0

    def to_json(self, timings: bool = False) -> dict:
        out = {
            "id": self.id,
            "params": self.params,
            "passed": self.passed,
            "cases": self.cases,
            "counterexample": self.counterexample,
        }
        if timings:
            out["wall_time"] = round(self.wall_time, 6)
        return out


def serialize(value):
    if isinstance(value, Poly):
        return value.to_json()
    if isinstance(value, EgfSeries):
        return value.to_json()
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, dict):
        return {k: serialize(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [serialize(v) for v in value]
    return value


# random inputs: numerators and denominators from [-9, 9] without 0

_POOL = [k for k in range(-9, 10) if k]


def rand_rat(rng: random.Random) -> Fraction:
    return Fraction(rng.choice(_POOL), rng.choice(_POOL))


def rand_poly(rng: random.Random, deg: int) -> Poly:
    return Poly(rand_rat(rng) if rng.random() < 0.8 else 0 for _ in range(deg + 1))


def rand_series(rng: random.Random, T: int, const: Optional[Fraction] = None) -> EgfSeries:
    cs = [rand_rat(rng) if rng.random() < 0.8 else Fraction(0) for _ in range(T + 1)]
    if const is not None:
        cs[0] = const
    return EgfSeries(cs)


def rand_family(rng: random.Random, T: int) -> AppellFamily:
    return AppellFamily(rand_series(rng, T, const=Fraction(1)))


def _euler_family(T: int) -> AppellFamily:
    return AppellFamily(euler_g(T))


@dataclass
class Identity:
    id: str
    summary: str
    params: Callable[[SuiteConfig], str]
    cases: Callable[[SuiteConfig, random.Random], Iterator[Case]]


REGISTRY: list[Identity] = []


def identity(id: str, summary: str, params: Callable[[SuiteConfig], str]):
    def register(fn):
        REGISTRY.append(Identity(id, summary, params, fn))
        return fn

    return register


def _n(cfg):
    return f"n<={cfg.nmax}"


def _rand(cfg):
    return f"{cfg.cases} random cases, deg<={max(cfg.nmax, 0)}, seed={cfg.seed}"


# -- shift identities and the limit ------------------------------------------

@identity("eq1-fermionic-limit", "v_p(S_N - E_n) >= N; direct sum equals closed form",
          lambda c: f"n<={min(c.nmax, 8)}, N<={c.Nmax}, p in {list(c.primes)}")
def _eq1(cfg, rng):
    for p in cfg.primes:
        for n in range(min(cfg.nmax, 8) + 1):
            pol = Poly.monomial(n)
            for N in range(1, cfg.Nmax + 1):
                def check(pol=pol, p=p, N=N, n=n):
                    closed = partial_sum_closed_form(pol, p, N)
                    if p**N <= 10**5 and partial_sum(pol, p, N) != closed:
                        return False
                    E = euler_numbers(n)[n]
                    v = padic_valuation(padic_sub(padic_from_rational(closed, p, N + 8),
                                                  padic_from_rational(E, p, N + 8)))
                    bound = v.bound if isinstance(v, AtLeast) else v
                    return bound >= N
                yield {"poly": pol, "p": p, "N": N}, check


@identity("eq2-shift", "I[f(x+n)] + (-1)^(n-1) I[f] = 2 sum_{l<n} (-1)^(n-1-l) f(l)",
          lambda c: f"monomials deg<={c.nmax}, shifts 1..{c.shifts}")
def _eq2(cfg, rng):
    for d in range(cfg.nmax + 1):
        for n in range(1, cfg.shifts + 1):
            pol = Poly.monomial(d)
            yield {"poly": pol, "shift": n}, lambda pol=pol, n=n: shift_identity_check(pol, n)


@identity("eq3-shift-unit", "I[f(x+1)] + I[f] = 2 f(0)", _n)
def _eq3(cfg, rng):
    for d in range(cfg.nmax + 1):
        pol = Poly.monomial(d)
        yield {"poly": pol}, lambda pol=pol: (
            integral_shifted(pol, 1) + integral(pol) == 2 * poly_eval(pol, 0)
        )


# -- pairing axioms ----------------------------------------------------------

@identity("eq6-kronecker", "<t^k | x^n> = n! delta_{n,k}", lambda c: f"n,k<={c.nmax}")
def _eq6(cfg, rng):
    N = cfg.nmax
    for k in range(N + 1):
        for n in range(N + 1):
            yield {"k": k, "n": n}, lambda k=k, n=n: (
                pair(ps_t_power(k, N), Poly.monomial(n)) == (factorial(n) if n == k else 0)
            )


@identity("eq7-exp-pairing", "<e^{yt} | p(x)> = p(y)", _rand)
def _eq7(cfg, rng):
    for _ in range(cfg.cases):
        p, y = rand_poly(rng, rng.randint(0, cfg.nmax)), rand_rat(rng)
        yield {"poly": p, "y": y}, lambda p=p, y=y: (
            pair(ps_exp_linear(y, cfg.nmax), p) == poly_eval(p, y)
        )


@identity("eq8-series-reconstruction", "f(t) = sum <f | x^k> t^k / k!", _rand)
def _eq8(cfg, rng):
    for _ in range(cfg.cases):
        f = rand_series(rng, cfg.nmax)
        yield {"series": f}, lambda f=f: (
            reconstruct_series([pair(f, Poly.monomial(k)) for k in range(f.trunc + 1)]) == f
        )


@identity("eq9-poly-reconstruction", "p(x) = sum <t^k | p> x^k / k!", _rand)
def _eq9(cfg, rng):
    for _ in range(cfg.cases):
        p = rand_poly(rng, rng.randint(0, cfg.nmax))
        yield {"poly": p}, lambda p=p: reconstruct_poly(p) == p


@identity("eq10-multinomial-pairing", "<f_1...f_m | x^n> = sum multinomial * prod <f_j | x^i_j>",
          lambda c: f"m<=3, n<={min(c.nmax, 8)}, {c.cases} random cases")
def _eq10(cfg, rng):
    nmax = min(cfg.nmax, 8)
    for _ in range(cfg.cases):
        m = rng.randint(1, 3)
        n = rng.randint(0, nmax)
        fs = [rand_series(rng, nmax) for _ in range(m)]

        def check(fs=fs, n=n, m=m):
            prod = fs[0]
            for f in fs[1:]:
                prod = ps_mul(prod, f)
            brute = Fraction(0)
            for ks in compositions(n, m):
                term = Fraction(multinomial(n, ks))
                for f, k in zip(fs, ks):
                    term *= pair(f, Poly.monomial(k))
                brute += term
            return pair(prod, Poly.monomial(n)) == brute
        yield {"series": fs, "n": n}, check


@identity("eq12-derivative-at-zero", "p^(k)(0) = <t^k | p> = <1 | p^(k)>", _rand)
def _eq12(cfg, rng):
    for _ in range(cfg.cases):
        p = rand_poly(rng, rng.randint(0, cfg.nmax))
        k = rng.randint(0, cfg.nmax)

        def check(p=p, k=k):
            d = poly_derivative(p, k)
            T = cfg.nmax
            return poly_eval(d, 0) == pair(ps_t_power(k, T), p) == pair(ps_t_power(0, T), d)
        yield {"poly": p, "k": k}, check


@identity("eq13-derivative-operator", "t^k p(x) = p^(k)(x)", _rand)
def _eq13(cfg, rng):
    for _ in range(cfg.cases):
        p = rand_poly(rng, rng.randint(0, cfg.nmax))
        k = rng.randint(0, cfg.nmax)
        yield {"poly": p, "k": k}, lambda p=p, k=k: (
            apply(ps_t_power(k, cfg.nmax), p) == poly_derivative(p, k)
        )


@identity("eq14-shift-operator", "e^{yt} p(x) = p(x + y)", _rand)
def _eq14(cfg, rng):
    for _ in range(cfg.cases):
        p, y = rand_poly(rng, rng.randint(0, cfg.nmax)), rand_rat(rng)
        yield {"poly": p, "y": y}, lambda p=p, y=y: (
            apply(ps_exp_linear(y, cfg.nmax), p) == poly_shift(p, y)
        )


@identity("eq15-derivative-duality", "<f | x p(x)> = <f' | p(x)>", _rand)
def _eq15(cfg, rng):
    for _ in range(cfg.cases):
        f = rand_series(rng, cfg.nmax + 1)
        p = rand_poly(rng, rng.randint(0, cfg.nmax))
        yield {"series": f, "poly": p}, lambda f=f, p=p: (
            pair(f, poly_mul_x(p)) == pair(ps_derivative(f), p)
        )


@identity("eq16-difference", "<e^{yt} - 1 | p> = p(y) - p(0)", _rand)
def _eq16(cfg, rng):
    for _ in range(cfg.cases):
        p, y = rand_poly(rng, rng.randint(0, cfg.nmax)), rand_rat(rng)

        def check(p=p, y=y):
            f = ps_add(ps_exp_linear(y, cfg.nmax), ps_scale(ps_t_power(0, cfg.nmax), -1))
            return pair(f, p) == poly_eval(p, y) - poly_eval(p, 0)
        yield {"poly": p, "y": y}, check


@identity("adjunction", "<f g | p> = <f | g p> = <g | f p>", _rand)
def _adjunction(cfg, rng):
    for _ in range(cfg.cases):
        f, g = rand_series(rng, cfg.nmax), rand_series(rng, cfg.nmax)
        p = rand_poly(rng, rng.randint(0, cfg.nmax))
        yield {"f": f, "g": g, "poly": p}, lambda f=f, g=g, p=p: (
            pair(ps_mul(f, g), p) == pair(f, apply(g, p)) == pair(g, apply(f, p))
        )


# -- Appell machinery --------------------------------------------------------

@identity("eq17-functional-expansion", "h(t) = sum <h | s_k> / k! g(t) t^k",
          lambda c: f"Euler family and {c.cases} random (g, h), T<={c.nmax}")
def _eq17(cfg, rng):
    T = cfg.nmax
    fam = _euler_family(T)
    yield {"g": fam.g, "h": fam.g_inv}, lambda: resum_functional(expand_functional(fam.g_inv, fam), fam) == fam.g_inv
    for _ in range(cfg.cases):
        g, h = rand_series(rng, T, const=Fraction(1)), rand_series(rng, T)
        def check(g=g, h=h):
            fam = AppellFamily(g)
            return resum_functional(expand_functional(h, fam), fam) == h
        yield {"g": g, "h": h}, check


@identity("eq18-poly-expansion", "p(x) = sum <g t^k | p> / k! s_k(x)",
          lambda c: f"Euler family and {c.cases} random (g, p), deg<={c.nmax}")
def _eq18(cfg, rng):
    T = cfg.nmax
    fam = _euler_family(T)
    for _ in range(cfg.cases):
        p = rand_poly(rng, rng.randint(0, T))
        g = rand_series(rng, T, const=Fraction(1))
        yield {"g": fam.g, "poly": p}, lambda p=p: resum_appell(expand_in_appell(p, fam), fam) == p
        def check(p=p, g=g):
            fam_g = AppellFamily(g)
            return resum_appell(expand_in_appell(p, fam_g), fam_g) == p
        yield {"g": g, "poly": p}, check


@identity("eq19-generating", "g(t)^-1 e^{yt} = sum s_k(y) t^k / k!",
          lambda c: f"Euler family, T={c.nmax}, y in {{0, 1}} plus 10 random y")
def _eq19(cfg, rng):
    fam = _euler_family(cfg.nmax)
    ys = [Fraction(0), Fraction(1)] + [rand_rat(rng) for _ in range(10)]
    for y in ys:
        yield {"g": fam.g, "y": y, "T": cfg.nmax}, lambda y=y: generating_check(fam, y, cfg.nmax)


@identity("eq20-lowering", "t s_n(x) = n s_{n-1}(x)", lambda c: f"n<={c.nmax}, Euler + 10 random families")
def _eq20(cfg, rng):
    fams = [_euler_family(cfg.nmax)] + [rand_family(rng, cfg.nmax) for _ in range(10)]
    t = ps_t_power(1, cfg.nmax)
    for fam in fams:
        for n in range(1, cfg.nmax + 1):
            yield {"g": fam.g, "n": n}, lambda fam=fam, n=n: (
                apply(t, fam.poly(n)) == fam.poly(n - 1) * n
            )


@identity("appell-orthogonality", "<g t^k | s_n> = n! delta_{n,k}", lambda c: f"n,k<={c.nmax}, Euler + 5 random")
def _orth(cfg, rng):
    fams = [_euler_family(cfg.nmax)] + [rand_family(rng, cfg.nmax) for _ in range(5)]
    for fam in fams:
        yield {"g": fam.g, "nmax": cfg.nmax}, lambda fam=fam: not orthogonality_defects(fam, cfg.nmax)


@identity("eq22-appell-identity", "s_n(x + y) = sum C(n,k) s_k(x) y^(n-k)",
          lambda c: f"n<={c.nmax}, Euler polynomials and a random family, 3 random y")
def _eq22(cfg, rng):
    fam = rand_family(rng, cfg.nmax)
    ys = [rand_rat(rng) for _ in range(3)]
    for y in ys:
        for n in range(cfg.nmax + 1):
            for name, s in (("euler", euler_poly), ("random", fam.poly)):
                def check(y=y, n=n, s=s):
                    rhs = Poly()
                    for k in range(n + 1):
                        rhs = rhs + s(k) * (comb(n, k) * y ** (n - k))
                    return poly_shift(s(n), y) == rhs
                yield {"family": name, "g": fam.g if name == "random" else euler_g(cfg.nmax),
                       "n": n, "y": y}, check


# -- Euler numbers and polynomials ------------------------------------------

@identity("eq23-recurrence", "(E + 1)^n + E_n = 2 delta_{0,n}, and E_n are the coefficients of 2/(e^t+1)", _n)
def _eq23(cfg, rng):
    N = cfg.nmax
    yield {"nmax": N}, lambda: euler_numbers(N) == list(ps_inv(euler_g(N)).coeffs)
    for n in range(N + 1):
        def check(n=n):
            E = euler_numbers(n)
            return sum((comb(n, k) * E[k] for k in range(n + 1)), Fraction(0)) + E[n] == (2 if n == 0 else 0)
        yield {"n": n}, check


@identity("eq27-euler-appell", "(2/(e^t+1)) x^n = E_n(x) and t E_n(x) = n E_{n-1}(x)", _n)
def _eq27(cfg, rng):
    t = ps_t_power(1, cfg.nmax)
    for n in range(cfg.nmax + 1):
        def check(n=n):
            En = euler_poly(n)
            if apply(euler_functional(n), Poly.monomial(n)) != En:
                return False
            return n == 0 or apply(t, En) == euler_poly(n - 1) * n
        yield {"n": n}, check


@identity("eq28-operator-recurrence", "E_{n+1}(x) = (x - g'(t)/g(t)) E_n(x)", lambda c: f"n<{c.nmax}")
def _eq28(cfg, rng):
    fam = _euler_family(cfg.nmax + 1)
    for n in range(cfg.nmax):
        yield {"n": n}, lambda n=n: appell_step(fam, n) == euler_poly(n + 1)


@identity("eq31-reflection", "E_n(x + 1) + E_n(x) = 2 x^n", _n)
def _eq31(cfg, rng):
    for n in range(cfg.nmax + 1):
        yield {"n": n}, lambda n=n: poly_shift(euler_poly(n), 1) + euler_poly(n) == Poly.monomial(n, 2)


@identity("eq35-descent", "E_{n+1}(x+1) + E_{n+1}(x) = x (E_n(x+1) + E_n(x))", lambda c: f"n<{c.nmax}")
def _eq35(cfg, rng):
    def both(n):
        return poly_shift(euler_poly(n), 1) + euler_poly(n)

    for n in range(cfg.nmax):
        yield {"n": n}, lambda n=n: both(n + 1) == poly_mul_x(both(n))


# -- the functional 2/(e^t+1) is the fermionic integral ----------------------

@identity("eq38-theorem1", "<2/(e^t+1) | x^n> = integral of x^n = E_n", _n)
def _eq38(cfg, rng):
    N = cfg.nmax
    yield {"T": N}, lambda: functional_from_integral(N) == ps_inv(euler_g(N))
    for n in range(N + 1):
        yield {"n": n}, lambda n=n: (
            pair(ps_inv(euler_g(n)), Poly.monomial(n)) == integral(Poly.monomial(n)) == euler_numbers(n)[n]
        )


@identity("eq40-theorem2", "integral of p(x0 + y) = ((2/(e^t+1)) p)(x0)", _rand)
def _eq40(cfg, rng):
    for n in range(cfg.nmax + 1):
        x0 = rand_rat(rng)
        yield {"poly": Poly.monomial(n), "x0": x0}, lambda n=n, x0=x0: (
            integral_shifted(Poly.monomial(n), x0) == poly_eval(euler_poly(n), x0)
        )
    for _ in range(cfg.cases):
        p, x0 = rand_poly(rng, rng.randint(0, cfg.nmax)), rand_rat(rng)
        yield {"poly": p, "x0": x0}, lambda p=p, x0=x0: (
            integral_shifted(p, x0) == poly_eval(apply(euler_functional(cfg.nmax), p), x0)
        )


# -- higher order ------------------------------------------------------------

def _nr(cfg):
    return f"n<={cfg.nmax}, r<={cfg.rmax}"


@identity("eq43-order-r-lowering", "t E_n^(r)(x) = n E_{n-1}^(r)(x)", _nr)
def _eq43(cfg, rng):
    t = ps_t_power(1, cfg.nmax)
    for r in range(1, cfg.rmax + 1):
        for n in range(1, cfg.nmax + 1):
            yield {"n": n, "r": r}, lambda n=n, r=r: (
                apply(t, euler_poly_order_r(n, r)) == euler_poly_order_r(n - 1, r) * n
            )


@identity("eq44-order-r-addition", "E_n^(r)(x + y) = sum C(n,k) E_{n-k}^(r)(x) y^k",
          lambda c: f"n<={c.nmax}, r<={c.rmax}, 3 random y")
def _eq44(cfg, rng):
    ys = [rand_rat(rng) for _ in range(3)]
    for r in range(1, cfg.rmax + 1):
        for n in range(cfg.nmax + 1):
            for y in ys:
                def check(n=n, r=r, y=y):
                    rhs = Poly()
                    for k in range(n + 1):
                        rhs = rhs + euler_poly_order_r(n - k, r) * (comb(n, k) * y**k)
                    return poly_shift(euler_poly_order_r(n, r), y) == rhs
                yield {"n": n, "r": r, "y": y}, check


@identity("eq48-multinomial", "E_n^(r) = sum multinomial(n; i) E_i1 ... E_ir", _nr)
def _eq48(cfg, rng):
    for r in range(1, cfg.rmax + 1):
        for n in range(cfg.nmax + 1):
            yield {"n": n, "r": r}, lambda n=n, r=r: (
                multinomial_route(n, r) == euler_functional(n, r).coeffs[n]
            )


@identity("eq51-theorem3", "r-fold integral of p(x1+...+xr+x) = (2/(e^t+1))^r p(x)",
          lambda c: f"deg<={c.nmax}, r<={c.rmax}, random x0")
def _eq51(cfg, rng):
    for r in range(1, cfg.rmax + 1):
        for n in range(cfg.nmax + 1):
            x0 = rand_rat(rng)
            yield {"poly": Poly.monomial(n), "r": r, "x0": x0}, lambda n=n, r=r, x0=x0: (
                integral_order_r(Poly.monomial(n), r, x0) == poly_eval(euler_poly_order_r(n, r), x0)
                and iterated_integral_poly(Poly.monomial(n), r) == euler_poly_order_r(n, r)
            )


@identity("eq53-theorem4", "<(2/(e^t+1))^r | p> = r-fold integral of p(x1+...+xr)", _nr)
def _eq53(cfg, rng):
    for r in range(1, cfg.rmax + 1):
        yield {"r": r, "T": cfg.nmax}, lambda r=r: (
            functional_from_integral(cfg.nmax, r) == euler_functional(cfg.nmax, r)
        )
        for n in range(cfg.nmax + 1):
            yield {"r": r, "n": n}, lambda r=r, n=n: (
                euler_order_r(n, r) == integral_order_r(Poly.monomial(n), r, 0)
            )


@identity("order-r-orthogonality", "<g^r t^k | E_n^(r)(x)> = n! delta_{n,k}", lambda c: f"n,k<={min(c.nmax, 8)}, r<={c.rmax}")
def _orth_r(cfg, rng):
    N = min(cfg.nmax, 8)
    for r in range(1, cfg.rmax + 1):
        gr = euler_g(N, r)
        for k in range(N + 1):
            functional = ps_mul(gr, ps_t_power(k, N))
            for n in range(N + 1):
                yield {"r": r, "k": k, "n": n}, lambda functional=functional, n=n, k=k, r=r: (
                    pair(functional, euler_poly_order_r(n, r)) == (factorial(n) if n == k else 0)
                )


# -- runner ------------------------------------------------------------------

def select(filters: Optional[list[str]] = None) -> list[Identity]:
    """Identities whose id equals a filter or starts with filter + '-'."""
    if not filters:
        return list(REGISTRY)
    chosen = [
        ident for ident in REGISTRY
        if any(ident.id == f or ident.id.startswith(f + "-") for f in filters)
    ]
    return chosen


def run_identity(ident: Identity, cfg: SuiteConfig) -> SuiteResult:
    rng = random.Random(f"{cfg.seed}:{ident.id}")
    start = time.perf_counter()
    count = 0
    failure = None
    for inputs, thunk in ident.cases(cfg, rng):
        count += 1
        try:
            ok = bool(thunk())
            error = None
        except Exception as exc:  # any raise inside a case is a failure
            ok, error = False, f"{type(exc).__name__}: {exc}"
        if not ok:
            failure = {"inputs": serialize(inputs)}
            if error:
                failure["error"] = error
            break
    return SuiteResult(
        id=ident.id,
        params=ident.params(cfg),
        passed=failure is None,
        counterexample=failure,
        cases=count,
        wall_time=time.perf_counter() - start,
    )


def run_suite(cfg: Optional[SuiteConfig] = None, filters: Optional[list[str]] = None) -> list[SuiteResult]:
    cfg = cfg or SuiteConfig()
    return [run_identity(ident, cfg) for ident in select(filters)]
