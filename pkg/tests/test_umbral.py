import random
import threading
from fractions import Fraction as F
from math import comb, factorial

import pytest

from umbralz.core import Poly, compositions, multinomial, poly_derivative, poly_eval, poly_mul_x, poly_shift
from umbralz.errors import NotInvertible, TruncationExhausted
from umbralz.powerseries import (
    EgfSeries,
    ps_add,
    ps_const,
    ps_derivative,
    ps_exp_linear,
    ps_inv,
    ps_mul,
    ps_scale,
    ps_t_power,
)
from umbralz.umbral import (
    AppellFamily,
    apply,
    appell_poly,
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

EULER = [F(1), F(-1, 2), F(0), F(1, 4), F(0), F(-1, 2), F(0), F(17, 8)]


def euler_g(T):
    return EgfSeries([1] + [F(1, 2)] * T)


def x(n):
    return Poly.monomial(n)


@pytest.fixture
def euler_family():
    return AppellFamily(euler_g(14))


@pytest.fixture
def rng():
    return random.Random(2024)


def rand_rat(rng):
    return F(rng.choice([k for k in range(-9, 10) if k]), rng.choice([k for k in range(-9, 10) if k]))


def rand_poly(rng, d):
    return Poly(rand_rat(rng) for _ in range(d + 1))


def rand_series(rng, T, const=None):
    cs = [rand_rat(rng) for _ in range(T + 1)]
    if const is not None:
        cs[0] = F(const)
    return EgfSeries(cs)


class TestPair:
    def test_kronecker(self):
        for k in range(7):
            for n in range(7):
                assert pair(ps_t_power(k, 6), x(n)) == (factorial(n) if n == k else 0)

    def test_exp_evaluates(self):
        assert pair(ps_exp_linear(2, 3), x(3)) == 8

    def test_euler_functional(self):
        assert pair(ps_inv(euler_g(3)), x(3)) == F(1, 4)

    def test_truncation_guard(self):
        with pytest.raises(TruncationExhausted):
            pair(ps_t_power(0, 2), x(3))
        assert pair(ps_t_power(0, 0), Poly()) == 0

    def test_bilinear(self, rng):
        for _ in range(30):
            f, g = rand_series(rng, 6), rand_series(rng, 6)
            p, q = rand_poly(rng, 6), rand_poly(rng, 4)
            a, b = rand_rat(rng), rand_rat(rng)
            assert pair(ps_add(ps_scale(f, a), ps_scale(g, b)), p) == a * pair(f, p) + b * pair(g, p)
            assert pair(f, p * a + q * b) == a * pair(f, p) + b * pair(f, q)


class TestApply:
    def test_derivative(self):
        assert apply(ps_t_power(1, 3), x(3)) == Poly([0, 0, 3])

    def test_shift(self, rng):
        for _ in range(10):
            p, y = rand_poly(rng, 5), rand_rat(rng)
            assert apply(ps_exp_linear(y, 5), p) == poly_shift(p, y)

    def test_euler_operator(self):
        assert apply(ps_inv(euler_g(2)), x(2)) == Poly([0, -1, 1])

    def test_identity(self, rng):
        p = rand_poly(rng, 6)
        assert apply(ps_const(1, 6), p) == p


def test_adjunction(rng):
    for _ in range(100):
        T = rng.randint(0, 8)
        f, g, p = rand_series(rng, T), rand_series(rng, T), rand_poly(rng, rng.randint(0, T))
        lhs = pair(ps_mul(f, g), p)
        assert lhs == pair(f, apply(g, p)) == pair(g, apply(f, p))


def test_derivative_duality(rng):
    for _ in range(100):
        T = rng.randint(1, 9)
        f, p = rand_series(rng, T), rand_poly(rng, rng.randint(0, T - 1))
        assert pair(f, poly_mul_x(p)) == pair(ps_derivative(f), p)


def test_difference_functional(rng):
    for _ in range(50):
        p, y = rand_poly(rng, 6), rand_rat(rng)
        f = ps_add(ps_exp_linear(y, 6), ps_const(-1, 6))
        assert pair(f, p) == poly_eval(p, y) - poly_eval(p, 0)


@pytest.mark.parametrize("m", [1, 2, 3])
def test_multinomial_pairing(rng, m):
    for _ in range(20):
        fs = [rand_series(rng, 8) for _ in range(m)]
        prod = fs[0]
        for f in fs[1:]:
            prod = ps_mul(prod, f)
        for n in range(9):
            brute = F(0)
            for ks in compositions(n, m):
                term = F(multinomial(n, ks))
                for f, k in zip(fs, ks):
                    term *= f.coeffs[k]
                brute += term
            assert pair(prod, x(n)) == brute


class TestReconstruction:
    def test_series_from_euler_numbers(self):
        assert reconstruct_series(EULER[:6]) == ps_inv(euler_g(5))

    def test_series_from_derivatives_at_zero(self):
        p = Poly([3, F(-1, 2), 0, 7])
        values = [poly_eval(poly_derivative(p, k), 0) for k in range(4)]
        s = reconstruct_series(values)
        for k in range(4):
            assert pair(s, x(k)) == values[k] == pair(ps_t_power(k, 3), p)

    def test_trivial(self):
        assert reconstruct_series([1, 0, 0]) == ps_const(1, 2)

    def test_poly_round_trip(self, rng):
        for _ in range(30):
            p = rand_poly(rng, rng.randint(0, 9))
            assert reconstruct_poly(p) == p


class TestAppell:
    def test_euler_members(self, euler_family):
        assert appell_poly(euler_family, 0) == Poly([1])
        assert appell_poly(euler_family, 2) == Poly([0, -1, 1])
        assert appell_poly(euler_family, 3) == Poly([F(1, 4), 0, F(-3, 2), 1])

    def test_trivial_family(self):
        fam = AppellFamily(ps_const(1, 6))
        for n in range(7):
            assert fam.poly(n) == x(n)
            if n < 6:
                assert appell_step(fam, n) == x(n + 1)

    def test_step_examples(self, euler_family):
        assert euler_family.log_derivative().coeffs[0] == F(1, 2)
        assert appell_step(euler_family, 0) == Poly([F(-1, 2), 1])
        assert appell_step(euler_family, 1) == Poly([0, -1, 1])

    def test_step_agrees_with_poly(self, euler_family):
        for n in range(13):
            assert appell_step(euler_family, n) == appell_poly(euler_family, n + 1)

    def test_lowering_and_monic(self, euler_family, rng):
        fams = [euler_family] + [AppellFamily(rand_series(rng, 10, const=1)) for _ in range(5)]
        t = ps_t_power(1, 10)
        for fam in fams:
            for n in range(1, 11):
                s = fam.poly(n)
                assert s.degree == n and s.leading() == 1
                assert apply(t, s) == fam.poly(n - 1) * n

    def test_orthogonality(self, euler_family, rng):
        assert orthogonality_defects(euler_family, 10) == []
        g = rand_series(rng, 8, const=F(3, 2))  # non-monic family still orthogonal
        assert orthogonality_defects(AppellFamily(g), 8) == []

    @pytest.mark.parametrize("y", [F(1, 3), F(-7, 2), F(5)])
    def test_appell_identity(self, euler_family, y):
        for n in range(11):
            rhs = Poly()
            for k in range(n + 1):
                rhs = rhs + euler_family.poly(k) * (comb(n, k) * y ** (n - k))
            assert poly_shift(euler_family.poly(n), y) == rhs

    def test_errors(self):
        with pytest.raises(NotInvertible):
            AppellFamily(ps_t_power(1, 3))
        with pytest.raises(TruncationExhausted):
            AppellFamily(euler_g(3)).poly(4)

    def test_memo_is_transparent_under_threads(self):
        fam = AppellFamily(euler_g(12))
        results = [None] * 8

        def work(i):
            results[i] = [fam.poly(n) for n in range(12, -1, -1)]

        threads = [threading.Thread(target=work, args=(i,)) for i in range(8)]
        for th in threads:
            th.start()
        for th in threads:
            th.join()
        assert all(r == results[0] for r in results)
        assert results[0][-3] == Poly([0, -1, 1])


class TestExpansions:
    def test_x_squared_in_euler_basis(self, euler_family):
        coords = expand_in_appell(x(2), euler_family)
        assert coords == [F(1, 2), 1, 1]
        assert resum_appell(coords, euler_family) == x(2)

    def test_unit_vectors(self, euler_family):
        for n in range(6):
            coords = expand_in_appell(euler_family.poly(n), euler_family)
            assert coords == [1 if k == n else 0 for k in range(n + 1)]
        assert expand_in_appell(Poly([1]), euler_family) == [1]

    def test_poly_round_trip(self, rng):
        for _ in range(30):
            fam = AppellFamily(rand_series(rng, 9, const=1))
            p = rand_poly(rng, rng.randint(0, 9))
            assert resum_appell(expand_in_appell(p, fam), fam) == p

    def test_functional_examples(self, euler_family):
        coords = expand_functional(euler_family.g_inv, euler_family)
        assert coords[0] == 1
        assert resum_functional(coords, euler_family) == euler_family.g_inv
        assert expand_functional(euler_family.g, euler_family) == [1] + [0] * 14
        trivial = AppellFamily(ps_const(1, 4))
        assert expand_functional(ps_t_power(1, 4), trivial) == [0, 1, 0, 0, 0]

    def test_functional_round_trip(self, rng):
        for _ in range(30):
            fam = AppellFamily(rand_series(rng, 7, const=rand_rat(rng)))
            h = rand_series(rng, 7)
            assert resum_functional(expand_functional(h, fam), fam) == h


class TestGenerating:
    def test_euler_at_zero(self, euler_family):
        assert generating_check(euler_family, 0, 5)
        gen = ps_mul(euler_family.g_inv.truncate(5), ps_exp_linear(0, 5))
        assert list(gen.coeffs) == EULER[:6]

    def test_euler_at_one(self, euler_family):
        assert generating_check(euler_family, 1, 4)
        # E_k(1) = 2 delta_{0k} - E_k
        assert [poly_eval(euler_family.poly(k), 1) for k in range(5)] == [
            (2 if k == 0 else 0) - EULER[k] for k in range(5)
        ]

    def test_trivial_family(self):
        fam = AppellFamily(ps_const(1, 6))
        for y in (F(2), F(-1, 3)):
            assert generating_check(fam, y, 6)
