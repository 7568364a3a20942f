from fractions import Fraction as F
from math import comb, factorial

import pytest

from umbralz.core import Poly, poly_mul_x, poly_shift
from umbralz.errors import InternalCrossCheckFailure
from umbralz.euler import (
    EulerTable,
    euler_functional,
    euler_g,
    euler_numbers,
    euler_order_r,
    euler_order_r_routes,
    euler_poly,
    euler_poly_order_r,
    multinomial_route,
    perturbed_euler,
)
from umbralz.powerseries import ps_inv, ps_mul, ps_t_power
from umbralz.umbral import apply, pair

# Frozen from a sympy series expansion of (2/(e^t+1))^r (see tests/test_oracles.py)
E1 = [F(1), F(-1, 2), F(0), F(1, 4), F(0), F(-1, 2), F(0), F(17, 8), F(0), F(-31, 2), F(0), F(691, 4)]
E2 = [F(1), F(-1), F(1, 2), F(1, 2), F(-1), F(-1), F(17, 4), F(17, 4), F(-31), F(-31), F(691, 2)]
E3 = [F(1), F(-3, 2), F(3, 2), F(0), F(-3), F(9, 4), F(51, 4), F(-45, 2), F(-93), F(567, 2), F(2073, 2)]
E4 = [F(1), F(-2), F(3), F(-2), F(-9, 2), F(13), F(21, 2), F(-107), F(3), F(1258), F(-1107)]


def test_numbers():
    assert euler_numbers(0) == [1]
    assert euler_numbers(11) == E1
    assert all(e == 0 for e in euler_numbers(12)[2::2])


def test_numbers_match_series_inverse():
    assert euler_numbers(24) == list(ps_inv(euler_g(24)).coeffs)


def test_polys():
    assert euler_poly(0) == Poly([1])
    assert euler_poly(2) == Poly([0, -1, 1])
    assert euler_poly(3) == Poly([F(1, 4), 0, F(-3, 2), 1])
    assert euler_poly(4) == Poly([0, 1, 0, -2, 1])


@pytest.mark.parametrize("r,expected", [(2, E2), (3, E3), (4, E4)])
def test_order_r_numbers(r, expected):
    for n, e in enumerate(expected):
        value, routes = euler_order_r_routes(n, r)
        assert value == e
        assert routes == 2


def test_order_r_small_cases():
    for r in range(1, 7):
        assert euler_order_r(0, r) == 1
        assert euler_order_r(1, r) == F(-r, 2)
    assert euler_order_r(2, 2) == F(1, 2)


def test_single_route_past_cutoff():
    value, routes = euler_order_r_routes(9, 5)
    assert routes == 1
    assert value == multinomial_route(9, 5)


def test_order_r_polys():
    assert euler_poly_order_r(1, 2) == Poly([-1, 1])
    for r in range(1, 5):
        assert euler_poly_order_r(0, r) == Poly([1])
    for n in range(13):
        assert euler_poly_order_r(n, 1) == euler_poly(n)


def test_monic_rational():
    for r in range(1, 5):
        for n in range(9):
            p = euler_poly_order_r(n, r)
            assert p.degree == n and p.leading() == 1


@pytest.mark.parametrize("n", range(17))
def test_reflection(n):
    assert poly_shift(euler_poly(n), 1) + euler_poly(n) == Poly.monomial(n, 2)


def test_descent():
    def both(n):
        return poly_shift(euler_poly(n), 1) + euler_poly(n)

    for n in range(16):
        assert both(n + 1) == poly_mul_x(both(n))


def test_order_r_appell_structure():
    t = ps_t_power(1, 10)
    for r in range(1, 5):
        for n in range(1, 11):
            assert apply(t, euler_poly_order_r(n, r)) == euler_poly_order_r(n - 1, r) * n


@pytest.mark.parametrize("y", [F(1, 2), F(-3), F(5, 7)])
def test_order_r_addition(y):
    for r in range(1, 5):
        for n in range(11):
            rhs = Poly()
            for k in range(n + 1):
                rhs = rhs + euler_poly_order_r(n - k, r) * (comb(n, k) * y**k)
            assert poly_shift(euler_poly_order_r(n, r), y) == rhs


def test_order_r_orthogonality():
    for r in range(1, 5):
        gr = euler_g(8, r)
        for k in range(9):
            functional = ps_mul(gr, ps_t_power(k, 8))
            for n in range(9):
                assert pair(functional, euler_poly_order_r(n, r)) == (factorial(n) if n == k else 0)


def test_functional_power():
    assert euler_functional(2, 2).coeffs == (1, -1, F(1, 2))


def test_table():
    table = EulerTable.build(3, 1, with_polys=True)
    assert table.values == E1[:4]
    assert table.polys[2] == Poly([0, -1, 1])


def test_perturbation_is_caught_and_undone():
    with perturbed_euler(3) as bad:
        assert bad == F(-1, 4)
        assert euler_numbers(3)[3] == F(-1, 4)
        with pytest.raises(InternalCrossCheckFailure):
            euler_poly(3)
        with pytest.raises(InternalCrossCheckFailure):
            euler_order_r(3, 2)
    assert euler_numbers(3)[3] == F(1, 4)
    assert euler_poly(3) == Poly([F(1, 4), 0, F(-3, 2), 1])


def test_perturbation_of_zero_value():
    with perturbed_euler(2) as bad:
        assert bad == 1
    assert euler_numbers(2)[2] == 0
