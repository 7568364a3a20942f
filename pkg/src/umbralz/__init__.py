"""Exact umbral calculus over Q and the fermionic p-adic integral on Z_p."""
from .core import BigRat, Poly, format_rational, parse_rational, poly_derivative, poly_eval, poly_mul_x, poly_shift
from .euler import euler_numbers, euler_order_r, euler_poly, euler_poly_order_r
from .fermionic import convergence_report, integral, integral_order_r, integral_shifted, partial_sum
from .padic import PadicNum, padic_from_rational, padic_sub, padic_valuation
from .powerseries import EgfSeries, ps_comp_inverse, ps_compose, ps_exp_linear, ps_inv, ps_mul
from .umbral import AppellFamily, apply, pair

__version__ = "0.1.0"
