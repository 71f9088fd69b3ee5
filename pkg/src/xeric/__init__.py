"""
Xeric solutions of linear differential equations in positive characteristic.

Series live in F_p(z_1, z_2, ...)((x)) with the derivation x' = 1,
z_1' = 1/x and z_(i+1)' = 1/(x z_1 ... z_i), which makes every element
integrable.  The main entry points:

    >>> from xeric import exp_xeric
    >>> print(exp_xeric(3, 5).to_text())
    1 + x + 2*x^2 + 2*z1*x^3 + (2*z1 + 1)*x^4 + O(x^5)
"""

from .coeffring import GF, ZPolynomial, sp_decompose, w_monomial
from .curvature import (
    cartier_check,
    curvature_sequence,
    fundamental_matrix,
    lambda_coefficient,
    pk_curvature_order1,
    symbolic_am,
)
from .decomp import decompose, shifted_exp_solution, solve_v
from .diffop import DiffOperator, apply, companion_matrix, indicial, normalize_shift, skew_right_divide
from .errors import XericError
from .fuchs import is_xeric, kernel_basis, solve_xeric, xericize
from .series import (
    INF,
    XSeries,
    derive,
    primitive,
    project,
    section,
    series_frobenius,
    series_invert,
    substitute_neg_x,
    w_monomial_derivative,
)
from .special import exp_tilde, exp_xeric, g_tower, h_polynomial, sigma, trig, verify_trig_identity

__version__ = "0.1.0"
