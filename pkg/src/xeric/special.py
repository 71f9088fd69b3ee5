"""
Exponential, trigonometric and hyperbolic functions in characteristic p.

sigma(t) = t + t^p + t^(p^2) + ... solves sigma - sigma^p = t.  The tower
g_0 = sigma(x), g_(i+1) = sigma(g_i^p z_(i+1)) and the polynomial
H(t) = prod_(k=1..p-1) (1 - t/k)^k, which satisfies (1 - t^(p-1)) H' = H,
give the product solution exp~ = prod_i H((-1)^i g_i) of y' = y.
"""

from dataclasses import dataclass, field

from .coeffring import ZPolynomial, check_prime
from .diffop import DiffOperator
from .errors import CharacteristicTwo, NonPositiveOrder
from .fuchs import solve_xeric, xericize
from .series import (
    XSeries,
    section,
    series_frobenius,
    series_invert,
    substitute_neg_x,
)


def sigma(t, prec):
    """sum_k t^(p^k) modulo x^prec."""
    p = t.p
    t = t.truncate(prec)
    if t.is_zero():
        return XSeries.zero(p, prec)
    if t.valuation < 1:
        raise NonPositiveOrder(f"sigma needs a series of positive order, got order {t.valuation}")
    out = XSeries.zero(p, prec)
    term = t
    while not term.is_zero() and term.valuation < prec:
        out = out + term
        term = series_frobenius(term).truncate(prec)
    return out.with_prec(prec)


def g_tower(i, p, prec):
    """g_i modulo x^prec."""
    check_prime(p)
    g = sigma(XSeries.x(p), prec)
    for k in range(1, i + 1):
        g = sigma(series_frobenius(g) * XSeries.monomial(p, 0, (0,) * (k - 1) + (1,)), prec)
    return g


def g_list(n, p, prec):
    """[g_0, ..., g_n] modulo x^prec."""
    g = sigma(XSeries.x(p), prec)
    out = [g]
    for k in range(1, n + 1):
        g = sigma(series_frobenius(g) * XSeries.monomial(p, 0, (0,) * (k - 1) + (1,)), prec)
        out.append(g)
    return out


# -- the polynomial H ---------------------------------------------------------

def _pmul(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def h_polynomial(p):
    """Ascending coefficients of H(t) = prod_(k=1..p-1) (1 - t/k)^k over F_p."""
    check_prime(p)
    out = [1]
    for k in range(1, p):
        factor = [1, -pow(k, -1, p) % p]
        for _ in range(k):
            out = _pmul(out, factor, p)
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def h_section_coefficients(p):
    """[a_0, ..., a_(p-1)] with H(t) = sum_i a_i(t^p) t^i; each a_i as ascending coefficients in u = t^p."""
    h = h_polynomial(p)
    out = []
    for i in range(p):
        a = h[i::p] or [0]
        while len(a) > 1 and a[-1] == 0:
            a.pop()
        out.append(a)
    assert out[p - 1] == [p - 1], f"top section coefficient of H is {out[p - 1]}, expected -1"
    return out


def h_functional_defect(p):
    """Coefficients of (1 - t^(p-1)) H'(t) - H(t); all zero when H is right."""
    h = h_polynomial(p)
    dh = [(k * c) % p for k, c in enumerate(h)][1:] or [0]
    lhs = _pmul([1] + [0] * (p - 2) + [p - 1], dh, p)
    n = max(len(lhs), len(h))
    return [((lhs[k] if k < len(lhs) else 0) - (h[k] if k < len(h) else 0)) % p for k in range(n)]


def poly_eval_series(coeffs, g):
    """Horner evaluation of a polynomial with F_p coefficients at a series."""
    p = g.p
    out = XSeries.monomial(p, 0, (), coeffs[-1], g.prec)
    for c in reversed(coeffs[:-1]):
        out = out * g + c
    return out


# -- exp~ ---------------------------------------------------------------------

@dataclass
class ExpTilde:
    """prod_i H((-1)^i g_i) over the i with p^i < prec, modulo x^prec."""

    p: int
    prec: int
    factors: list = field(default_factory=list)
    product: XSeries = None

    def coefficient(self, j):
        return self.product.coeff(j)

    def partial_product(self, k):
        out = XSeries.one(self.p).with_prec(self.prec)
        for h in self.factors[: k + 1]:
            out = out * h
        return out


def exp_tilde(p, prec):
    check_prime(p)
    h = h_polynomial(p)
    n = 0
    while p ** (n + 1) < prec:
        n += 1
    factors = []
    for i, g in enumerate(g_list(n, p, prec)):
        arg = -g if i % 2 else g
        factors.append(poly_eval_series(h, arg))
    product = XSeries.one(p).with_prec(prec)
    for f in factors:
        product = product * f
    return ExpTilde(p, prec, factors, product)


def period_coefficient(n, p):
    """Closed form of the x^(p^n - 1) coefficient of exp~: (-1)^n prod_(i<n) z_i^(p^(n-i) - 1)."""
    z = tuple(p ** (n - i) - 1 for i in range(1, n))
    return ZPolynomial.monomial(p, z, (-1) ** n)


# -- xeric functions --------------------------------------------------------------

def _x(p):
    return XSeries.x(p)


def exp_operator(p):
    x = _x(p)
    return x * DiffOperator.d(p) - x


def sin_operator(p):
    x = _x(p)
    D = DiffOperator.d(p)
    return x * x * D * D + x * x


def sinh_operator(p):
    x = _x(p)
    D = DiffOperator.d(p)
    return x * x * D * D - x * x


def exp_xeric(p, prec):
    """The xeric solution of y' = y."""
    return solve_xeric(exp_operator(p), prec)[0][1]


def exp_xeric_from_tilde(p, prec):
    """Same series, obtained by xericizing exp~."""
    et = exp_tilde(p, prec)
    return xericize([et.product], exp_operator(p))[0][1]


TRIG_FUNCTIONS = ("sin", "cos", "sinh", "cosh", "eve", "odd")


def trig(fn, p, prec):
    """sin/cos: xeric basis of x^2D^2 + x^2 (rho = 1 / rho = 0); sinh/cosh likewise
    for x^2D^2 - x^2; eve/odd: (exp(x) +- exp(-x)) / 2."""
    if fn in ("sin", "cos"):
        basis = solve_xeric(sin_operator(p), prec)
        return basis.for_rho(1 if fn == "sin" else 0)
    if fn in ("sinh", "cosh"):
        basis = solve_xeric(sinh_operator(p), prec)
        return basis.for_rho(1 if fn == "sinh" else 0)
    if fn in ("eve", "odd"):
        if p == 2:
            raise CharacteristicTwo("eve/odd divide by 2")
        e = exp_xeric(p, prec)
        half = pow(2, -1, p)
        other = substitute_neg_x(e)
        return ((e + other) if fn == "eve" else (e - other)).scale(half)
    raise ValueError(f"unknown function {fn!r}; expected one of {', '.join(TRIG_FUNCTIONS)}")


def sigma_frobenius_inverse(p, prec):
    """(1 - sigma(x)^p)^-1 modulo x^prec."""
    s = sigma(_x(p), prec)
    return series_invert(1 - series_frobenius(s).truncate(prec), prec)


def verify_trig_identity(p, prec):
    """Residual of exp - cosh - (1 - sigma^p)^-1 sinh modulo x^prec."""
    if p == 2:
        raise CharacteristicTwo("the identity needs odd characteristic")
    e = exp_xeric(p, prec)
    ch = trig("cosh", p, prec)
    sh = trig("sinh", p, prec)
    return e - ch - sigma_frobenius_inverse(p, prec) * sh


def trig_constant(p, prec):
    """(K, (1 - sigma^p)^-1) with K = <exp>_(1,0) / x; the two agree."""
    e = exp_xeric(p, prec)
    k = section(e, 1).shift(-1)
    return k, sigma_frobenius_inverse(p, prec)


def pythagoras_defect(p, prec):
    """sin^2 + cos^2 - 1, which does not vanish."""
    s = trig("sin", p, prec)
    c = trig("cos", p, prec)
    return s * s + c * c - 1
