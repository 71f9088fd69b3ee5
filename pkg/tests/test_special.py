from fractions import Fraction
from math import comb

import pytest

from xeric.coeffring import ZPolynomial, zmono
from xeric.diffop import apply
from xeric.errors import CharacteristicTwo, NonPositiveOrder
from xeric.fuchs import KernelMonomial, is_xeric
from xeric.series import XSeries, derive, project, series_frobenius, series_invert, substitute_neg_x
from xeric.special import (
    exp_tilde,
    exp_xeric,
    exp_xeric_from_tilde,
    g_list,
    g_tower,
    h_functional_defect,
    h_polynomial,
    h_section_coefficients,
    period_coefficient,
    poly_eval_series,
    pythagoras_defect,
    sigma,
    sin_operator,
    sinh_operator,
    trig,
    trig_constant,
    verify_trig_identity,
)


def X(p, d=1, *z, c=1):
    return XSeries.monomial(p, d, zmono(*z), c)


def h_oracle(p):
    """H(t) expanded over Q with binomials, then reduced mod p."""
    poly = [Fraction(1)]
    for k in range(1, p):
        factor = [Fraction(comb(k, j)) * Fraction(-1, k) ** j for j in range(k + 1)]
        out = [Fraction(0)] * (len(poly) + len(factor) - 1)
        for i, a in enumerate(poly):
            for j, b in enumerate(factor):
                out[i + j] += a * b
        poly = out
    return [c.numerator * pow(c.denominator, -1, p) % p for c in poly]


def test_sigma_examples():
    x = XSeries.x(3)
    assert sigma(x, 10) == (X(3) + X(3, 3) + X(3, 9)).with_prec(10)
    s = sigma(x, 27)
    assert (s - series_frobenius(s).truncate(27)) == x.with_prec(27)
    assert sigma(XSeries.zero(3), 5).is_zero()
    with pytest.raises(NonPositiveOrder):
        sigma(XSeries.one(3), 5)


def test_g_tower_examples():
    assert g_tower(0, 3, 10) == sigma(XSeries.x(3), 10)
    assert g_tower(1, 3, 27) == (X(3, 3, 1) + X(3, 9, 1) + X(3, 9, 3)).with_prec(27)
    assert (g_tower(1, 3, 40) - X(3, 3, 1)).valuation >= 9


@pytest.mark.parametrize("p", [2, 3, 5])
def test_g_tower_identity(p):
    prec = 60
    g = g_list(3, p, prec)
    for i in range(3):
        z = X(p, 0, *([0] * i + [1]))
        lhs = g[i + 1] - series_frobenius(g[i + 1]).truncate(prec)
        assert lhs == (series_frobenius(g[i]) * z).truncate(prec)
        assert g_tower(i + 1, p, prec) == g[i + 1]


def test_h_polynomial_examples():
    assert h_polynomial(2) == [1, 1]
    assert h_polynomial(3) == [1, 1, 2, 2]
    for p in (2, 3, 5, 7, 11, 13):
        h = h_polynomial(p)
        assert h[0] == 1
        assert len(h) - 1 == p * (p - 1) // 2
        assert h == h_oracle(p)


def test_h_sections():
    a = h_section_coefficients(3)
    assert a[2] == [2]
    assert a[0] == [1, 2]
    assert h_section_coefficients(2)[1] == [1]
    for p in (5, 7, 11, 13):
        assert h_section_coefficients(p)[p - 1] == [p - 1]
        assert not any(h_functional_defect(p))


def test_exp_tilde_examples():
    et = exp_tilde(3, 30)
    assert et.factors[0].agrees(XSeries.from_list(3, [1, 1, 2]), 4)
    assert et.coefficient(2) == ZPolynomial.constant(3, 2)
    assert et.coefficient(8) == ZPolynomial.monomial(3, (2,))


@pytest.mark.parametrize("p", [2, 3, 5])
def test_exp_tilde_solves(p):
    et = exp_tilde(p, 80)
    assert (derive(et.product) - et.product).vanishes_mod(79)
    for k in range(len(et.factors)):
        assert project(et.product, k) == et.partial_product(k)


def test_period_coefficients():
    assert period_coefficient(1, 3) == ZPolynomial.constant(3, -1)
    assert period_coefficient(2, 3) == ZPolynomial.monomial(3, (2,))
    assert period_coefficient(3, 2) == ZPolynomial.monomial(2, (3, 1))


def test_exp_xeric():
    y = exp_xeric(3, 40)
    assert derive(y).agrees(y, 39)
    km = KernelMonomial(0, 0, ())
    assert is_xeric(y, [km], km)
    for p in (2, 3, 5):
        assert exp_xeric(p, 30) == exp_xeric_from_tilde(p, 30)


def test_exp_ratio_is_a_constant():
    for p in (2, 3, 5):
        et = exp_tilde(p, 40).product
        y = exp_xeric(p, 40)
        ratio = et * series_invert(y, 40)
        assert derive(ratio).vanishes_mod(39)
        assert all(d % p == 0 and all(e % p == 0 for e in m) for d, m in ratio.terms)


def test_sin_and_cos_displays():
    s = trig("sin", 3, 12)
    expected = (X(3) + X(3, 3, 1) + X(3, 5, 1) + X(3, 7, 2) + X(3, 7, 1) + X(3, 9, 3, 1)
                + X(3, 11, 3, 1) + X(3, 11, 1, c=2))
    assert s == expected.with_prec(12)
    c = trig("cos", 3, 11)
    expected = (XSeries.one(3) + X(3, 2) + X(3, 4, 1, c=2) + X(3, 6, 2) + X(3, 6, 1, c=2)
                + X(3, 8, 2) + X(3, 8, 1, c=2) + X(3, 8, c=2) + X(3, 10, 3, 1, c=2) + X(3, 10, 1))
    assert c == expected.with_prec(11)


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_trig_equations(p):
    for fn, L in (("sin", sin_operator(p)), ("cos", sin_operator(p)),
                  ("sinh", sinh_operator(p)), ("cosh", sinh_operator(p))):
        assert apply(L, trig(fn, p, 30)).vanishes_mod(29)


def test_eve_odd():
    for p in (3, 5):
        y = exp_xeric(p, 30)
        eve, odd = trig("eve", p, 30), trig("odd", p, 30)
        assert eve + odd == y
        assert substitute_neg_x(eve) == eve
        assert substitute_neg_x(odd) == -odd
    with pytest.raises(CharacteristicTwo):
        trig("eve", 2, 10)
    with pytest.raises(ValueError):
        trig("tan", 3, 10)


def test_trig_identity():
    for p in (3, 5):
        assert verify_trig_identity(p, 30).vanishes_mod(28)
    K, inv = trig_constant(3, 30)
    assert K.agrees(XSeries.one(3), 3)
    assert K.agrees(inv, 28)
    with pytest.raises(CharacteristicTwo):
        verify_trig_identity(2, 10)


def test_pythagoras_fails():
    assert not pythagoras_defect(3, 12).is_zero()


def test_poly_eval():
    g = XSeries.x(5)
    assert poly_eval_series([1, 2, 3], g) == XSeries.from_list(5, [1, 2, 3])
