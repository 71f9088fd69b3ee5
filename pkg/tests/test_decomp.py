import random

import pytest

from xeric.coeffring import sp_decompose, zmono
from xeric.curvature import pk_curvature_order1
from xeric.decomp import (
    build_h,
    decompose,
    level_operator_coefficient,
    shifted_exp_solution,
    solve_v,
    sp_membership,
)
from xeric.diffop import DiffOperator, apply
from xeric.errors import IrregularSingularity, NotInSp, UnsupportedExponent, XericError
from xeric.series import (
    XSeries,
    derive,
    project,
    random_series,
    series_frobenius,
    series_invert,
    w_monomial_derivative,
)
from xeric.special import exp_tilde, h_polynomial, poly_eval_series, sigma

P = 3


def const(p, c):
    return XSeries.monomial(p, 0, (), c)


def test_solve_v_examples():
    v = solve_v(const(P, -1), 0, 30)
    assert v.agrees(sigma(XSeries.x(P), 31).shift(-1), 30)
    assert solve_v(XSeries.zero(P), 0, 20).is_zero()


@pytest.mark.parametrize("p", [2, 3, 5])
def test_solve_v_kills_curvature(p):
    rng = random.Random(p)
    for _ in range(5):
        a = random_series(p, rng, nvars=0, deg=(0, 6), nterms=3)
        v = solve_v(a, 0, 40)
        b = level_operator_coefficient(a, v, 0)
        assert pk_curvature_order1(b.truncate(30 + p), 1, 30).vanishes_mod(30)


def test_build_h_examples():
    b = level_operator_coefficient(const(P, -1), solve_v(const(P, -1), 0, 30), 0)
    h0 = build_h(b, 0, 30)
    assert h0.agrees(XSeries.from_list(P, [1, 1, 2]), 4)
    assert h0.agrees(poly_eval_series(h_polynomial(P), sigma(XSeries.x(P), 30)), 30)
    for i in range(3):
        assert build_h(XSeries.zero(P), i, 20) == XSeries.one(P).with_prec(20)


def test_decompose_level_one():
    D = DiffOperator.d(P)
    r = decompose(D - 1, 1, 30)
    et = exp_tilde(P, 30)
    assert r.levels[0].h == poly_eval_series(h_polynomial(P), sigma(XSeries.x(P), 30))
    ratio = r.levels[1].h * series_invert(et.factors[1], 30)
    assert derive(ratio).vanishes_mod(29)
    assert r.residual_order >= 2


def test_decompose_level_two():
    D = DiffOperator.d(P)
    r = decompose(D - 1, 2, 30)
    assert r.residual_order >= P**2 - 1
    assert [lv.i for lv in r.levels] == [0, 1, 2]
    for lv in r.levels[1:]:
        assert project(lv.h, lv.i - 1) == XSeries.one(P).with_prec(30)
        assert sp_membership(lv.h - 1, lv.i)
    h1 = r.levels[1].h - 1
    for d, m in h1.terms:
        _, b = sp_decompose(d, m, P)
        assert len(b) >= 1 and any(b)
    assert r.product == r.partial_product(2)
    assert r.factors() == [lv.h for lv in r.levels]


def test_decompose_trivial():
    r = decompose(DiffOperator.d(P), 3, 30)
    assert all(lv.h == XSeries.one(P).with_prec(30) for lv in r.levels)
    assert r.residual.is_zero()


def test_decompose_rational_solution():
    x = XSeries.x(P)
    D = DiffOperator.d(P)
    a = series_invert(1 + x, 60).scale(-2)
    r = decompose(D + a, 0, 30)
    assert r.residual_order >= P - 1
    # b = (1 + x)^2 has zero p-curvature, so one level already solves exactly
    assert r.residual.vanishes_mod(30)
    # any solution is (1 + x)^2 times a constant; here it is (1 + x)^-1
    ratio = r.product * series_invert((1 + x) ** 2, 30)
    assert derive(ratio).vanishes_mod(29)


@pytest.mark.parametrize("p, levels, order", [(2, 2, 7), (3, 2, 26), (5, 1, 24)])
def test_residual_orders(p, levels, order):
    r = decompose(DiffOperator.d(p) - 1, levels, 40)
    assert r.residual_order >= order


def test_decompose_z_bearing_coefficient():
    # a = -(1 + x^3 z1): the coefficient lies in S_p at level 1
    a = -(XSeries.one(P) + XSeries.monomial(P, 3, zmono(1)))
    r = decompose(DiffOperator(P, [a, 1]), 2, 30)
    assert r.residual_order >= P**2 - 1
    assert [lv.i for lv in r.levels] == [0, 1, 2]


def test_decompose_errors():
    D = DiffOperator.d(P)
    x = XSeries.x(P)
    with pytest.raises(IrregularSingularity):
        decompose(D - XSeries.monomial(P, -2), 1, 20)
    with pytest.raises(UnsupportedExponent):
        decompose(D - XSeries.monomial(P, -1), 1, 20)
    with pytest.raises(NotInSp):
        decompose(D - XSeries.monomial(P, 1, zmono(1)), 1, 20)
    with pytest.raises(XericError):
        decompose(D * D - x, 1, 20)
    with pytest.raises(ValueError):
        decompose(D - 1, -1, 20)


def test_sp_membership():
    assert sp_membership(XSeries.monomial(P, 9, zmono(3, 1)), 2)
    assert not sp_membership(XSeries.monomial(P, 9, zmono(3, 1)), 3)
    assert not sp_membership(XSeries.monomial(P, 2, zmono(1)))
    assert sp_membership(XSeries.from_list(P, [0, 1, 1]))


def test_shifted_exp_examples():
    y = shifted_exp_solution(XSeries.one(P), 0, 40)
    assert (derive(y) + XSeries.monomial(P, 2) * y).vanishes_mod(39)
    assert project(y, 0) == XSeries.one(P).with_prec(40)
    assert shifted_exp_solution(XSeries.zero(P), 1, 20) == XSeries.one(P).with_prec(20)
    with pytest.raises(NotInSp):
        shifted_exp_solution(XSeries.monomial(P, -1), 0, 20)


@pytest.mark.parametrize("p", [2, 3])
def test_shifted_exp_random(p):
    rng = random.Random(11 + p)
    for _ in range(5):
        v = random_series(p, rng, nvars=0, deg=(0, 4), nterms=3)
        y = shifted_exp_solution(v, 1, 60)
        V = series_frobenius(v) * w_monomial_derivative(2, p)
        assert (derive(y) + V * y).vanishes_mod(59)


def test_apply_matches_residual():
    D = DiffOperator.d(P)
    r = decompose(D - 1, 1, 30)
    # the stored residual comes from the working precision, one degree more
    assert apply(D - 1, r.product).agrees(r.residual, 29)
    assert r.residual.prec == 30
