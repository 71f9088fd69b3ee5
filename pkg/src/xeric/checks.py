"""
Self-checks behind ``xeric verify``.

Each suite is a list of named checks; a check returns None on success or a
short failure description.  Checks are deterministic (fixed seeds).
"""

import random

from .coeffring import ZPolynomial
from .curvature import (
    cartier_check,
    curvature_order1_recursive,
    curvature_support,
    lambda_coefficient,
    partitions_weighted,
    pk_curvature_order1,
    symbolic_am,
)
from .decomp import decompose, sp_membership
from .diffop import DiffOperator
from .series import (
    XSeries,
    derive,
    derive_n,
    primitive,
    project,
    random_series,
    section,
    section_classes,
    series_invert,
    w_monomial_derivative,
)
from .special import (
    exp_tilde,
    exp_xeric,
    exp_xeric_from_tilde,
    h_functional_defect,
    h_section_coefficients,
    h_polynomial,
    period_coefficient,
    poly_eval_series,
    pythagoras_defect,
    sigma,
    verify_trig_identity,
)

SUITES = ("derivation", "special", "curvature", "decomp")


def _expect(cond, message):
    return None if cond else message


# -- derivation -----------------------------------------------------------------

def check_leibniz(p, prec, n=50, seed=1):
    rng = random.Random(seed)
    for _ in range(n):
        a = random_series(p, rng, prec=prec)
        b = random_series(p, rng, prec=prec)
        lhs = derive(a * b)
        rhs = derive(a) * b + a * derive(b)
        m = min(lhs.prec, rhs.prec)
        if not lhs.agrees(rhs, m):
            return f"Leibniz fails for a={a}, b={b}"
    return None


def check_primitive(p, prec, n=50, seed=2):
    rng = random.Random(seed)
    for _ in range(n):
        f = random_series(p, rng, zexp=(-1, 3))
        if derive(primitive(f)) != f:
            return f"derive(primitive(f)) != f for f={f}"
    return None


def check_section_partition(p, prec, n=20, seed=3):
    rng = random.Random(seed)
    for _ in range(n):
        f = random_series(p, rng, nvars=3, nterms=10)
        total = XSeries.zero(p)
        for j, gamma in sorted(section_classes(f)):
            total = total + section(f, j, gamma)
        if total != f:
            return f"sections do not add up for f={f}"
    return None


def zvar(p, k):
    return XSeries.monomial(p, 0, (0,) * (k - 1) + (1,))


def check_derivation_rules(p, prec, kmax=2):
    for k in range(kmax + 1):
        m = p ** (k + 1)
        # (i) on a few monomials in x, z_1..z_k
        for d, z in ((1, ()), (-3, tuple(range(1, k + 1))), (p + 2, tuple([-1] * k))):
            if not derive_n(XSeries.monomial(p, d, z), m).is_zero():
                return f"(i) fails for x^{d} z^{z}, k={k}"
        # (ii)
        expected = XSeries.monomial(p, -m, tuple(-(p ** (k - i)) for i in range(k)), (-1) ** (k + 1))
        if derive_n(zvar(p, k + 1), m) != expected:
            return f"(ii) fails at k={k}"
        # (iii)/(iv)
        if derive_n(w_monomial_derivative(k + 1, p), m - 1) != (-1) ** (k + 1):
            return f"(iii)/(iv) fails at k={k}"
    return None


def check_exp_periodicity(p, prec, kmax=2):
    for k in range(kmax + 1):
        lhs = derive_n(w_monomial_derivative(k + 1, p), p ** (k + 1) - p**k)
        if lhs != -w_monomial_derivative(k, p):
            return f"periodicity fails at k={k}"
    return None


# -- special --------------------------------------------------------------------

EXP3 = {
    0: {(): 1}, 1: {(): 1}, 2: {(): 2}, 3: {(1,): 2}, 4: {(1,): 2, (): 1}, 5: {(1,): 1},
    6: {(2,): 2}, 7: {(2,): 2, (1,): 2, (): 1}, 8: {(2,): 1, (): 2}, 9: {(3, 1): 1, (1,): 2},
    10: {(3, 1): 1, (2,): 2, (1,): 1, (): 2},
}


def check_exp_golden(p, prec):
    if p != 3:
        return None
    y = exp_xeric(3, 11)
    for d, poly in EXP3.items():
        if y.coeff(d) != ZPolynomial(3, poly):
            return f"exp_3 coefficient of x^{d} is {y.coeff(d)}"
    return None


def check_exp_tilde(p, prec):
    et = exp_tilde(p, prec)
    r = derive(et.product) - et.product
    if not r.vanishes_mod(prec - 1):
        return "derive(exp~) != exp~"
    n = 1
    while p**n - 1 < prec:
        if et.coefficient(p**n - 1) != period_coefficient(n, p):
            return f"period coefficient wrong at n={n}"
        n += 1
    return None


def check_h(p, prec):
    h_section_coefficients(p)
    if any(h_functional_defect(p)):
        return "(1 - t^(p-1)) H' != H"
    return None


def check_exp_paths(p, prec):
    n = min(prec, 40)
    a, b = exp_xeric(p, n), exp_xeric_from_tilde(p, n)
    return _expect(a.agrees(b, min(a.prec, b.prec)), "solver and xericized exp~ differ")


def check_trig(p, prec):
    if p == 2:
        return None
    n = min(prec, 30)
    r = verify_trig_identity(p, n)
    if not r.vanishes_mod(n - 2):
        return f"exp - cosh - sinh/(1 - sigma^p) = {r}"
    if p == 3 and pythagoras_defect(3, 12).is_zero():
        return "sin^2 + cos^2 - 1 vanished"
    return None


# -- curvature ----------------------------------------------------------------------

def check_pcurve_formula(p, prec, n=10, seed=4):
    rng = random.Random(seed)
    for _ in range(n):
        a = random_series(p, rng, nterms=4, nvars=2, deg=(0, 6), zexp=(0, 2))
        for k in (1, 2):
            if p**k > 25:
                continue
            fast = pk_curvature_order1(a, k, 12)
            slow = curvature_order1_recursive(a, p**k, 12)
            if not fast.agrees(slow, 12):
                return f"curvature formula fails for a={a}, k={k}"
    return None


def check_lambda(p, prec, mmax=12):
    for m in range(1, mmax + 1):
        sa = symbolic_am(m, p)
        for alpha in partitions_weighted(m):
            if lambda_coefficient(alpha, m, p) != sa.get(alpha, 0):
                return f"lambda mismatch at {alpha}, m={m}"
    k = 1
    while p**k <= 20:
        m = p**k
        if set(symbolic_am(m, p)) != curvature_support(k, p):
            return f"support of a_{m} is not the predicted set"
        k += 1
    return None


def check_cartier(p, prec):
    if p == 2:
        return None
    x = XSeries.x(p)
    D = DiffOperator.d(p)
    n = 20
    for m in (1, 2, 4):
        a = series_invert(1 + x, n + p + 5).scale(-m)
        rec = cartier_check(D + a, 0, n)
        if not (rec.curvature_zero and rec.division_remainder_zero):
            return f"b=(1+x)^{m}: curvature/remainder not both zero"
    rec = cartier_check(D - 1, 0, n)
    if rec.curvature_zero or rec.division_remainder_zero:
        return "D - 1 reported zero curvature"
    return None


# -- decomposition --------------------------------------------------------------------

def check_decomposition(p, prec):
    D = DiffOperator.d(p)
    levels = 2 if p <= 3 else 1
    n = min(prec, 30)
    r = decompose(D - 1, levels, n)
    h0 = poly_eval_series(h_polynomial(p), sigma(XSeries.x(p), n))
    if not r.levels[0].h.agrees(h0, n):
        return "h_0 != H(sigma(x))"
    if r.residual_order < min(n, p**levels - 1):
        return f"residual order {r.residual_order} too small"
    et = exp_tilde(p, n)
    for lv in r.levels:
        if lv.i and project(lv.h, lv.i - 1) != XSeries.one(p).with_prec(n):
            return f"pi_(i-1)(h_{lv.i}) != 1"
        if not sp_membership(lv.h - 1, lv.i):
            return f"h_{lv.i} - 1 not in S_p"
        ratio = r.partial_product(lv.i) * series_invert(project(et.product, lv.i), n)
        if not derive(ratio).vanishes_mod(n - 1):
            return f"partial product {lv.i} is not a C_p multiple of pi_{lv.i}(exp~)"
    return None


SUITE_CHECKS = {
    "derivation": [
        ("leibniz", check_leibniz),
        ("primitive", check_primitive),
        ("section-partition", check_section_partition),
        ("derivation-rules", check_derivation_rules),
        ("exp-periodicity", check_exp_periodicity),
    ],
    "special": [
        ("exp-golden", check_exp_golden),
        ("exp-tilde", check_exp_tilde),
        ("h-polynomial", check_h),
        ("exp-paths", check_exp_paths),
        ("trig-identity", check_trig),
    ],
    "curvature": [
        ("pcurve-formula", check_pcurve_formula),
        ("lambda-oracle", check_lambda),
        ("cartier", check_cartier),
    ],
    "decomp": [
        ("decomposition", check_decomposition),
    ],
}


def run_suite(name, p, prec):
    """[(suite, check, failure-or-None)] for one suite or ``all``."""
    names = SUITES if name == "all" else (name,)
    out = []
    for suite in names:
        for check, fn in SUITE_CHECKS[suite]:
            try:
                result = fn(p, prec)
            except Exception as exc:  # a crash counts as a failure
                result = f"{type(exc).__name__}: {exc}"
            out.append((suite, check, result))
    return out
