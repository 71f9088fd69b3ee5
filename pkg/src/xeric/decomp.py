"""
Product decomposition y = h_0 h_1 h_2 ... of the solution of y' + a y = 0.

Level i deforms the current operator N_i = D + c_i (c_0 = a, c_i = V_(i-1))
into D + c_i - V_i with vanishing p^(i+1)-curvature, where V_i = v^p W_(i+1)'
and W_k = x^(p^k) w_k.  The curvature condition is the fixed point equation

    v = (-1)^(i+1) ((D + c_i - v^p W_(i+1)')^(p^i) (1) + c~),   c~^p = c_i^(p^(i+1) - 1),

solved by iteration from v = 0 (v only enters through v^p times a series of
positive order, so the iteration gains precision every step).  The truncated
exponential s_i = sum_(j < p^(i+1)) (-1)^j e~_j (D + c_i - V_i)^j (1) x^j then
solves the deformed equation and h_i = pi_(i-1)(s_i)^-1 s_i.
"""

from dataclasses import dataclass, field

from .coeffring import sp_decompose, w_monomial, zmono_mul, zmono_pow
from .diffop import DiffOperator, apply, monic
from .errors import (
    InsufficientPrecision,
    IrregularSingularity,
    NonConvergence,
    NotInSp,
    UnsupportedExponent,
    XericError,
)
from .series import (
    INF,
    XSeries,
    derive,
    derive_n,
    project,
    series_frobenius,
    series_frobenius_root,
    series_invert,
    substitute_neg_x,
    w_monomial_derivative,
)
from .special import exp_tilde

GUARD = 2


def _connection_power(b, n, prec):
    """(D + b)^n (1) modulo x^prec."""
    cur = XSeries.one(b.p)
    for _ in range(n):
        cur = (derive(cur) + b * cur).truncate(prec)
    return cur


def _connection_powers(b, n, prec):
    """[(D + b)^j (1) for j < n] modulo x^prec."""
    out = [XSeries.one(b.p)]
    cur = out[0]
    for _ in range(1, n):
        cur = (derive(cur) + b * cur).truncate(prec)
        out.append(cur)
    return out


def solve_v(a_eff, i, prec, max_iter=None):
    """The v of level i, modulo x^prec (or less if a_eff is not known well enough)."""
    p = a_eff.p
    wd = w_monomial_derivative(i + 1, p)
    top = p ** (i + 1) - 1
    d = derive_n(a_eff, top)
    if d.prec == INF:
        d = d.truncate(p * prec)
    a_tilde = series_frobenius_root(d)
    sign = -1 if i % 2 == 0 else 1
    v = XSeries.zero(p)
    cap = max_iter if max_iter is not None else 2 * prec + 2
    for _ in range(cap):
        V = (series_frobenius(v) * wd).truncate(prec + p**i)
        rhs = _connection_power(a_eff - V, p**i, prec) + a_tilde
        nxt = rhs.scale(sign).truncate(prec)
        n = min(prec, nxt.prec)
        if (nxt - v).truncate(n).is_zero():
            return nxt.truncate(n)
        v = nxt
    raise NonConvergence(f"fixed point for v at level {i} did not stabilise in {cap} steps")


def level_operator_coefficient(a_eff, v, i):
    """c_i - V_i, the coefficient of (N_i)_(<= i)."""
    return a_eff - series_frobenius(v) * w_monomial_derivative(i + 1, v.p)


def truncated_exp_solution(b, i, prec, e_tilde=None):
    """s_i = sum_(j < p^(i+1)) (-1)^j e~_j (D + b)^j (1) x^j modulo x^prec."""
    p = b.p
    n = p ** (i + 1)
    if e_tilde is None:
        e_tilde = exp_tilde(p, max(n, 2))
    powers = _connection_powers(b, n, prec)
    s = XSeries.zero(p, prec)
    for j, term in enumerate(powers):
        if j >= prec:
            break
        e = XSeries.from_zpoly(e_tilde.coefficient(j), j)
        if j % 2:
            e = -e
        s = s + (e * term).truncate(prec)
    return s


def build_h(b, i, prec, e_tilde=None):
    """h_i = pi_(i-1)(s_i)^-1 s_i (h_0 = s_0)."""
    s = truncated_exp_solution(b, i, prec, e_tilde)
    if i == 0:
        return s
    return _normalize(s, i - 1, prec)


def _normalize(s, k, prec):
    base = project(s, k)
    if base.prec > prec:
        base = base.truncate(prec)
    return (series_invert(base, prec) * s).truncate(prec)


@dataclass
class Level:
    i: int
    v: XSeries
    V: XSeries
    h: XSeries


@dataclass
class DecompositionResult:
    p: int
    prec: int
    levels: list = field(default_factory=list)
    product: XSeries = None
    residual: XSeries = None

    @property
    def residual_order(self):
        return self.residual.valuation

    def factors(self):
        return [lv.h for lv in self.levels]

    def partial_product(self, k):
        out = XSeries.one(self.p).with_prec(self.prec)
        for lv in self.levels[: k + 1]:
            out = (out * lv.h).truncate(self.prec)
        return out


def _order_one_coefficient(L, work):
    """a with L = c (D + a), checked for a regular point of exponent 0."""
    if L.order != 1:
        raise XericError(f"decomposition needs an order 1 operator, got order {L.order}")
    M = monic(L, work)
    a = M.coeffs[0]
    if not a.is_zero():
        v = a.valuation
        if v < -1:
            raise IrregularSingularity(f"coefficient has a pole of order {-v}")
        if v == -1:
            rho = (-a.coeff(-1)).constant_term() if a.coeff(-1).is_constant() else None
            raise UnsupportedExponent(
                f"local exponent {rho} is not 0; substitute y -> x^-rho y first"
            )
    return a.truncate(work)


def decompose(L, levels, prec):
    """h_0, ..., h_levels and their product, a solution of L y = 0 mod x^(p^(levels+1) - 1).

    A z-bearing coefficient in S_p^(k) is handled by starting at level k and
    reading h_0..h_k off the projections of s_k.
    """
    p = L.p
    if levels < 0:
        raise ValueError("levels must be non-negative")
    work = prec + p ** (levels + 1) + GUARD
    a = _order_one_coefficient(L, work)
    k0 = a.nvars()
    et = exp_tilde(p, max(p ** (max(levels, k0) + 1), 2))
    out = DecompositionResult(p, prec)
    c = a
    start = 0
    if k0:
        for d, m in a.terms:
            if sp_decompose(d, m, p) is None:
                raise NotInSp(f"coefficient monomial x^{d} z^{m} is not in S_p")
        v = solve_v(c, k0, work)
        V = (series_frobenius(v) * w_monomial_derivative(k0 + 1, p)).truncate(work)
        s = truncated_exp_solution(c - V, k0, work, et)
        prev = XSeries.one(p).with_prec(work)
        for i in range(k0 + 1):
            cur = project(s, i)
            h = cur if i == 0 else (series_invert(prev, work) * cur).truncate(work)
            out.levels.append(Level(i, v if i == k0 else None, V if i == k0 else None, h))
            prev = cur
        c = V
        start = k0 + 1
    for i in range(start, levels + 1):
        v = solve_v(c, i, work)
        V = (series_frobenius(v) * w_monomial_derivative(i + 1, p)).truncate(work)
        h = build_h(c - V, i, work, et)
        out.levels.append(Level(i, v, V, h))
        c = V
    product = XSeries.one(p).with_prec(work)
    for lv in out.levels:
        product = (product * lv.h).truncate(work)
    out.levels = [Level(lv.i, _cut(lv.v, prec), _cut(lv.V, prec), lv.h.truncate(prec)) for lv in out.levels]
    out.product = product.truncate(prec)
    out.residual = apply(DiffOperator(p, [a, 1]), product).truncate(prec)
    return out


def _cut(f, prec):
    return None if f is None else f.truncate(prec)


def sp_membership(f, k_min=0):
    """True if every monomial of f lies in S_p with some weight on an index >= k_min (k_min > 0)."""
    for d, m in f.terms:
        dec = sp_decompose(d, m, f.p)
        if dec is None:
            return False
        _, b = dec
        if k_min > 0 and not any(b[k - 1] for k in range(k_min, len(b) + 1)):
            return False
    return True


# -- the substitution phi -------------------------------------------------------

def shifted_exp_solution(v, i, prec):
    """phi(exp~(-x)) for phi(x^(p^(k-1)) w_(k-1)) = v^(p^k) x^(p^(i+k)) w_(i+k).

    Solves (D + v^p W_(i+1)') y = 0 with pi_i(y) = 1.  A monomial of x-degree d
    maps to v^(p d) times a single monomial of x-degree p^(i+1) d.
    """
    p = v.p
    if v.is_zero():
        return XSeries.one(p).with_prec(prec)
    if v.valuation < 0:
        raise NotInSp("v must be a power series")
    step = p ** (i + 1)
    dmax = -(-prec // step)
    src = substitute_neg_x(exp_tilde(p, max(dmax, 2)).product).truncate(dmax)
    if src.prec < dmax:
        raise InsufficientPrecision("exp~ too short")
    vp = series_frobenius(v).truncate(prec)
    powers = [XSeries.one(p)]
    out = XSeries.zero(p, prec)
    for (d, m), c in sorted(src.terms.items()):
        dec = sp_decompose(d, m, p)
        if dec is None:
            raise NotInSp(f"x^{d} z^{m} is not in S_p")
        a0, b = dec
        z = ()
        for k, e in enumerate([a0] + b):
            if e:
                z = zmono_mul(z, zmono_pow(w_monomial(i + k + 1, p), e))
        while len(powers) <= d:
            powers.append((powers[-1] * vp).truncate(prec))
        mono = XSeries.monomial(p, step * d, z, c)
        out = out + (mono * powers[d]).truncate(prec)
    return out
