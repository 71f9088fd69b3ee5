"""
p^k-curvatures of first order systems Y' + A Y = 0.

A_0 = I and A_(j+1) = A_j' + A A_j, so that A_m = (D + A)^m (I).  For a scalar
equation y' + a y = 0 the p^k-curvature has the closed form

    a_(p^k) = (a_(p^(k-1)))^p + a^(p^k - 1) = sum_i (a^(p^i - 1))^(p^(k-i)),

and a_m expands as sum over alpha of lambda_alpha prod_j (a^(j))^alpha_j with
sum_j alpha_j (j + 1) = m.
"""

from dataclasses import dataclass

from .coeffring import binomial_mod, multinomial_mod, sp_decompose
from .diffop import DiffOperator, companion_matrix, monic, skew_right_divide
from .errors import (
    CartierMismatch,
    InsufficientPrecision,
    NotInSp,
    TooLarge,
    WeightMismatch,
)
from .series import INF, XSeries, derive, derive_n, series_frobenius
from .special import exp_tilde

SYMBOLIC_LIMIT = 20


# -- matrices of series ---------------------------------------------------------

def identity(n, p):
    one, zero = XSeries.one(p), XSeries.zero(p)
    return [[one if r == c else zero for c in range(n)] for r in range(n)]


def mat_mul(A, B):
    n, m, q = len(A), len(B), len(B[0])
    out = []
    for r in range(n):
        row = []
        for c in range(q):
            acc = None
            for k in range(m):
                if A[r][k].is_zero() and A[r][k].prec == INF:
                    continue
                t = A[r][k] * B[k][c]
                acc = t if acc is None else acc + t
            row.append(acc if acc is not None else XSeries.zero(A[0][0].p))
        out.append(row)
    return out


def mat_add(A, B):
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_derive(A):
    return [[derive(a) for a in row] for row in A]


def mat_truncate(A, n):
    return [[a.truncate(n) for a in row] for row in A]


def mat_scale_series(f, A):
    return [[f * a for a in row] for row in A]


def mat_is_zero_mod(A, n):
    return all(a.vanishes_mod(n) for row in A for a in row)


def mat_prec(A):
    return min(a.prec for row in A for a in row)


# -- curvature sequences --------------------------------------------------------------

@dataclass
class CurvatureMatrices:
    """A together with A_0 = I, A_1, ..., A_m (each reduced mod x^prec)."""

    A: list
    sequence: list
    m: int
    prec: int

    @property
    def curvature(self):
        return self.sequence[-1]

    def is_zero(self):
        return mat_is_zero_mod(self.curvature, self.prec)


def _min_valuation(A):
    vals = [a.valuation for row in A for a in row if not a.is_zero()]
    return min(vals, default=0)


def curvature_sequence(A, k, prec):
    """A_0 .. A_(p^k) modulo x^prec."""
    p = A[0][0].p
    m = p**k
    n = len(A)
    # each step loses one degree to D and possibly more to a pole of A
    loss = max(1, -_min_valuation(A))
    if mat_prec(A) != INF and mat_prec(A) - m * loss < prec:
        raise InsufficientPrecision(
            f"entries known mod x^{mat_prec(A)} do not determine the {m}-curvature mod x^{prec}"
        )
    seq = [identity(n, p)]
    cur = seq[0]
    for j in range(m):
        bound = prec + (m - j - 1) * loss
        cur = mat_truncate(mat_add(mat_derive(cur), mat_mul(A, cur)), bound)
        seq.append(cur)
    seq = [[[a.with_prec(prec) if a.prec > prec else a for a in row] for row in M] for M in seq]
    return CurvatureMatrices(A, seq, m, prec)


def apply_connection(A, vec, times=1):
    """(D + A)^times applied to a column vector of series."""
    for _ in range(times):
        vec = [derive(v) + sum_row(A[r], vec) for r, v in enumerate(vec)]
    return vec


def sum_row(row, vec):
    acc = None
    for a, v in zip(row, vec):
        t = a * v
        acc = t if acc is None else acc + t
    return acc


def curvature_order1_recursive(a, m, prec):
    """(D + a)^m (1) by the recursion a_(j+1) = a_j' + a a_j."""
    loss = max(1, -a.valuation) if not a.is_zero() else 1
    cur = XSeries.one(a.p)
    for j in range(m):
        cur = (derive(cur) + a * cur).truncate(prec + (m - j - 1) * loss)
    return cur.truncate(prec)


def pk_curvature_order1(a, k, prec):
    """a_(p^k) for y' + a y = 0 from both closed forms, which must agree."""
    p = a.p
    if prec == INF:
        raise InsufficientPrecision("the curvature is computed modulo a finite power of x")
    if a.prec != INF and a.prec < prec + p**k - 1:
        raise InsufficientPrecision(f"a needs precision {prec + p**k - 1} for the {p}^{k}-curvature")
    # derivative a^(p^i - 1) is needed mod x^ceil(prec / p^(k-i))
    derivs = []
    for i in range(k + 1):
        need = -(-prec // p ** (k - i))
        src = a.truncate(need + p**i - 1)
        derivs.append(derive_n(src, p**i - 1).truncate(need))
    recursive = derivs[0]
    for i in range(1, k + 1):
        need = -(-prec // p ** (k - i))
        recursive = (series_frobenius(recursive) + derivs[i]).truncate(need)
    summed = None
    for i, d in enumerate(derivs):
        t = d
        for _ in range(k - i):
            t = series_frobenius(t)
        t = t.truncate(prec)
        summed = t if summed is None else summed + t
    recursive = recursive.truncate(prec)
    summed = summed.truncate(prec)
    assert recursive.agrees(summed, min(recursive.prec, summed.prec)), "closed forms of the curvature disagree"
    return summed


# -- the lambda coefficients --------------------------------------------------------

@dataclass(frozen=True)
class DiffMonomial:
    """prod_j (a^(j))^alpha_j, stored with trailing zeros removed."""

    alpha: tuple

    def __post_init__(self):
        a = list(self.alpha)
        while a and a[-1] == 0:
            a.pop()
        object.__setattr__(self, "alpha", tuple(a))

    @property
    def weight(self):
        return sum(e * (j + 1) for j, e in enumerate(self.alpha))

    @classmethod
    def unit(cls, j, mult=1):
        """(a^(j))^mult."""
        return cls((0,) * j + (mult,))

    def __str__(self):
        parts = []
        for j, e in enumerate(self.alpha):
            if not e:
                continue
            base = "a" + "'" * j if j < 4 else f"a^({j})"
            parts.append(base if e == 1 else f"({base})^{e}")
        return "*".join(parts) or "1"


def lambda_coefficient(alpha, m, p):
    """lambda_alpha mod p = m! / prod_j alpha_j! ((j+1)!)^alpha_j.

    Split as the multinomial over the block sizes alpha_j (j+1) times, for each
    j, the number of ways to cut alpha_j (j+1) items into alpha_j blocks of size
    j+1, which is prod_(t=1..alpha_j) C(t(j+1) - 1, j).  Every factor is an
    integer, so each is reduced with Lucas' theorem.
    """
    if not isinstance(alpha, DiffMonomial):
        alpha = DiffMonomial(tuple(alpha))
    if alpha.weight != m:
        raise WeightMismatch(f"{alpha} has weight {alpha.weight}, not {m}")
    out = multinomial_mod([e * (j + 1) for j, e in enumerate(alpha.alpha) if e], p)
    for j, e in enumerate(alpha.alpha):
        for t in range(1, e + 1):
            out = out * binomial_mod(t * (j + 1) - 1, j, p) % p
            if not out:
                return 0
    return out


def symbolic_am(m, p=None):
    """a_m = (D + a)^m (1) in the free differential polynomial ring over Z, reduced mod p if given."""
    if m > SYMBOLIC_LIMIT:
        raise TooLarge(f"symbolic expansion limited to m <= {SYMBOLIC_LIMIT}")
    cur = {(): 1}
    for _ in range(m):
        nxt = {}
        for alpha, c in cur.items():
            # derivative: a^(j) -> a^(j+1), with the product rule
            for j, e in enumerate(alpha):
                if not e:
                    continue
                new = list(alpha) + [0]
                new[j] -= 1
                new[j + 1] += 1
                key = DiffMonomial(tuple(new)).alpha
                nxt[key] = nxt.get(key, 0) + c * e
            # multiplication by a
            new = list(alpha) or [0]
            new[0] += 1
            key = tuple(new)
            nxt[key] = nxt.get(key, 0) + c
        cur = nxt
    out = {}
    for alpha, c in cur.items():
        if p is not None:
            c %= p
        if c:
            out[DiffMonomial(alpha)] = c
    return out


def partitions_weighted(m):
    """All alpha with sum_j alpha_j (j+1) = m."""
    out = []

    def rec(j, left, acc):
        if left == 0:
            out.append(DiffMonomial(tuple(acc)))
            return
        if j + 1 > left:
            return
        for e in range(left // (j + 1), -1, -1):
            rec(j + 1, left - e * (j + 1), acc + [e])

    rec(0, m, [])
    return out


def curvature_support(k, p):
    """The alpha = p^(k-l) eps_(p^l - 1), l = 0..k, carrying a_(p^k)."""
    return {DiffMonomial.unit(p**l - 1, p ** (k - l)) for l in range(k + 1)}


# -- fundamental matrix -----------------------------------------------------------

def check_sp(f):
    for d, m in f.terms:
        if sp_decompose(d, m, f.p) is None:
            raise NotInSp(f"monomial x^{d} z^{m} is not in S_p")


def fundamental_matrix(A, prec):
    """Y = sum_i (-1)^i e~_i x^i A_i, a solution of Y' + A Y = 0 with Y(0) = I."""
    p = A[0][0].p
    n = len(A)
    for row in A:
        for a in row:
            check_sp(a)
    if mat_prec(A) < prec:
        raise InsufficientPrecision(f"entries known mod x^{mat_prec(A)}, need {prec}")
    et = exp_tilde(p, prec)
    Y = [[XSeries.zero(p, prec) for _ in range(n)] for _ in range(n)]
    cur = identity(n, p)
    for i in range(prec):
        coeff = XSeries.from_zpoly(et.coefficient(i), i)
        if i % 2:
            coeff = -coeff
        if not coeff.is_zero():
            Y = mat_add(Y, mat_truncate(mat_scale_series(coeff, cur), prec))
        cur = mat_truncate(mat_add(mat_derive(cur), mat_mul(A, cur)), prec - i - 1)
    return [[a.with_prec(prec) for a in row] for row in Y]


# -- Cartier ----------------------------------------------------------------------

@dataclass
class CartierRecord:
    curvature_zero: bool
    division_remainder_zero: bool
    prec: int
    curvature: list = None
    remainder: DiffOperator = None

    @property
    def agree(self):
        return self.curvature_zero == self.division_remainder_zero


def cartier_check(L, k, prec):
    """Compare vanishing of the p^(k+1)-curvature with right divisibility of D^(p^(k+1)) by L."""
    p = L.p
    m = p ** (k + 1)
    M = monic(L, prec + m)
    A = companion_matrix(M)
    curv = curvature_sequence(A, k + 1, prec)
    _, R = skew_right_divide(DiffOperator.d(p) ** m, M, prec + m)
    rem_zero = all(c.vanishes_mod(prec) for c in R.coeffs)
    if any(c.prec < prec for c in R.coeffs):
        raise InsufficientPrecision("remainder not determined at the requested precision")
    rec = CartierRecord(curv.is_zero(), rem_zero, prec, curv.curvature, R)
    if not rec.agree:
        raise CartierMismatch(
            f"curvature zero = {rec.curvature_zero} but remainder zero = {rec.division_remainder_zero}"
        )
    return rec
