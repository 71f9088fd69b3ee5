"""
Linear differential operators a_n D^n + ... + a_1 D + a_0 with series coefficients.

Operators form the skew ring with D*f = f*D + f'.  The indicial polynomial of a
shift-normalized operator is read off from the x^j-coefficients of the a_j.
"""

from dataclasses import dataclass

from .coeffring import binomial_mod, check_prime
from .errors import (
    DegenerateIndicial,
    InsufficientPrecision,
    IrregularSingularity,
    NonUnitLeadingCoefficient,
    NotSplit,
    XericError,
)
from .series import INF, XSeries, derive, series_invert


class DiffOperator:
    """Sum of a_j D^j; ``coeffs[j]`` is a_j.  Trailing zero coefficients are dropped."""

    __slots__ = ("p", "coeffs")

    def __init__(self, p, coeffs):
        check_prime(p)
        self.p = p
        out = []
        for a in coeffs:
            if isinstance(a, int):
                a = XSeries.monomial(p, 0, (), a)
            elif a.p != p:
                raise XericError(f"characteristic mismatch: {a.p} vs {p}")
            out.append(a)
        while out and out[-1].is_zero():
            out.pop()
        if not out:
            raise XericError("the zero operator has no order")
        self.coeffs = tuple(out)

    @classmethod
    def d(cls, p):
        return cls(p, [0, 1])

    @classmethod
    def mul_by(cls, f):
        """The order-0 operator of multiplication by f."""
        return cls(f.p, [f])

    @property
    def order(self):
        return len(self.coeffs) - 1

    @property
    def leading(self):
        return self.coeffs[-1]

    @property
    def prec(self):
        return min(a.prec for a in self.coeffs)

    def coeff(self, j):
        if 0 <= j < len(self.coeffs):
            return self.coeffs[j]
        return XSeries.zero(self.p)

    def is_z_free(self):
        return all(a.is_z_free() for a in self.coeffs)

    def truncate(self, n):
        return operator_from_coeffs(self.p, [a.truncate(n) for a in self.coeffs])

    def __eq__(self, other):
        if not isinstance(other, DiffOperator):
            return NotImplemented
        return self.p == other.p and self.coeffs == other.coeffs

    def __add__(self, other):
        other = _as_operator(other, self.p)
        n = max(len(self.coeffs), len(other.coeffs))
        return operator_from_coeffs(self.p, [self.coeff(j) + other.coeff(j) for j in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return DiffOperator(self.p, [-a for a in self.coeffs])

    def __sub__(self, other):
        return self + (-_as_operator(other, self.p))

    def __rsub__(self, other):
        return _as_operator(other, self.p) - self

    def __mul__(self, other):
        """Composition; D^i * b = sum_k C(i, k) b^(k) D^(i-k)."""
        other = _as_operator(other, self.p)
        p = self.p
        out = {}
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if b.is_zero():
                    continue
                db = b
                for k in range(i + 1):
                    if k:
                        db = derive(db)
                    c = binomial_mod(i, k, p)
                    if c and not db.is_zero():
                        t = (a * db).scale(c)
                        e = i - k + j
                        out[e] = out[e] + t if e in out else t
        n = max(out, default=0) + 1
        return operator_from_coeffs(p, [out.get(e, XSeries.zero(p)) for e in range(n)])

    def __rmul__(self, other):
        return _as_operator(other, self.p) * self

    def __pow__(self, e):
        result = DiffOperator(self.p, [1])
        for _ in range(e):
            result = result * self
        return result

    def __str__(self):
        parts = []
        for j in range(len(self.coeffs) - 1, -1, -1):
            a = self.coeffs[j]
            if a.is_zero() and len(self.coeffs) > 1:
                continue
            body = a.to_text(with_order=a.prec != INF)
            dpart = "" if j == 0 else ("D" if j == 1 else f"D^{j}")
            if not dpart:
                parts.append(f"({body})")
            elif body == "1":
                parts.append(dpart)
            else:
                parts.append(f"({body})*{dpart}")
        return " + ".join(parts)

    def __repr__(self):
        return f"DiffOperator(p={self.p}, {self})"


def operator_from_coeffs(p, coeffs):
    """Like DiffOperator(p, coeffs) but the zero operator is allowed (returned as [0])."""
    while len(coeffs) > 1 and coeffs[-1].is_zero():
        coeffs = coeffs[:-1]
    obj = DiffOperator.__new__(DiffOperator)
    obj.p = p
    obj.coeffs = tuple(coeffs) if coeffs else (XSeries.zero(p),)
    return obj


def _as_operator(obj, p):
    if isinstance(obj, DiffOperator):
        if obj.p != p:
            raise XericError(f"characteristic mismatch: {obj.p} vs {p}")
        return obj
    if isinstance(obj, int):
        return operator_from_coeffs(p, [XSeries.monomial(p, 0, (), obj)])
    if isinstance(obj, XSeries):
        return operator_from_coeffs(p, [obj])
    raise TypeError(f"cannot treat {type(obj).__name__} as an operator")


def is_zero_operator(L):
    return all(a.is_zero() for a in L.coeffs)


# -- shift and indicial data --------------------------------------------------

def shift(L):
    """Minimal i - j over the monomials x^i D^j of L."""
    return min(a.valuation - j for j, a in enumerate(L.coeffs) if not a.is_zero())


def normalize_shift(L):
    """Multiply by the power of x that makes the minimal shift 0.

    Regularity at 0 means a_j / a_n has a pole of order at most n - j, i.e.
    the minimal shift is attained by the leading coefficient.
    """
    for a in L.coeffs:
        if a.is_zero() and a.prec != INF:
            raise IrregularSingularity("a coefficient vanishes at the working precision")
    tau = shift(L)
    n = L.order
    if L.leading.valuation - n != tau:
        raise IrregularSingularity(f"operator is not regular singular at 0: {L}")
    if tau == 0:
        return L
    return operator_from_coeffs(L.p, [a.shift(-tau) for a in L.coeffs])


@dataclass(frozen=True)
class IndicialData:
    """Indicial polynomial (ascending coefficients mod p) and its roots in {0..p-1}."""

    p: int
    chi: tuple
    roots: tuple
    shift: int = 0

    @property
    def degree(self):
        return len(self.chi) - 1

    def evaluate(self, s):
        return sum(c * pow(s, k, self.p) for k, c in enumerate(self.chi)) % self.p

    def chi_text(self):
        return poly_text(self.chi, "s")

    def factors(self):
        """Roots with multiplicity expanded, in descending order."""
        out = []
        for rho, m in sorted(self.roots, reverse=True):
            out.extend([rho] * m)
        return out

    def leading(self):
        return self.chi[-1]


def poly_text(coeffs, var="s"):
    parts = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if not c:
            continue
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        if not mono:
            parts.append(str(c))
        elif c == 1:
            parts.append(mono)
        else:
            parts.append(f"{c}*{mono}")
    return " + ".join(parts) or "0"


def _poly_trim(c):
    c = list(c)
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return c


def _poly_mul(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    return out


def falling_factorial(j, p):
    """Coefficients of s(s-1)...(s-j+1) mod p."""
    out = [1]
    for t in range(j):
        out = _poly_mul(out, [-t % p, 1], p)
    return out


def _divide_linear(c, rho, p):
    """Synthetic division of c by (s - rho): (quotient, remainder)."""
    n = len(c) - 1
    q = [0] * n
    acc = 0
    for k in range(n, 0, -1):
        acc = (acc * rho + c[k]) % p
        q[k - 1] = acc
    rem = (acc * rho + c[0]) % p
    return q, rem


def indicial(L):
    """Indicial data of a shift-normalized operator."""
    p = L.p
    chi = [0]
    for j, a in enumerate(L.coeffs):
        poly = a.coeff(j)
        if not poly.is_constant():
            raise XericError(f"indicial coefficient of D^{j} is not a constant: {poly}")
        c = poly.constant_term()
        if c:
            term = [c * v % p for v in falling_factorial(j, p)]
            chi = [((chi[k] if k < len(chi) else 0) + (term[k] if k < len(term) else 0)) % p
                   for k in range(max(len(chi), len(term)))]
    chi = _poly_trim(chi)
    if len(chi) - 1 < L.order:
        raise DegenerateIndicial(f"indicial polynomial {poly_text(chi)} has degree below the order {L.order}")
    roots = []
    rest = chi
    for rho in range(p):
        m = 0
        while len(rest) > 1:
            q, r = _divide_linear(rest, rho, p)
            if r:
                break
            rest = q
            m += 1
        if m:
            roots.append((rho, m))
    if len(rest) > 1:
        raise NotSplit(f"indicial polynomial {poly_text(chi)} does not split over F_{p}")
    return IndicialData(p, tuple(chi), tuple(roots), shift(L))


def euler_part(L):
    """L_0 = sum_j c_jj x^j D^j, the part of L of shift 0 (L shift-normalized)."""
    p = L.p
    return operator_from_coeffs(p, [XSeries.from_zpoly(a.coeff(j), j) for j, a in enumerate(L.coeffs)])


# -- application, companion matrix, division ----------------------------------

def apply(L, y):
    out = None
    dy = y
    for j, a in enumerate(L.coeffs):
        if j:
            dy = derive(dy)
        if a.is_zero() and a.prec == INF:
            continue
        t = a * dy
        out = t if out is None else out + t
    if out is None:
        return XSeries.zero(L.p, dy.prec)
    return out


def _unit_inverse(a, prec):
    """1/a, exact when a is a single monomial."""
    if len(a.terms) == 1 and a.prec == INF:
        ((d, m), c), = a.terms.items()
        return XSeries.monomial(a.p, -d, tuple(-e for e in m), pow(c, -1, a.p))
    if prec is None and a.prec == INF:
        raise InsufficientPrecision("inverting a non-monomial leading coefficient needs a precision")
    return series_invert(a, prec)


def monic(L, prec=None):
    """L divided on the left by its leading coefficient."""
    inv = _unit_inverse(L.leading, prec)
    coeffs = [inv * a for a in L.coeffs[:-1]] + [XSeries.one(L.p)]
    if prec is not None:
        coeffs = [a.truncate(prec) for a in coeffs]
    return operator_from_coeffs(L.p, coeffs)


def companion_matrix(L, prec=None):
    """Matrix A with Y' + A Y = 0 for Y = (y, y', ..., y^(n-1)): -1 on the
    superdiagonal, last row the monic coefficients a_0 .. a_{n-1}."""
    p = L.p
    n = L.order
    if n < 1:
        raise XericError("companion matrix needs an operator of positive order")
    M = monic(L, prec)
    zero = XSeries.zero(p)
    rows = []
    for r in range(n - 1):
        rows.append([XSeries.monomial(p, 0, (), -1) if c == r + 1 else zero for c in range(n)])
    rows.append([M.coeffs[c] for c in range(n)])
    return rows


def skew_right_divide(N, L, prec=None):
    """(Q, R) with N = Q*L + R and ord R < ord L.

    The leading coefficient of L must be invertible (a monomial, or a series
    with monomial lowest term when ``prec`` is given).  With ``prec`` all
    coefficients are reduced modulo x^prec.
    """
    p = N.p
    if L.p != p:
        raise XericError(f"characteristic mismatch: {N.p} vs {L.p}")
    n = L.order
    lead_inv = _unit_inverse(L.leading, prec)
    trunc = (lambda s: s.truncate(prec)) if prec is not None else (lambda s: s)
    R = list(N.coeffs)
    Q = {}
    for m in range(len(R) - 1, n - 1, -1):
        r = R[m]
        if r.is_zero():
            continue
        q = trunc(r * lead_inv)
        Q[m - n] = q
        # subtract q * D^(m-n) * L
        step = operator_from_coeffs(p, [q]) * (DiffOperator.d(p) ** (m - n)) * L
        for j, c in enumerate(step.coeffs):
            if j < len(R):
                R[j] = trunc(R[j] - c)
        R[m] = XSeries.zero(p, R[m].prec)
    qlen = max(Q, default=0) + 1
    Qop = operator_from_coeffs(p, [Q.get(k, XSeries.zero(p)) for k in range(qlen)])
    Rop = operator_from_coeffs(p, [trunc(c) for c in R[:n]] if n else [XSeries.zero(p)])
    return Qop, Rop
