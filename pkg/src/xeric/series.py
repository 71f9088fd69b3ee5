"""
Truncated Laurent series in x with Laurent-polynomial coefficients in z_1, z_2, ...

The derivation is the one of the logarithmic extension:

    dx = 1,   dz_1 = 1/x,   dz_i = dz_{i-1} / z_{i-1}  = 1/(x z_1 ... z_{i-1}).

Precision rules (``prec = N`` means the series is known modulo x^N; ``INF``
marks an exact series):

* add/sub: min of the two precisions
* mul: min(prec_a + val_b, prec_b + val_a)
* derive: prec - 1;  primitive: prec + 1
* frobenius: p * prec;  frobenius root: ceil(prec / p)
* invert: min(requested, prec - 2 * val)
"""

import math
import random

from .coeffring import (
    ZPolynomial,
    zmono_mul,
    zmono_pow,
    zmono_str,
)
from .errors import (
    InsufficientPrecision,
    NegativeExponentAtZero,
    NonUnitLeadingCoefficient,
    NotAPthPower,
    XericError,
)

INF = math.inf


def _fmt_prec(prec):
    return "exact" if prec == INF else str(prec)


class XSeries:
    """Element of F_p[z^{+-1}]((x)) known modulo x^prec.

    ``terms`` maps ``(x_degree, z_monomial)`` to a nonzero residue mod p; all
    stored degrees are below ``prec``.  Treat instances as immutable.
    """

    __slots__ = ("p", "terms", "prec")

    def __init__(self, p, terms=None, prec=INF):
        self.p = p
        self.prec = prec
        clean = {}
        if terms:
            for (d, m), c in terms.items():
                if d >= prec:
                    continue
                m = tuple(m)
                while m and m[-1] == 0:
                    m = m[:-1]
                key = (d, m)
                clean[key] = (clean.get(key, 0) + c) % p
        self.terms = {k: c for k, c in clean.items() if c}

    @classmethod
    def _raw(cls, p, terms, prec):
        obj = cls.__new__(cls)
        obj.p = p
        obj.terms = terms
        obj.prec = prec
        return obj

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, p, prec=INF):
        return cls._raw(p, {}, prec)

    @classmethod
    def one(cls, p, prec=INF):
        return cls.monomial(p, 0, (), 1, prec)

    @classmethod
    def monomial(cls, p, d, m=(), c=1, prec=INF):
        return cls(p, {(d, m): c}, prec)

    @classmethod
    def x(cls, p):
        return cls._raw(p, {(1, ()): 1}, INF)

    @classmethod
    def from_list(cls, p, coeffs, prec=INF, start=0):
        """z-free series sum coeffs[k] x^(start+k)."""
        return cls(p, {(start + k, ()): c for k, c in enumerate(coeffs)}, prec)

    @classmethod
    def from_coeffs(cls, p, coeffs, prec=INF):
        """Series from ``{degree: ZPolynomial or int}``."""
        terms = {}
        for d, poly in coeffs.items():
            if isinstance(poly, int):
                poly = ZPolynomial.constant(p, poly)
            for m, c in poly.terms.items():
                terms[(d, m)] = c
        return cls(p, terms, prec)

    @classmethod
    def from_zpoly(cls, poly, d=0, prec=INF):
        return cls._raw(poly.p, {(d, m): c for m, c in poly.terms.items() if d < prec}, prec)

    # -- inspection ----------------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    @property
    def valuation(self):
        """Lowest x-degree present; the precision for a zero series."""
        if not self.terms:
            return self.prec
        return min(d for d, _ in self.terms)

    def coeff(self, d):
        """Coefficient of x^d as a ZPolynomial."""
        if d >= self.prec:
            raise InsufficientPrecision(f"x^{d} is beyond the precision {self.prec}")
        return ZPolynomial._raw(self.p, {m: c for (e, m), c in self.terms.items() if e == d})

    def coeffs(self):
        """``{degree: ZPolynomial}`` in ascending degree order."""
        grouped = {}
        for (d, m), c in self.terms.items():
            grouped.setdefault(d, {})[m] = c
        return {d: ZPolynomial._raw(self.p, grouped[d]) for d in sorted(grouped)}

    def nvars(self):
        return max((len(m) for _, m in self.terms), default=0)

    def is_z_free(self):
        return all(not m for _, m in self.terms)

    def is_polynomial_in_z(self):
        return all(min(m, default=0) >= 0 for _, m in self.terms)

    def truncate(self, n):
        """Forget everything from x^n on."""
        if n >= self.prec:
            return self
        return XSeries._raw(self.p, {k: c for k, c in self.terms.items() if k[0] < n}, n)

    def exact(self):
        """Same terms, declared exact (used when a truncation is known to be a polynomial)."""
        return XSeries._raw(self.p, self.terms, INF)

    def with_prec(self, prec):
        return XSeries._raw(self.p, {k: c for k, c in self.terms.items() if k[0] < prec}, prec)

    def __eq__(self, other):
        if isinstance(other, int):
            other = XSeries.monomial(self.p, 0, (), other, self.prec)
        if not isinstance(other, XSeries):
            return NotImplemented
        return self.p == other.p and self.prec == other.prec and self.terms == other.terms

    __hash__ = None

    def agrees(self, other, n=None):
        """Equality modulo x^n (default: the smaller of the two precisions)."""
        if n is None:
            n = min(self.prec, other.prec)
        elif n > min(self.prec, other.prec):
            raise InsufficientPrecision(
                f"cannot compare mod x^{n}: precisions are {self.prec} and {other.prec}"
            )
        return (self - other).truncate(n).is_zero()

    def vanishes_mod(self, n):
        """True if the series is known mod x^n and has no term below x^n."""
        return self.prec >= n and all(d >= n for d, _ in self.terms)

    # -- ring structure ------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, XSeries):
            if other.p != self.p:
                raise XericError(f"characteristic mismatch: {self.p} vs {other.p}")
            return other
        if isinstance(other, int):
            c = other % self.p
            return XSeries._raw(self.p, {(0, ()): c} if c else {}, INF)
        if isinstance(other, ZPolynomial):
            return XSeries.from_zpoly(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.p
        prec = min(self.prec, other.prec)
        out = {k: c for k, c in self.terms.items() if k[0] < prec}
        for k, c in other.terms.items():
            if k[0] >= prec:
                continue
            v = (out.get(k, 0) + c) % p
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return XSeries._raw(p, out, prec)

    __radd__ = __add__

    def __neg__(self):
        p = self.p
        return XSeries._raw(p, {k: p - c for k, c in self.terms.items()}, self.prec)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        p = self.p
        c %= p
        if not c:
            return XSeries._raw(p, {}, self.prec)
        return XSeries._raw(p, {k: v * c % p for k, v in self.terms.items()}, self.prec)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.p
        prec = min(self.prec + other.valuation, other.prec + self.valuation)
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        groups = {}
        for (d, m), c in b.items():
            groups.setdefault(d, []).append((m, c))
        bdeg = sorted(groups)
        out = {}
        get = out.get
        for (da, ma), ca in a.items():
            for db in bdeg:
                d = da + db
                if d >= prec:
                    break
                for mb, cb in groups[db]:
                    key = (d, zmono_mul(ma, mb))
                    out[key] = get(key, 0) + ca * cb
        return XSeries._raw(p, {k: c % p for k, c in out.items() if c % p}, prec)

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            return series_invert(self, self.prec) ** (-e)
        result = XSeries.one(self.p)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def shift(self, k):
        """Multiply by x^k."""
        return XSeries._raw(self.p, {(d + k, m): c for (d, m), c in self.terms.items()}, self.prec + k)

    def map_coefficients(self, fn):
        return XSeries(self.p, {(d, m): fn(d, m, c) for (d, m), c in self.terms.items()}, self.prec)

    # -- display -------------------------------------------------------------

    def to_text(self, with_order=True):
        pieces = []
        for d, poly in self.coeffs().items():
            pieces.append(_term_text(poly, d))
        body = " + ".join(pieces) if pieces else "0"
        if with_order and self.prec != INF:
            return f"{body} + O(x^{self.prec})" if pieces else f"O(x^{self.prec})"
        return body

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"XSeries(p={self.p}, prec={_fmt_prec(self.prec)}, {self.to_text(False)})"


def _xpow(d):
    if d == 0:
        return ""
    if d == 1:
        return "x"
    return f"x^{d}"


def _term_text(poly, d):
    xs = _xpow(d)
    if poly.is_monomial():
        ((m, c),) = poly.terms.items()
        factors = [str(c)] if c != 1 or (not m and not xs) else []
        if m:
            factors.append(zmono_str(m))
        if xs:
            factors.append(xs)
        return "*".join(factors)
    if not xs:
        return f"({poly})"
    return f"({poly})*{xs}"


def series_arith(a, b, kind):
    """``add``, ``sub`` or ``mul`` of two series, with the module's precision rules."""
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    raise ValueError(f"unknown operation {kind!r}")


# -- derivation ---------------------------------------------------------------

def _derive_monomial(d, m, p):
    """Yield (degree, monomial, multiplier) for the derivative of x^d z^m."""
    if d % p:
        yield d - 1, m, d
    for i, e in enumerate(m):
        if e % p:
            head = tuple(x - 1 for x in m[: i + 1])
            nm = head + m[i + 1:]
            while nm and nm[-1] == 0:
                nm = nm[:-1]
            yield d - 1, nm, e


def derive(f):
    p = f.p
    out = {}
    for (d, m), c in f.terms.items():
        for nd, nm, k in _derive_monomial(d, m, p):
            key = (nd, nm)
            out[key] = out.get(key, 0) + c * k
    return XSeries._raw(p, {k: c % p for k, c in out.items() if c % p}, f.prec - 1)


def derive_n(f, n):
    for _ in range(n):
        if f.is_zero() and f.prec == INF:
            break
        f = derive(f)
    return f


def primitive(f):
    """A primitive of f, produced monomial by monomial by integration by parts.

    Every monomial x^j z^a is split into a constant (all exponents divisible by p)
    times a reduced monomial with exponents in [0, p).  The primitive of a reduced
    monomial is (alpha+1)^-1 * P * (z_i^(alpha+1) g - int(z_i^(alpha+1) g')), with P
    the constant (x z_1 ... z_{i-1})^p, i the first position whose residue is not
    p-1, and g the part of the monomial beyond z_i.  The remainder term is strictly
    smaller in the ordering e = j + sum a_i p^i, so the recursion ends.
    """
    p = f.p
    memo = {}
    out = {}
    for (d, m), c in f.terms.items():
        for (nd, nm), k in _primitive_monomial(d, m, p, memo).items():
            key = (nd, nm)
            out[key] = out.get(key, 0) + c * k
    return XSeries._raw(p, {k: c % p for k, c in out.items() if c % p}, f.prec + 1)


def _primitive_monomial(d, m, p, memo):
    q0, r0 = divmod(d, p)
    qs = [e // p for e in m]
    rs = tuple(e % p for e in m)
    while rs and rs[-1] == 0:
        rs = rs[:-1]
    if r0 == 0 and not rs:
        return {(d + 1, m): 1}
    reduced = _primitive_reduced(r0, rs, p, memo)
    if q0 == 0 and not any(qs):
        return reduced
    shift = tuple(p * q for q in qs)
    while shift and shift[-1] == 0:
        shift = shift[:-1]
    return {(nd + p * q0, zmono_mul(nm, shift)): c for (nd, nm), c in reduced.items()}


def _primitive_reduced(j, alpha, p, memo):
    key = (j, alpha)
    if key in memo:
        return memo[key]
    exps = [j] + list(alpha)
    i0 = 0
    while i0 < len(exps) and exps[i0] == p - 1:
        i0 += 1
    a = exps[i0] if i0 < len(exps) else 0
    inv = pow(a + 1, -1, p)
    # T = P * z_{i0}^(a+1) * g, with x playing the role of z_0
    t = [p] * i0 + [a + 1] + exps[i0 + 1:]
    tdeg, tz = t[0], tuple(t[1:])
    while tz and tz[-1] == 0:
        tz = tz[:-1]
    result = {(tdeg, tz): inv}
    for i in range(i0 + 1, len(exps)):
        if exps[i] % p == 0:
            continue
        # z-part of P z_{i0}^(a+1) g' at the z_i-derivative: exponents 1..i drop by one
        nz = tuple(e - 1 if k < i else e for k, e in enumerate(t[1:]))
        while nz and nz[-1] == 0:
            nz = nz[:-1]
        coeff = -inv * exps[i]
        for k2, v in _primitive_monomial(tdeg - 1, nz, p, memo).items():
            result[k2] = (result.get(k2, 0) + coeff * v) % p
    result = {k2: v for k2, v in result.items() if v}
    memo[key] = result
    return result


# -- sections, projections, coefficients --------------------------------------

def section(f, j, gamma=()):
    """Monomials x^k z^a of f with k = j and a_i = gamma_i mod p (gamma padded with zeros)."""
    p = f.p
    j %= p
    gamma = tuple(g % p for g in gamma)
    out = {}
    for (d, m), c in f.terms.items():
        if d % p != j:
            continue
        n = max(len(m), len(gamma))
        if all((m[i] if i < len(m) else 0) % p == (gamma[i] if i < len(gamma) else 0) for i in range(n)):
            out[(d, m)] = c
    return XSeries._raw(p, out, f.prec)


def section_classes(f):
    """Residue class ``(j, gamma)`` of every monomial of f, gamma padded to f's z-count."""
    k = f.nvars()
    p = f.p
    return {
        (d % p, tuple((m[i] if i < len(m) else 0) % p for i in range(k)))
        for d, m in f.terms
    }


def project(f, k):
    """Set z_{k+1} = z_{k+2} = ... = 0."""
    out = {}
    for (d, m), c in f.terms.items():
        tail = m[k:]
        if any(e < 0 for e in tail):
            raise NegativeExponentAtZero(f"z-monomial {zmono_str(m)} has a negative exponent beyond index {k}")
        if not any(tail):
            out[(d, m)] = c
    return XSeries._raw(f.p, out, f.prec)


def z_coefficient(f, alpha=()):
    """The pure x-series multiplying z^alpha in f."""
    alpha = tuple(alpha)
    while alpha and alpha[-1] == 0:
        alpha = alpha[:-1]
    return XSeries._raw(f.p, {(d, ()): c for (d, m), c in f.terms.items() if m == alpha}, f.prec)


def substitute_neg_x(f):
    """x -> -x with the z_i fixed; anti-commutes with the derivation."""
    p = f.p
    return XSeries._raw(
        p, {(d, m): (p - c if d % 2 else c) for (d, m), c in f.terms.items()}, f.prec
    )


# -- Frobenius ----------------------------------------------------------------

def series_frobenius(f):
    """f^p: all exponents times p; precision times p."""
    p = f.p
    return XSeries._raw(p, {(d * p, zmono_pow(m, p)): c for (d, m), c in f.terms.items()}, f.prec * p)


def series_frobenius_root(f):
    """Inverse of series_frobenius; precision becomes ceil(prec / p)."""
    p = f.p
    out = {}
    for (d, m), c in f.terms.items():
        if d % p or any(e % p for e in m):
            raise NotAPthPower(f"x^{d}*{zmono_str(m) or '1'} is not a {p}-th power")
        out[(d // p, tuple(e // p for e in m))] = c
    prec = f.prec if f.prec == INF else -(-f.prec // p)
    return XSeries._raw(p, {k: c for k, c in out.items() if k[0] < prec}, prec)


# -- inversion ----------------------------------------------------------------

def series_invert(f, prec=None):
    """1/f modulo x^min(prec, f.prec - 2*val(f)).

    The lowest coefficient must be a single term c*z^b, otherwise the inverse
    leaves the Laurent-polynomial coefficient ring.
    """
    p = f.p
    if f.is_zero():
        raise NonUnitLeadingCoefficient("cannot invert a series that is zero at its precision")
    v = f.valuation
    lead = f.coeff(v)
    if not lead.is_monomial():
        raise NonUnitLeadingCoefficient(f"leading coefficient {lead} is not a monomial")
    ((beta, c),) = lead.terms.items()
    target = f.prec - 2 * v
    if prec is not None:
        target = min(target, prec)
    if target == INF:
        raise InsufficientPrecision("inverting an exact series needs a target precision")
    cinv = pow(c, -1, p)
    nbeta = tuple(-e for e in beta)
    # g = f / (c z^beta x^v) = 1 + O(x); solve g*r = 1 degree by degree
    glen = target + v
    g = {}
    for (d, m), k in f.terms.items():
        e = d - v
        if 0 < e < glen:
            g.setdefault(e, ZPolynomial._raw(p, {}))
            g[e] = g[e] + ZPolynomial._raw(p, {zmono_mul(m, nbeta): k * cinv % p})
    gdeg = sorted(g)
    r = [ZPolynomial.constant(p, 1)]
    for n in range(1, max(glen, 1)):
        acc = ZPolynomial._raw(p, {})
        for e in gdeg:
            if e > n:
                break
            if r[n - e]:
                acc = acc + g[e] * r[n - e]
        r.append(-acc)
    out = {}
    for n, poly in enumerate(r):
        if n >= glen:
            break
        for m, k in poly.terms.items():
            out[(n - v, zmono_mul(m, nbeta))] = k * cinv % p
    return XSeries._raw(p, {k: c for k, c in out.items() if c}, target)


# -- distinguished monomials --------------------------------------------------

def w_monomial_derivative(k, p):
    """(x^{p^k} w_k)' = x^{p^k - 1} z_1^{p^{k-1}-1} ... z_{k-1}^{p-1}."""
    if k == 0:
        return XSeries.one(p)
    z = tuple(p ** (k - i) - 1 for i in range(1, k + 1))
    return XSeries.monomial(p, p**k - 1, z)


def random_series(p, rng=None, nterms=6, nvars=2, deg=(-2, 12), zexp=(-2, 4), prec=None):
    """Random sparse series for property tests; ``prec`` defaults to exact."""
    rng = rng or random.Random()
    terms = {}
    for _ in range(nterms):
        d = rng.randint(*deg)
        m = tuple(rng.randint(*zexp) for _ in range(rng.randint(0, nvars)))
        terms[(d, m)] = rng.randrange(1, p)
    return XSeries(p, terms, INF if prec is None else prec)
