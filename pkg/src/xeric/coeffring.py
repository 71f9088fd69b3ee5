"""
Scalars in F_p and sparse Laurent polynomials in the logarithm variables.

A z-monomial z_1^{e_1} ... z_m^{e_m} is stored as the tuple ``(e_1, ..., e_m)``
with trailing zeros removed, so the empty tuple is the monomial 1 and every
monomial has exactly one representation.  Exponents may be negative.

Scalars are plain ``int`` residues in ``range(p)``; the prime travels with the
containing object (``ZPolynomial.p``, ``XSeries.p``) rather than with every
scalar.
"""

from dataclasses import dataclass

from .errors import DivisionByZero, IndexOutOfRange, NotAPthPower, XericError

MAX_PRIME = 97


def is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def check_prime(p, bound=MAX_PRIME):
    """Return ``p`` if it is a prime in ``[2, bound]``, else raise ValueError."""
    if not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"{p!r} is not a prime")
    if p > bound:
        raise ValueError(f"prime {p} exceeds the configured bound {bound}")
    return p


@dataclass(frozen=True)
class GF:
    """The prime field F_p; scalars are ints reduced into ``range(p)``."""

    p: int

    def __post_init__(self):
        check_prime(self.p)

    def __call__(self, value):
        return value % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise DivisionByZero(f"0 has no inverse mod {self.p}")
        return pow(a, -1, self.p)

    def div(self, a, b):
        return a * self.inv(b) % self.p

    def pow(self, a, e):
        if e < 0:
            return pow(self.inv(a), -e, self.p)
        return pow(a, e, self.p)


def fp_arith(a, b, kind, p):
    """Dispatch one F_p operation by name (``add``, ``sub``, ``mul``, ``div``, ``pow``, ``inv``).

    For ``inv`` the second operand is ignored; for ``pow`` it is the integer exponent.
    """
    field = GF(p)
    if kind == "inv":
        return field.inv(a)
    if kind == "pow":
        return field.pow(a, b)
    try:
        op = {"add": field.add, "sub": field.sub, "mul": field.mul, "div": field.div}[kind]
    except KeyError:
        raise ValueError(f"unknown operation {kind!r}") from None
    return op(a, b)


def binomial_mod(n, k, p):
    """C(n, k) mod p via Lucas' theorem on base-p digits (n, k >= 0)."""
    if k < 0 or k > n:
        return 0
    result = 1
    while n or k:
        nd, kd = n % p, k % p
        if kd > nd:
            return 0
        # small binomial from a product of at most p-1 terms
        num = den = 1
        for t in range(kd):
            num = num * (nd - t) % p
            den = den * (t + 1) % p
        result = result * num * pow(den, -1, p) % p
        n //= p
        k //= p
    return result


def multinomial_mod(parts, p):
    """(sum parts)! / prod(part!) mod p, as a product of Lucas binomials."""
    total = 0
    result = 1
    for part in parts:
        total += part
        result = result * binomial_mod(total, part, p) % p
        if not result:
            return 0
    return result


# -- z-monomials --------------------------------------------------------------

def zmono(*exps):
    """Build a z-monomial from the exponents of z_1, z_2, ...; ``zmono(3, 1)`` is z1^3*z2."""
    return _trim(list(exps))


def zmono_from_map(exps):
    """Build a z-monomial from a ``{index: exponent}`` mapping (indices start at 1)."""
    if not exps:
        return ()
    if min(exps) < 1:
        raise IndexOutOfRange("z-variable indices start at 1")
    out = [0] * max(exps)
    for i, e in exps.items():
        out[i - 1] = e
    return _trim(out)


def zmono_as_map(m):
    return {i + 1: e for i, e in enumerate(m) if e}


def _trim(exps):
    while exps and exps[-1] == 0:
        exps.pop()
    return tuple(exps)


def zmono_mul(a, b):
    if not a:
        return b
    if not b:
        return a
    if len(a) < len(b):
        a, b = b, a
    out = [x + y for x, y in zip(a, b)]
    out.extend(a[len(b):])
    if out[-1] == 0:
        return _trim(out)
    return tuple(out)


def zmono_pow(a, e):
    if e == 0:
        return ()
    return tuple(x * e for x in a)


def zmono_str(m):
    parts = []
    for i, e in enumerate(m, start=1):
        if e == 1:
            parts.append(f"z{i}")
        elif e:
            parts.append(f"z{i}^{e}")
    return "*".join(parts)


def monomial_residue_class(m, k, p):
    """Exponents of z_1..z_k reduced mod p (the z-part of a section class)."""
    if len(m) > k:
        raise IndexOutOfRange(f"monomial {zmono_str(m)} involves z-indices beyond {k}")
    return tuple(m[i] % p if i < len(m) else 0 for i in range(k))


def sp_decompose(xdeg, m, p):
    """Write x^xdeg * z^m as x^a * prod_k (x^{p^k} w_k)^{b_k}, or return None.

    ``b`` is returned as the list ``[b_1, ..., b_M]`` for M the largest z-index.
    The exponent of z_k in prod (x^{p^j} w_j)^{b_j} is sum_{j>=k} b_j p^{j-k},
    so the b_k are found top-down.
    """
    top = len(m)
    b = [0] * top
    carry = 0
    for k in range(top, 0, -1):
        bk = m[k - 1] - p * carry
        if bk < 0:
            return None
        b[k - 1] = bk
        carry = carry * p + bk
    a = xdeg - sum(bk * p**k for k, bk in enumerate(b, start=1))
    if a < 0:
        return None
    return a, b


def w_monomial(k, p):
    """w_k = z_1^{p^{k-1}} z_2^{p^{k-2}} ... z_k (w_0 = 1)."""
    return tuple(p ** (k - i) for i in range(1, k + 1))


# -- Laurent polynomials in z -------------------------------------------------

class ZPolynomial:
    """Sparse Laurent polynomial over F_p in z_1, z_2, ...

    ``terms`` maps z-monomial tuples to nonzero residues.  Instances are
    treated as immutable.
    """

    __slots__ = ("p", "terms")

    def __init__(self, p, terms=None):
        self.p = p
        clean = {}
        if terms:
            for m, c in terms.items():
                key = _trim(list(m))
                clean[key] = (clean.get(key, 0) + c) % p
            clean = {m: c for m, c in clean.items() if c}
        self.terms = clean

    @classmethod
    def _raw(cls, p, terms):
        obj = cls.__new__(cls)
        obj.p = p
        obj.terms = terms
        return obj

    @classmethod
    def constant(cls, p, c):
        c %= p
        return cls._raw(p, {(): c} if c else {})

    @classmethod
    def monomial(cls, p, m, c=1):
        c %= p
        return cls._raw(p, {m: c} if c else {})

    @classmethod
    def var(cls, p, i):
        return cls._raw(p, {zmono_from_map({i: 1}): 1})

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = ZPolynomial.constant(self.p, other)
        if not isinstance(other, ZPolynomial):
            return NotImplemented
        return self.p == other.p and self.terms == other.terms

    def __hash__(self):
        return hash((self.p, frozenset(self.terms.items())))

    def _coerce(self, other):
        if isinstance(other, ZPolynomial):
            if other.p != self.p:
                raise XericError(f"characteristic mismatch: {self.p} vs {other.p}")
            return other
        if isinstance(other, int):
            return ZPolynomial.constant(self.p, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.p
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = (out.get(m, 0) + c) % p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return ZPolynomial._raw(p, out)

    __radd__ = __add__

    def __neg__(self):
        p = self.p
        return ZPolynomial._raw(p, {m: p - c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.p
        out = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                m = zmono_mul(ma, mb)
                out[m] = (out.get(m, 0) + ca * cb) % p
        return ZPolynomial._raw(p, {m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def scale(self, c):
        p = self.p
        c %= p
        if not c:
            return ZPolynomial._raw(p, {})
        return ZPolynomial._raw(p, {m: v * c % p for m, v in self.terms.items()})

    def __pow__(self, e):
        result = ZPolynomial.constant(self.p, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def is_monomial(self):
        return len(self.terms) == 1

    def is_constant(self):
        return not self.terms or set(self.terms) == {()}

    def constant_term(self):
        return self.terms.get((), 0)

    def is_polynomial(self):
        return all(min(m, default=0) >= 0 for m in self.terms)

    def nvars(self):
        return max((len(m) for m in self.terms), default=0)

    def sorted_terms(self):
        """Terms in display order: lex on (e_1, e_2, ...) descending, as in 2*z1^2 + 2*z1 + 1."""
        return sorted(self.terms.items(), key=lambda t: t[0], reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for m, c in self.sorted_terms():
            body = zmono_str(m)
            if not body:
                pieces.append(str(c))
            elif c == 1:
                pieces.append(body)
            else:
                pieces.append(f"{c}*{body}")
        return " + ".join(pieces)

    def __repr__(self):
        return f"ZPolynomial(p={self.p}, {self})"


def zpoly_arith(a, b, kind):
    """Ring operation by name: ``add``, ``sub``, ``mul``, or ``scale`` (b an int)."""
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    if kind == "scale":
        return a.scale(b)
    raise ValueError(f"unknown operation {kind!r}")


def zpoly_frobenius(a):
    """a^p, i.e. every exponent multiplied by p (c^p = c in F_p)."""
    p = a.p
    return ZPolynomial._raw(p, {zmono_pow(m, p): c for m, c in a.terms.items()})


def zpoly_frobenius_root(a):
    """The unique b with b^p = a; raises NotAPthPower unless all exponents are divisible by p."""
    p = a.p
    out = {}
    for m, c in a.terms.items():
        if any(e % p for e in m):
            raise NotAPthPower(f"{zmono_str(m)} is not a {p}-th power")
        out[tuple(e // p for e in m)] = c
    return ZPolynomial._raw(p, out)
