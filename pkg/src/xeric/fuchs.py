"""
Solutions of regular singular equations L y = 0 in positive characteristic.

L is split as L_0 - T with L_0 = chi(theta) the Euler part (theta = x D) and T
of positive shift.  With S the inverse of L_0 on the complement of its kernel,
every kernel monomial x^rho z^{i*} extends to the solution sum_k (ST)^k(x^rho z^{i*}).

The derivation maps every monomial x^d z^a to terms of x-degree exactly d - 1,
so theta, S and the primitive are homogeneous in x and T strictly raises the
degree.  Truncating intermediate results at x^prec is therefore exact.
"""

from dataclasses import dataclass, field

from .diffop import DiffOperator, apply, euler_part, indicial, normalize_shift
from .errors import NonConvergence, SingularSectionMatrix, XericError
from .series import INF, XSeries, derive, primitive, section, series_invert


@dataclass(frozen=True)
class KernelMonomial:
    """The kernel element x^rho z^{i*} of the Euler part, i* = (i, i//p, i//p^2, ...)."""

    rho: int
    i: int
    istar: tuple

    def series(self, p):
        return XSeries.monomial(p, self.rho, self.istar)

    def label(self):
        return f"rho={self.rho}, i={self.i}"


def istar(i, p):
    out = []
    while i:
        out.append(i)
        i //= p
    return tuple(out)


def kernel_basis(ind):
    """One kernel monomial per root rho and 0 <= i < multiplicity(rho)."""
    return [KernelMonomial(rho, i, istar(i, ind.p)) for rho, m in ind.roots for i in range(m)]


@dataclass
class SolutionBasis:
    """Solutions paired with the kernel monomial each one extends."""

    p: int
    entries: list = field(default_factory=list)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, k):
        return self.entries[k]

    def solutions(self):
        return [y for _, y in self.entries]

    def kernel(self):
        return [km for km, _ in self.entries]

    def for_rho(self, rho, i=0):
        for km, y in self.entries:
            if km.rho == rho and km.i == i:
                return y
        raise KeyError((rho, i))


# -- the section S --------------------------------------------------------------

def euler_section(ind, f):
    """The u with chi(theta) u = f and no monomial in any kernel residue class.

    chi(theta) = c * prod (theta - rho) and (theta - rho)(x^rho v) = x^rho theta(v),
    so each factor is inverted by u = x^rho * primitive(x^(-rho-1) * f).
    """
    p = ind.p
    u = f
    for rho in ind.factors():
        u = primitive(u.shift(-rho - 1)).shift(rho)
    u = u.scale(pow(ind.leading(), -1, p))
    for km in kernel_basis(ind):
        u = u - section(u, km.rho, km.istar)
    return u.with_prec(f.prec) if f.prec != INF else u


def euler_apply(ind, u):
    """chi(theta) u, used to check euler_section."""
    p = ind.p
    out = XSeries.zero(p, u.prec)
    power = u
    for k, c in enumerate(ind.chi):
        if k:
            power = _theta(power)
        if c:
            out = out + power.scale(c)
    return out


def _theta(u):
    return derive(u).shift(1)


# -- the solver -------------------------------------------------------------------

def solve_xeric(L, prec):
    """Xeric basis of solutions of L y = 0 modulo x^prec.

    Each solution y satisfies <y>_{rho, i*} = x^rho z^{i*} for its own kernel
    monomial and has vanishing sections for all others.  If coefficients of L
    are only known to finite precision the result precision drops accordingly.
    """
    if not L.is_z_free():
        raise XericError("solve_xeric needs z-free coefficients")
    L = normalize_shift(L)
    ind = indicial(L)
    # a_j known mod x^N_j spoils a_j D^j y from degree N_j - j on
    prec = min([prec] + [a.prec - j for j, a in enumerate(L.coeffs)])
    L = DiffOperator(L.p, [a.truncate(prec + j).exact() for j, a in enumerate(L.coeffs)])
    T = euler_part(L) - L
    basis = SolutionBasis(L.p)
    for km in kernel_basis(ind):
        term = km.series(L.p)
        y = term
        for _ in range(prec + 1):
            nxt = euler_section(ind, apply(T, term).truncate(prec).exact())
            nxt = nxt.truncate(prec).exact()
            if nxt.is_zero():
                break
            if nxt.valuation <= term.valuation:
                raise NonConvergence(
                    f"iteration did not raise the x-order (stuck at {nxt.valuation}); "
                    "is the operator regular singular?"
                )
            y = y + nxt
            term = nxt
        else:
            raise NonConvergence("solver did not terminate within the precision bound")
        basis.entries.append((km, y.with_prec(prec)))
    return basis


def is_xeric(y, kernel, owner):
    """True iff <y>_{owner} = x^rho z^{i*} and every other kernel section of y vanishes."""
    for km in kernel:
        sec = section(y, km.rho, km.istar)
        if km == owner:
            if sec.terms != {(km.rho, km.istar): 1}:
                return False
        elif not sec.is_zero():
            return False
    return True


# -- xericization -----------------------------------------------------------------

def section_matrix(basis, kernel):
    """C with C[r][j] = x^-rho_j z^-i*_j <y_r>_{rho_j, i*_j}, entries in C_p."""
    rows = []
    for y in basis:
        p = y.p
        row = []
        for km in kernel:
            entry = section(y, km.rho, km.istar).shift(-km.rho)
            entry = entry * XSeries.monomial(p, 0, tuple(-e for e in km.istar))
            if entry.prec != INF:
                # a C_p element only has degrees divisible by p
                entry = entry.with_prec(-(-entry.prec // p) * p)
            row.append(entry)
        rows.append(row)
    return rows


def determinant(M):
    """Laplace expansion along the first row (matrices here are tiny)."""
    n = len(M)
    if n == 1:
        return M[0][0]
    total = None
    for c in range(n):
        minor = [row[:c] + row[c + 1:] for row in M[1:]]
        t = M[0][c] * determinant(minor)
        if c % 2:
            t = -t
        total = t if total is None else total + t
    return total


def adjugate(M):
    n = len(M)
    if n == 1:
        return [[XSeries.one(M[0][0].p)]]
    adj = [[None] * n for _ in range(n)]
    for r in range(n):
        for c in range(n):
            minor = [row[:c] + row[c + 1:] for k, row in enumerate(M) if k != r]
            d = determinant(minor)
            adj[c][r] = -d if (r + c) % 2 else d
    return adj


def xericize(basis, L):
    """Turn any C_p-basis of solutions into the xeric one, Y = C^-1 Y~."""
    L = normalize_shift(L)
    kernel = kernel_basis(indicial(L))
    basis = list(basis)
    if len(basis) != len(kernel):
        raise XericError(f"expected {len(kernel)} solutions, got {len(basis)}")
    p = L.p
    C = section_matrix(basis, kernel)
    det = determinant(C)
    prec = min(y.prec for y in basis)
    if det.is_zero() or det.valuation >= prec:
        raise SingularSectionMatrix("section matrix is singular at the working precision")
    if len(det.terms) == 1 and det.prec == INF:
        ((d, m), c), = det.terms.items()
        det_inv = XSeries.monomial(p, -d, tuple(-e for e in m), pow(c, -1, p))
    else:
        try:
            det_inv = series_invert(det, prec)
        except XericError as exc:
            raise SingularSectionMatrix(f"section matrix determinant is not a unit: {exc}") from None
    adj = adjugate(C)
    out = SolutionBasis(p)
    for r, km in enumerate(kernel):
        acc = XSeries.zero(p)
        for c, y in enumerate(basis):
            acc = acc + adj[r][c] * y
        out.entries.append((km, (det_inv * acc).truncate(prec)))
    return out
