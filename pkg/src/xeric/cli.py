"""
Command line front end.

    xeric solve --p 3 --prec 11 --op "x*D - x"
    xeric special --fn sin --p 3 --prec 12
    xeric curvature --p 3 --k 1 --op "D - 1"
    xeric decompose --p 3 --levels 2 --prec 30 --op "D - 1"
    xeric verify --p 3 --prec 40 --suite all

Operators are written in D and x with + - * ^ and parentheses; products are
normalized with D*x = x*D + 1 and integer literals are reduced mod p.

Exit codes: 0 success, 1 failed verification, 2 usage, parse or math error.
"""

import argparse
import json
import re
import sys

from .coeffring import check_prime
from .curvature import curvature_sequence, pk_curvature_order1
from .decomp import decompose
from .diffop import DiffOperator, companion_matrix, is_zero_operator, monic, operator_from_coeffs
from .errors import XericError
from .fuchs import solve_xeric
from .series import INF, XSeries
from .special import exp_tilde, exp_xeric, trig


class OperatorSyntaxError(XericError, SyntaxError):
    """Malformed operator expression; ``position`` is the 0-based column."""

    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


class ExponentError(XericError, ValueError):
    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


# -- operator expressions ---------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|(.))")


def _tokenize(src):
    tokens = []
    pos = 0
    end = len(src.rstrip())
    while pos < end:
        m = _TOKEN.match(src, pos)
        start = m.start(1) if m.group(1) else m.start(2)
        if m.group(1):
            tokens.append(("int", int(m.group(1)), start))
        else:
            ch = m.group(2)
            if ch not in "Dx+-*^()":
                raise OperatorSyntaxError(f"unexpected character {ch!r}", start)
            tokens.append((ch, ch, start))
        pos = m.end()
    tokens.append(("end", None, end))
    return tokens


class _Parser:
    # expr := term (('+'|'-') term)* ; term := factor ('*' factor)* ;
    # factor := base ('^' uint)? ; base := 'D' | 'x' | uint | '(' expr ')'
    # a leading sign is accepted on the first term of an expression

    def __init__(self, src, p):
        self.tokens = _tokenize(src)
        self.k = 0
        self.p = p

    def peek(self):
        return self.tokens[self.k]

    def take(self):
        tok = self.tokens[self.k]
        self.k += 1
        return tok

    def expr(self):
        negate = False
        if self.peek()[0] in ("+", "-"):
            negate = self.take()[0] == "-"
        out = self.term()
        if negate:
            out = -out
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            out = out + rhs if op == "+" else out - rhs
        return out

    def term(self):
        out = self.factor()
        while self.peek()[0] == "*":
            self.take()
            out = out * self.factor()
        return out

    def factor(self):
        base = self.base()
        if self.peek()[0] == "^":
            self.take()
            kind, value, vpos = self.take()
            if kind != "int":
                raise ExponentError("exponent must be a non-negative integer", vpos)
            return base**value
        return base

    def base(self):
        kind, value, pos = self.take()
        p = self.p
        if kind == "D":
            return DiffOperator.d(p)
        if kind == "x":
            return _const_op(XSeries.x(p))
        if kind == "int":
            return _const_op(XSeries.monomial(p, 0, (), value))
        if kind == "(":
            inner = self.expr()
            kind2, _, pos2 = self.take()
            if kind2 != ")":
                raise OperatorSyntaxError("expected ')'", pos2)
            return inner
        if kind == "end":
            raise OperatorSyntaxError("unexpected end of expression", pos)
        raise OperatorSyntaxError(f"unexpected {value!r}", pos)


def _const_op(f):
    return operator_from_coeffs(f.p, [f])


def parse_operator(src, p):
    """Parse an expression in D and x into a normal-form DiffOperator over F_p."""
    check_prime(p)
    parser = _Parser(src, p)
    op = parser.expr()
    kind, value, pos = parser.peek()
    if kind != "end":
        raise OperatorSyntaxError(f"unexpected {value!r}", pos)
    return op


def format_operator(L):
    """Expression string that parse_operator reads back (z-free exact coefficients)."""
    parts = []
    for j in range(len(L.coeffs) - 1, -1, -1):
        a = L.coeffs[j]
        if a.is_zero():
            continue
        body = a.to_text(with_order=False)
        dpart = "" if j == 0 else ("D" if j == 1 else f"D^{j}")
        parts.append(f"({body})*{dpart}" if dpart else f"({body})")
    return " + ".join(parts) or "0"


# -- series output ----------------------------------------------------------------

def series_to_json(f):
    terms = sorted(f.terms.items(), key=lambda t: (t[0][0], t[0][1]))
    return {
        "p": f.p,
        "prec": None if f.prec == INF else f.prec,
        "terms": [
            {"x": d, "z": {str(i + 1): e for i, e in enumerate(m) if e}, "c": c}
            for (d, m), c in terms
        ],
    }


def format_series(f, mode="text"):
    if mode == "json":
        return json.dumps(series_to_json(f), sort_keys=True)
    if mode != "text":
        raise ValueError(f"unknown format {mode!r}")
    return f.to_text()


# -- commands ------------------------------------------------------------------------

def _emit(items, fmt, out):
    """items: list of (label, series)."""
    if fmt == "json":
        out.write(json.dumps([{"label": k, "series": series_to_json(v)} for k, v in items], sort_keys=True))
        out.write("\n")
    else:
        for label, f in items:
            out.write(f"{label}: {format_series(f)}\n" if label else f"{format_series(f)}\n")


def _operator(args):
    L = parse_operator(args.op, args.p)
    if is_zero_operator(L):
        raise XericError("the zero operator has no solutions to compute")
    return L


def cmd_solve(args, out):
    basis = solve_xeric(_operator(args), args.prec)
    _emit([(f"rho={km.rho} i={km.i}", y) for km, y in basis], args.format, out)
    return 0


def cmd_special(args, out):
    if args.fn == "exp":
        f = exp_xeric(args.p, args.prec)
    elif args.fn == "exp-tilde":
        f = exp_tilde(args.p, args.prec).product
    else:
        f = trig(args.fn, args.p, args.prec)
    _emit([(args.fn, f)], args.format, out)
    return 0


def cmd_curvature(args, out):
    L = _operator(args)
    m = args.p**args.k
    if L.order == 1 and not args.matrix:
        a = monic(L, args.prec + m).coeffs[0]
        f = pk_curvature_order1(a, args.k, args.prec)
        _emit([(f"a_{m}", f)], args.format, out)
        return 0
    A = companion_matrix(L, args.prec + m)
    C = curvature_sequence(A, args.k, args.prec).curvature
    items = [(f"A_{m}[{r},{c}]", C[r][c]) for r in range(len(C)) for c in range(len(C))]
    _emit(items, args.format, out)
    return 0


def cmd_decompose(args, out):
    r = decompose(_operator(args), args.levels, args.prec)
    items = [(f"h_{lv.i}", lv.h) for lv in r.levels]
    items.append(("product", r.product))
    items.append(("residual", r.residual))
    _emit(items, args.format, out)
    if args.format == "text":
        out.write(f"residual order: {r.residual_order}\n")
    return 0


def cmd_verify(args, out):
    from .checks import run_suite

    results = run_suite(args.suite, args.p, args.prec)
    failures = [{"suite": s, "check": c, "error": r} for s, c, r in results if r is not None]
    report = {
        "p": args.p,
        "prec": args.prec,
        "suite": args.suite,
        "passed": [f"{s}/{c}" for s, c, r in results if r is None],
        "failures": failures,
    }
    out.write(json.dumps(report, sort_keys=True) + "\n")
    return 1 if failures else 0


def _prime(text):
    try:
        return check_prime(int(text))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive(text):
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return n


def build_parser():
    ap = argparse.ArgumentParser(prog="xeric", description="Exact solutions of differential equations over F_p.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp, prec=20):
        sp.add_argument("--p", type=_prime, required=True, help="the characteristic")
        sp.add_argument("--prec", type=_positive, default=prec, help="work modulo x^prec")
        sp.add_argument("--format", choices=("text", "json"), default="text")

    sp = sub.add_parser("solve", help="xeric basis of L y = 0")
    common(sp)
    sp.add_argument("--op", required=True)
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("special", help="exp, exp~ and trigonometric functions")
    common(sp)
    sp.add_argument("--fn", required=True, choices=("exp", "exp-tilde", "sin", "cos", "sinh", "cosh", "eve", "odd"))
    sp.set_defaults(func=cmd_special)

    sp = sub.add_parser("curvature", help="p^k-curvature of an operator")
    common(sp)
    sp.add_argument("--k", type=int, default=1)
    sp.add_argument("--op", required=True)
    sp.add_argument("--matrix", action="store_true", help="print the companion-matrix curvature")
    sp.set_defaults(func=cmd_curvature)

    sp = sub.add_parser("decompose", help="product decomposition of a first order solution")
    common(sp, prec=30)
    sp.add_argument("--levels", type=int, default=1)
    sp.add_argument("--op", required=True)
    sp.set_defaults(func=cmd_decompose)

    sp = sub.add_parser("verify", help="run the self-check suites")
    common(sp, prec=40)
    sp.add_argument("--suite", choices=("derivation", "special", "curvature", "decomp", "all"), default="all")
    sp.set_defaults(func=cmd_verify)
    return ap


def main(argv=None, out=None):
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (XericError, ValueError) as exc:
        print(f"xeric: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
