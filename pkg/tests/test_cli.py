import io
import json
import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from xeric.cli import (
    ExponentError,
    OperatorSyntaxError,
    format_operator,
    format_series,
    main,
    parse_operator,
    series_to_json,
)
from xeric.coeffring import zmono
from xeric.diffop import DiffOperator
from xeric.series import XSeries
from xeric.special import exp_xeric


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


def X(p, d=1):
    return XSeries.monomial(p, d)


def test_parse_examples():
    D = DiffOperator.d(3)
    assert parse_operator("D - 1", 3) == D - 1
    assert parse_operator("D*x", 3) == X(3) * D + 1
    log = parse_operator("x*D^2 - x^2*D^2 - x*D", 3)
    assert log == DiffOperator(3, [0, -X(3), X(3) - X(3, 2)])


def test_parse_reduces_literals_and_signs():
    D = DiffOperator.d(5)
    assert parse_operator("-D + 7", 5) == 2 - D
    assert parse_operator("(D + x)^2", 5) == D * D + 2 * X(5) * D + X(5, 2) + 1
    assert parse_operator("  D  ", 5) == D


@pytest.mark.parametrize(
    "src, pos",
    [("D +", 3), ("D $ 1", 2), ("(D - 1", 6), ("D 1", 2), ("", 0)],
)
def test_parse_errors(src, pos):
    with pytest.raises(OperatorSyntaxError) as info:
        parse_operator(src, 3)
    assert info.value.position == pos


def test_exponent_errors():
    with pytest.raises(ExponentError) as info:
        parse_operator("D^x", 3)
    assert info.value.position == 2
    with pytest.raises(ExponentError):
        parse_operator("D^-1", 3)


def test_format_series_examples():
    y = exp_xeric(3, 11)
    assert "(2*z1^2 + 2*z1 + 1)*x^7" in format_series(y)
    assert format_series(XSeries.zero(3)) == "0"
    assert json.loads(format_series(XSeries.zero(3), "json"))["terms"] == []
    t = series_to_json(XSeries.monomial(3, 3, zmono(1)))
    assert t["terms"] == [{"x": 3, "z": {"1": 1}, "c": 1}]
    assert t["prec"] is None
    with pytest.raises(ValueError):
        format_series(y, "xml")


def test_json_is_stable():
    a = run("solve", "--p", "3", "--prec", "11", "--op", "x*D - x", "--format", "json")
    b = run("solve", "--p", "3", "--prec", "11", "--op", "x*D - x", "--format", "json")
    assert a == b
    data = json.loads(a[1])
    assert data[0]["series"]["prec"] == 11
    assert data[0]["series"]["terms"][:3] == [
        {"c": 1, "x": 0, "z": {}}, {"c": 1, "x": 1, "z": {}}, {"c": 2, "x": 2, "z": {}},
    ]


coeff = st.lists(st.integers(0, 4), min_size=1, max_size=4)


@settings(max_examples=60)
@given(st.lists(coeff, min_size=1, max_size=4))
def test_format_parse_round_trip(cols):
    p = 5
    coeffs = [XSeries.from_list(p, c) for c in cols]
    if all(c.is_zero() for c in coeffs):
        coeffs[0] = XSeries.one(p)
    L = DiffOperator(p, coeffs)
    assert parse_operator(format_operator(L), p) == L


def test_solve_text():
    code, out = run("solve", "--p", "3", "--prec", "5", "--op", "x*D - x")
    assert code == 0
    assert out.strip() == "rho=0 i=0: 1 + x + 2*x^2 + 2*z1*x^3 + (2*z1 + 1)*x^4 + O(x^5)"


def test_special_commands():
    code, out = run("special", "--fn", "sin", "--p", "3", "--prec", "6")
    assert code == 0 and out.strip() == "sin: x + z1*x^3 + z1*x^5 + O(x^6)"
    code, out = run("special", "--fn", "exp-tilde", "--p", "3", "--prec", "3")
    assert out.strip() == "exp-tilde: 1 + x + 2*x^2 + O(x^3)"
    code, _ = run("special", "--fn", "eve", "--p", "2", "--prec", "6")
    assert code == 2


def test_curvature_commands():
    code, out = run("curvature", "--p", "3", "--k", "1", "--op", "D - 1")
    assert code == 0 and out.strip() == "a_3: 2 + O(x^20)"
    code, out = run("curvature", "--p", "3", "--op", "D^2 + 1", "--matrix", "--prec", "5")
    assert code == 0 and out.count("A_3[") == 4


def test_decompose_command():
    code, out = run("decompose", "--p", "3", "--levels", "1", "--prec", "12", "--op", "D - 1")
    assert code == 0
    assert out.startswith("h_0: 1 + x + 2*x^2")
    assert "residual order: 8" in out


def test_verify_command():
    code, out = run("verify", "--p", "3", "--prec", "30", "--suite", "derivation")
    report = json.loads(out)
    assert code == 0 and report["failures"] == []
    assert "derivation/leibniz" in report["passed"]


def test_exit_codes():
    assert run("solve", "--p", "3", "--op", "D +")[0] == 2
    assert run("solve", "--p", "3", "--op", "0")[0] == 2
    assert run("solve", "--p", "3", "--op", "x^2*D - 1")[0] == 2
    with pytest.raises(SystemExit) as info:
        run("solve", "--p", "4", "--op", "D")
    assert info.value.code == 2
    with pytest.raises(SystemExit):
        run("nonsense")


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "xeric", "solve", "--p", "2", "--prec", "4", "--op", "x*D - x"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.startswith("rho=0 i=0: 1 + x")
