import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bvpnewton.errors import DomainError, ParseError
from bvpnewton.expr import Binary, Call, Env, Number, Unary, Variable, evaluate, parse, tokenize

PAPER_RHS = "(1/8)*(32 + 2*x^3 - y*yp)"


def ev(text, x=0.0, y=0.0, yp=0.0):
    return evaluate(parse(text), Env(x, y, yp))


def test_single_variable():
    assert parse("x") == Variable("x")


def test_constant():
    assert ev("7", 1.0, 2.0, 3.0) == 7.0


def test_paper_rhs_at_exact_solution():
    # y = x^2 + 16/x at x = 1: y = 17, y' = 2 - 16 = -14, y'' = 2 + 32 = 34
    assert ev(PAPER_RHS, 1.0, 17.0, -14.0) == pytest.approx(34.0, abs=1e-12)


def test_paper_rhs_matches_hand_expansion():
    for x, y, yp in [(1.5, 15.7, -3.2), (2.9, 13.9, 2.4), (-1.0, 0.5, 8.0)]:
        hand = 4 + x**3 / 4 - y * yp / 8
        assert ev(PAPER_RHS, x, y, yp) == pytest.approx(hand, rel=1e-14)


@pytest.mark.parametrize("text, value", [
    ("2+3*4", 14.0),
    ("2^3^2", 512.0),
    ("-2^2", -4.0),
    ("(2+3)*4", 20.0),
    ("10-4-3", 3.0),
    ("64/4/2", 8.0),
    ("2^-1", 0.5),
    ("-3*-2", 6.0),
    ("--2", 2.0),
    ("2*-3^2", -18.0),
    ("  1.5e1 +  .5 ", 15.5),
])
def test_precedence(text, value):
    assert ev(text) == value


def test_tree_shapes():
    assert parse("-2^2") == Unary("-", Binary("^", Number(2.0), Number(2.0)))
    assert parse("2^3^2") == Binary("^", Number(2.0), Binary("^", Number(3.0), Number(2.0)))
    assert parse("1-2-3") == Binary("-", Binary("-", Number(1.0), Number(2.0)), Number(3.0))
    assert parse("sqrt(yp)") == Call("sqrt", Variable("yp"))


def test_functions():
    assert ev("sin(x)+cos(x)", 0.3) == pytest.approx(math.sin(0.3) + math.cos(0.3), rel=1e-15)
    assert ev("exp(log(x))", 2.5) == pytest.approx(2.5, rel=1e-15)
    assert ev("sqrt(abs(y))", y=-9.0) == 3.0


@pytest.mark.parametrize("text, pos", [
    ("4 +", 3),
    ("(1 + 2", 6),
    ("1 + 2)", 5),
    ("2x", 1),
    ("z + 1", 0),
    ("x $ 2", 2),
    ("sin x", 4),
    ("*3", 0),
    ("", 0),
    ("   ", 0),
    ("x(2)", 1),
])
def test_parse_errors_are_positioned(text, pos):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert info.value.position == pos
    assert 0 <= info.value.position <= len(text)


def test_restricted_variables():
    parse("x^2 + 16/x", ("x",))
    with pytest.raises(ParseError):
        parse("x + y", ("x",))


@pytest.mark.parametrize("text", ["1/(x - x)", "log(x - 1)", "sqrt(-1 - x^2)", "exp(1000)", "(-8)^0.5"])
def test_domain_errors(text):
    with pytest.raises(DomainError) as info:
        ev(text, 1.0)
    assert info.value.subexpression


def test_division_message_names_subexpression():
    with pytest.raises(DomainError, match=r"\(1 / \(x - x\)\)"):
        ev("1/(x-x)", 3.0)


def test_vectorized_evaluation():
    x = np.linspace(1, 3, 5)
    out = evaluate(parse("x^2 + 16/x"), {"x": x})
    np.testing.assert_allclose(out, x**2 + 16 / x, rtol=1e-15)


def test_tokenizer_positions():
    toks = tokenize(" 12 +x")
    assert [(t.kind, t.text, t.pos) for t in toks] == [
        ("num", "12", 1), ("op", "+", 4), ("name", "x", 5), ("end", "", 6)]


_finite = st.floats(-1e3, 1e3, allow_nan=False)


@given(_finite, _finite, _finite)
def test_parse_eval_agrees_with_python(a, b, c):
    got = ev("x*y - yp/4 + (x - y)*(yp + 1)", a, b, c)
    assert got == pytest.approx(a * b - c / 4 + (a - b) * (c + 1), rel=1e-12, abs=1e-9)


@given(st.text(alphabet="xy+-*/^() 0123.", max_size=20))
def test_parser_never_crashes_unexpectedly(text):
    try:
        parse(text)
    except ParseError as exc:
        assert 0 <= exc.position <= len(text)
