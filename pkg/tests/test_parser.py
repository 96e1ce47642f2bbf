import pytest

from nilfilt.core import LEX, Ring
from nilfilt.ideal import ideal
from nilfilt.parser import EvalError, ParseError, eval_expr, parse_polynomial, parse_session

SESSION = """\
ring QQ[x,y,z]   # cuspidal C_{2,3}
ideal I = x, y, z
ideal J = y^2 + x^3,
          x*y, z
"""


def test_parse_session():
    s = parse_session(SESSION)
    R = s.ring
    assert R.vars == ("x", "y", "z") and R.field.name == "QQ" and R.order.name == "degrevlex"
    assert s.ideal("J") == ideal(R, "x^3+y^2", "x*y", "z")
    assert list(s.ideals) == ["I", "J"]


def test_order_clause():
    s = parse_session("ring QQ[x,y] order lex\nideal I = x")
    assert s.ring.order == LEX


def test_round_trip():
    s = parse_session(SESSION)
    again = parse_session(s.to_text())
    assert again.ring == s.ring
    assert all(again.ideal(n) == s.ideal(n) for n in s.ideals)
    canon = s.to_text(canonical=True)
    assert parse_session(canon).to_text(canonical=True) == canon


@pytest.mark.parametrize(
    "text,line,col",
    [
        ("ring QQ[x,y]\nideal I = x^2 +* y", 2, 16),
        ("ring QQ[x,x]", 1, 11),
        ("ring RR[x]", 1, 6),
        ("ring QQ[x]\nideal I = w", 2, 11),
        ("ring QQ[x]\nideal I = x\nideal I = x^2", 3, 7),
        ("ring QQ[x] order grlex", 1, 18),
        ("ring GF(6)[x]", 1, 9),
    ],
)
def test_parse_errors_have_position(text, line, col):
    with pytest.raises(ParseError) as info:
        parse_session(text)
    assert (info.value.line, info.value.col) == (line, col)
    assert str(info.value).startswith(f"line {line}, column {col}:")


def test_gf_session_warns():
    with pytest.warns(UserWarning, match="characteristic 0"):
        s = parse_session("ring GF(7)[x,y]\nideal I = 8*x + y")
    assert s.ideal("I") == ideal(s.ring, "x+y")


def test_parse_polynomial_coefficients():
    R = Ring(("x", "y"))
    assert parse_polynomial("-3/4*x^2*y + 2", R) == R.monomial((2, 1), -0.75) + R.constant(2)
    assert parse_polynomial("x*x", R) == R("x^2")


def test_unknown_ideal_name():
    s = parse_session(SESSION)
    with pytest.raises(KeyError, match="declared: I, J"):
        s.ideal("K")


def test_eval():
    s = parse_session(SESSION)
    R = s.ring
    assert eval_expr(s, "colon(J, I)") == ideal(R, "x^3", "x*y", "y^2", "z")
    assert eval_expr(s, "colon(J, power(I, 2))") == ideal(R, "x^2", "y", "z")
    assert eval_expr(s, "sum(J, product(I, I))") == ideal(R, "x^2", "x*y", "y^2", "z")
    assert eval_expr(s, "intersect(I, J)") == s.ideal("J")
    assert eval_expr(s, "saturate(J, I)").is_unit()


@pytest.mark.parametrize(
    "expr,col",
    [("colon(J, K)", 10), ("power(I)", 1), ("power(I, J)", 1), ("sum(I, 2)", 1), ("", 1)],
)
def test_eval_errors(expr, col):
    s = parse_session(SESSION)
    with pytest.raises(EvalError) as info:
        eval_expr(s, expr)
    assert info.value.col == col


@pytest.mark.parametrize(
    "text,line,col",
    [("ring QQ[x]\nideal J = x +", 2, 13), ("ring QQ[x]\nideal J = x -\nideal K = x", 2, 13), ("ring QQ[x]\nideal J = -", 2, 11)],
)
def test_dangling_operator(text, line, col):
    with pytest.raises(ParseError, match="dangling") as info:
        parse_session(text)
    assert (info.value.line, info.value.col) == (line, col)


def test_unknown_variable():
    with pytest.raises(ParseError, match="unknown variable"):
        parse_session("ring QQ[x]\nideal J = y")
