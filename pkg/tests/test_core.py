from fractions import Fraction

import pytest

from nilfilt.core import (
    DEGREVLEX,
    GF,
    LEX,
    QQ,
    Field,
    ModP,
    Polynomial,
    Ring,
    RingMismatchError,
    block_order,
    cmp_monomials,
    leading_term,
    poly_add,
    poly_mul,
)

R = Ring(("x", "y"))
RL = Ring(("x", "y"), order=LEX)


def test_cmp_monomials_examples():
    assert cmp_monomials((1, 0), (0, 2), LEX) == 1
    assert cmp_monomials((3, 0), (0, 2), DEGREVLEX) == 1
    assert cmp_monomials((2, 0), (1, 1), DEGREVLEX) == 1
    assert cmp_monomials((1, 1), (1, 1), DEGREVLEX) == 0


def test_degrevlex_breaks_ties_on_last_variable():
    # x*z < y^2 in degrevlex (x>y>z), the reverse of lex
    assert cmp_monomials((1, 0, 1), (0, 2, 0), DEGREVLEX) == -1
    assert cmp_monomials((1, 0, 1), (0, 2, 0), LEX) == 1


def test_block_order_eliminates_first_block():
    order = block_order(1, DEGREVLEX, DEGREVLEX)
    # anything with t beats any t-free monomial
    assert cmp_monomials((1, 0, 0), (0, 5, 5), order) == 1
    assert cmp_monomials((0, 2, 0), (0, 1, 1), order) == 1


def test_poly_add_examples():
    assert poly_add(R("x+y"), R("x-y")) == R("2*x")
    f = R("x^2 + 3*y")
    assert poly_add(f, R.zero()) == f
    assert poly_add(R("y^2+x^3"), R("-y^2")) == R("x^3")


def test_poly_mul_examples():
    assert poly_mul(R("x"), R("y")) == R("x*y")
    assert poly_mul(R("x+y"), R("x-y")) == R("x^2-y^2")
    f = R("x^2 + 3*y")
    assert poly_mul(f, R.one()) == f


def test_leading_term_examples():
    assert leading_term(R("y^2+x^3")) == ((3, 0), 1)
    assert leading_term(RL("y^2+x^3")) == ((3, 0), 1)
    assert leading_term(R("x^2+x*y")) == ((2, 0), 1)
    with pytest.raises(ValueError):
        leading_term(R.zero())


def test_ring_mismatch():
    S = Ring(("x", "z"))
    with pytest.raises(RingMismatchError):
        poly_add(R("x"), S("x"))
    with pytest.raises(RingMismatchError):
        poly_mul(R("x"), RL("x"))
    with pytest.raises(RingMismatchError):
        R.monomial((1, 2, 3))


def test_exact_rational_coefficients():
    f = R("1/3*x + 1/6*x")
    assert f.coefficient((1, 0)) == Fraction(1, 2)
    assert (f * 2).coefficient((1, 0)) == 1


def test_printing_is_canonical():
    assert str(R("y^2 + x^3")) == "x^3 + y^2"
    assert str(R("x^2 - y^2")) == "x^2 - y^2"
    assert str(R("-1/2*x*y + 3")) == "-1/2*x*y + 3"
    assert str(R.zero()) == "0"


def test_power_and_equality():
    assert R("x+y") ** 2 == R("x^2 + 2*x*y + y^2")
    assert R("x+y") ** 0 == R.one()
    assert hash(R("x+y")) == hash(R("y+x"))


def test_gf_field_warns_and_reduces():
    with pytest.warns(UserWarning, match="characteristic 0"):
        F = GF(5)
    S = Ring(("x",), F)
    f = S.constant(3) + S.constant(4)
    assert f.coefficient((0,)) == ModP(2, 5)
    assert (S.constant(2) * S.constant(3)).coefficient((0,)) == ModP(1, 5)
    assert F(Fraction(1, 2)) == ModP(3, 5)


def test_gf_rejects_composite_modulus():
    with pytest.raises(ValueError):
        Field(6)


def test_qq_default():
    assert R.field == QQ and R.field.name == "QQ"
    assert isinstance(Polynomial(R, {(1, 0): 2}).lc, Fraction)
