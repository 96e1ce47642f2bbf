import oracles
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nilfilt.core import LEX, Ring
from nilfilt.ideal import (
    ContainmentError,
    Ideal,
    IterationCapError,
    NotZeroDimensionalError,
    colon,
    contains,
    coordinates,
    equals,
    ideal,
    ideal_sum,
    intersect,
    is_member,
    power,
    product,
    quotient_basis,
    quotient_dim,
    saturate,
    subquotient_dim,
)

R = Ring(("x", "y"))
R3 = Ring(("x", "y", "z"))


def I(*gens, ring=R):
    return ideal(ring, *gens)


def test_is_member_examples():
    assert is_member(R("y^3"), I("x*y", "y^2+x^3"))
    assert not is_member(R("x^2"), I("x^3", "x*y", "y^4"))
    assert is_member(R.zero(), I("x"))


def test_sum_product_power_examples():
    assert power(I("x", "y"), 2) == I("x^2", "x*y", "y^2")
    assert power(I("x", "y"), 0) == Ideal.unit(R)
    assert ideal_sum(I("x"), I("y")) == I("x", "y")
    got = product(I("x", "y", ring=R3), I("x^2", "x*y", "y^2", "z", ring=R3))
    assert got == I("x^3", "x^2*y", "x*y^2", "y^3", "x*z", "y*z", ring=R3)


def test_intersect_examples():
    assert intersect(I("x^2", "y"), I("x", "y^3")) == I("x^2", "x*y", "y^3")
    A = I("x^2+y", "x*y")
    assert intersect(A, A) == A
    assert intersect(I("x"), I("y")) == I("x*y")


def test_colon_examples():
    J = I("y^2+x^3", "x*y", "z", ring=R3)
    assert colon(J, I("x", "y", "z", ring=R3)) == I("x^3", "x*y", "y^2", "z", ring=R3)
    assert colon(I("x^3", "x*y", "y^4"), I("x", "y")) == I("x^2", "x*y", "y^3")
    A = I("x^3", "y^2")
    assert colon(A, Ideal.unit(R)) == A
    with pytest.raises(ValueError):
        colon(A, Ideal(R, []))


def test_saturate_examples():
    assert saturate(I("x^2", "x*y"), I("y")) == I("x")
    A = I("x^2", "x*y")
    assert saturate(A, Ideal.unit(R)) == A
    assert saturate(I("x^2", "x*y"), I("x")).is_unit()


def test_saturate_cap():
    with pytest.raises(IterationCapError):
        saturate(I("x^5", "x*y"), I("y"), cap=0)


def test_equals_and_contains():
    assert equals(I("x", "y"), I("y", "x"))
    assert contains(I("x", "y^2"), I("x^2", "x*y", "y^2"))
    assert not contains(I("x^2", "x*y", "y^2"), I("x", "y^2"))


def test_quotient_dim_examples():
    assert quotient_dim(I("x^3", "x*y", "y^4")) == 6
    assert quotient_dim(I("y^2+x^3", "x*y")) == 5
    assert quotient_dim(I("x", "y")) == 1
    assert quotient_dim(Ideal.unit(R)) == 0
    with pytest.raises(NotZeroDimensionalError):
        quotient_dim(I("x"))


def test_subquotient_dim_examples():
    assert subquotient_dim(I("x", "y"), I("x^2", "x*y", "y^2")) == 2
    assert subquotient_dim(I("x", "y"), I("x", "y")) == 0
    assert subquotient_dim(I("x", "y^2"), I("x^2", "x*y", "y^2")) == 1
    with pytest.raises(ContainmentError):
        subquotient_dim(I("x^2", "y"), I("x", "y"))


def test_quotient_basis_and_coordinates():
    Q = quotient_basis(I("x^2", "x*y", "y^2"))
    assert sorted(Q.labels()) == ["1", "x", "y"]
    vec = coordinates(R("3*x+2"), Q)
    assert dict(zip(Q.labels(), vec)) == {"1": 2, "x": 3, "y": 0}
    assert all(c == 0 for c in coordinates(R.zero(), Q))

    Q = quotient_basis(I("y^2+x^3", "x*y"))
    assert sorted(Q.labels()) == sorted(["1", "x", "x^2", "y", "y^2"])
    vec = coordinates(R("y^2"), Q)
    assert dict(zip(Q.labels(), vec))["y^2"] == 1 and sum(abs(c) for c in vec) == 1
    # x^3 = -y^2 modulo the ideal
    assert dict(zip(Q.labels(), coordinates(R("x^3"), Q)))["y^2"] == -1


def test_inclusion_exclusion():
    A, B = I("x^2", "y^3"), I("x^3", "x*y", "y^2")
    lhs = quotient_dim(ideal_sum(A, B)) + quotient_dim(intersect(A, B))
    assert lhs == quotient_dim(A) + quotient_dim(B)


def test_orders_agree():
    A = I("y^2+x^3", "x*y", "x^2*y-y^3")
    lexA = A.in_order(LEX)
    assert quotient_dim(lexA) == quotient_dim(A)


# monomial ideals in k[x,y,z] checked against exponent-divisibility brute force

NV, D = 3, 6
exps = st.tuples(*[st.integers(0, 3)] * NV).filter(any)
mono_ideals = st.lists(exps, min_size=1, max_size=4)


def _ideal(es):
    return Ideal(R3, [R3.monomial(e) for e in es])


def _members(K):
    return {u for u in oracles.monomials(NV, D) if is_member(R3.monomial(u), K)}


@settings(max_examples=40, deadline=None)
@given(mono_ideals, mono_ideals)
def test_monomial_ops_match_brute_force(a, b):
    A, B = _ideal(a), _ideal(b)
    assert _members(colon(A, B)) == oracles.colon(a, b, NV, D)
    assert _members(intersect(A, B)) == oracles.intersect(a, b, NV, D)
    assert _members(saturate(A, B)) == oracles.saturate(a, b, NV, D)
    prod = {tuple(p + q for p, q in zip(u, v)) for u in a for v in b}
    assert _members(product(A, B)) == {u for u in oracles.monomials(NV, D) if oracles.member(u, prod)}


@settings(max_examples=40, deadline=None)
@given(mono_ideals)
def test_monomial_quotient_dim(a):
    # add pure powers so the quotient is finite and fits in the box
    gens = list(a) + [(3, 0, 0), (0, 3, 0), (0, 0, 3)]
    assert quotient_dim(_ideal(gens)) == oracles.quotient_dim(gens, NV, 9)
