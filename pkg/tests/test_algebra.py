"""Scalars, super-commutative polynomials and truncated relation ideals."""

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import RING, polynomials, scalars
from linfty.algebra import (
    I,
    ParameterList,
    RelationIdeal,
    Scalar,
    SuperPolynomial,
    format_polynomial,
    format_scalar,
    ideal_equal,
    poly_mul,
)
from linfty.errors import AlgebraError, ParseError


def to_sympy(s: Scalar):
    return sympy.Rational(s.re.numerator, s.re.denominator) + sympy.I * sympy.Rational(
        s.im.numerator, s.im.denominator)


# Scalar ----------------------------------------------------------------------


@given(scalars, scalars)
@settings(deadline=None)
def test_scalar_ring_ops_match_sympy(a, b):
    for ours, theirs in ((a + b, to_sympy(a) + to_sympy(b)),
                         (a - b, to_sympy(a) - to_sympy(b)),
                         (a * b, to_sympy(a) * to_sympy(b))):
        assert sympy.expand(to_sympy(ours) - theirs) == 0


@given(scalars, scalars.filter(bool))
@settings(deadline=None)
def test_scalar_division_matches_sympy(a, b):
    assert sympy.expand(to_sympy(a / b) - to_sympy(a) / to_sympy(b)) == 0


@given(scalars)
def test_sqrt_of_square_is_a_root(a):
    r = (a * a).sqrt()
    assert r is not None and r * r == a * a


@pytest.mark.parametrize("text, value", [
    ("3/2", Scalar(Fraction(3, 2))),
    ("i", I),
    ("-3/2i", Scalar(0, Fraction(-3, 2))),
    ("1+2i", Scalar(1, 2)),
    ("(1-i)*(1+i)", Scalar(2)),
])
def test_scalar_parse(text, value):
    assert Scalar.parse(text) == value


@pytest.mark.parametrize("value, text", [
    (Scalar(Fraction(-1, 2)), "-1/2"), (Scalar(0, 1), "i"), (Scalar(1, -2), "1-2i"), (Scalar(0), "0"),
])
def test_scalar_format(value, text):
    assert format_scalar(value) == text


def test_sqrt_not_in_gaussian_rationals():
    assert Scalar(2).sqrt() is None
    assert Scalar(-4).sqrt() * Scalar(-4).sqrt() == Scalar(-4)


def test_division_by_zero():
    with pytest.raises(AlgebraError):
        Scalar(1) / Scalar(0)


def test_scalar_parse_error_has_position():
    with pytest.raises(ParseError) as err:
        Scalar.parse("1 + $")
    assert err.value.column == 5


# SuperPolynomial --------------------------------------------------------------


def test_odd_parameters_anticommute():
    r = ParameterList.of("theta1", "theta2")
    a, b = SuperPolynomial.variable("theta1", r), SuperPolynomial.variable("theta2", r)
    assert a * b == -(b * a)
    assert not a * a


def test_polynomial_text_roundtrip():
    r = ParameterList.of("t1", "theta1", "theta2")
    p = SuperPolynomial.parse("2*t1^2*theta2 - theta2*theta1 + 1/3", r)
    assert SuperPolynomial.parse(format_polynomial(p), r) == p
    assert str(SuperPolynomial.parse("theta2*theta1", r)) == "-theta1*theta2"


@given(polynomials(), polynomials(), polynomials())
@settings(max_examples=60)
def test_multiplication_is_associative_and_distributive(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(polynomials(), polynomials())
@settings(max_examples=60)
def test_supercommutativity(a, b):
    for pa in (a.component(k) for k in range(4)):
        for part_a in _parity_split(pa):
            for part_b in _parity_split(b):
                sign = -1 if part_a.parity() and part_b.parity() else 1
                assert part_a * part_b == (part_b * part_a).scale(Scalar(sign))


def _parity_split(p):
    even = {m: c for m, c in p.terms.items() if not p.ring.monomial_parity(m)}
    odd = {m: c for m, c in p.terms.items() if p.ring.monomial_parity(m)}
    return [SuperPolynomial(p.ring, t) for t in (even, odd) if t]


def test_substitute_and_truncate():
    r = ParameterList.of("t1", "t2")
    p = SuperPolynomial.parse("t1^3 + t1*t2 + t2", r)
    assert p.truncate(2) == SuperPolynomial.parse("t1*t2 + t2", r)
    assert p.substitute({"t1": 2}) == SuperPolynomial.parse("8 + 3*t2", r)
    assert poly_mul(p, SuperPolynomial.constant(0, r)) == SuperPolynomial.zero(r)


# RelationIdeal ----------------------------------------------------------------


def _sympy_truncated_member(p, gens, ring, T):
    """Membership in (gens) + (degree > T) for commuting variables, via a Groebner basis."""
    syms = sympy.symbols(ring.names)

    def conv(q):
        return sum((to_sympy(c) * sympy.prod([s ** e for s, e in zip(syms, m)])
                    for m, c in q.terms.items()), sympy.Integer(0))

    extra = [sympy.prod([s ** e for s, e in zip(syms, m)]) for m in ring.monomials_of_degree(T + 1)]
    G = sympy.groebner([conv(g) for g in gens] + extra, *syms, order="grevlex", domain="QQ")
    return G.contains(conv(p))


EVEN = ParameterList.of("t1", "t2", "t3")


@given(polynomials(EVEN, 3, 3), st.lists(polynomials(EVEN, 2, 3).filter(bool), min_size=1, max_size=2))
@settings(max_examples=20, deadline=None)
def test_membership_matches_groebner_oracle(p, gens):
    T = 4
    ideal = RelationIdeal(gens, EVEN, T)
    # build a guaranteed member and test both the member and the random p
    member = sum((g * q for g, q in zip(gens, [p, p + SuperPolynomial.constant(1, EVEN)])),
                 SuperPolynomial.zero(EVEN)).truncate(T)
    assert ideal.contains(member)
    assert ideal.contains(p.truncate(T)) == _sympy_truncated_member(p.truncate(T), gens, EVEN, T)


@given(polynomials(RING, 3, 4), st.lists(polynomials(RING, 2, 3).filter(bool), min_size=1, max_size=3))
@settings(max_examples=60, deadline=None)
def test_reduce_is_idempotent_and_stays_in_the_class(p, gens):
    ideal = RelationIdeal(gens, RING, 4)
    p = p.truncate(4)
    r = ideal.reduce(p)
    assert ideal.reduce(r) == r
    assert ideal.contains(p - r)
    for g in ideal.generators:
        assert ideal.contains(g)


def test_odd_ideal_membership():
    r = ParameterList.of("t1", "theta1", "theta2", "theta3", "theta4")
    P = lambda s: SuperPolynomial.parse(s, r)  # noqa: E731
    ideal = RelationIdeal([P("theta1*theta2 - theta3*theta4"), P("theta2*theta4 + t1*theta1*theta2")], r, 6)
    assert ideal.contains(P("theta1*theta2*theta4"))
    assert ideal.contains(P("t1*theta1*theta2*theta3"))
    assert not ideal.contains(P("theta1*theta2"))
    assert ideal.contains(P("theta3*(theta1*theta2 - theta3*theta4)"))


def test_ideal_equal_and_truncation():
    r = ParameterList.of("t1", "t2")
    P = lambda s: SuperPolynomial.parse(s, r)  # noqa: E731
    a = RelationIdeal([P("t1"), P("t2")], r, 3)
    b = RelationIdeal([P("t1 + t2"), P("t1 - t2")], r, 3)
    assert ideal_equal(a, b, 3)
    assert not ideal_equal(a, RelationIdeal([P("t1")], r, 3), 3)
    # in the ring truncated above degree 1, t1^2 is zero
    assert RelationIdeal([P("t2")], r, 1).contains(P("t1^2").truncate(1))
    with pytest.raises(AlgebraError):
        a.reduce(P("t1^4"))


def test_empty_ideal_reduces_to_itself():
    r = ParameterList.of("t1")
    p = SuperPolynomial.parse("t1 + 1", r)
    assert RelationIdeal([], r).reduce(p) == p
    assert str(RelationIdeal([], r)) == "(0)"
