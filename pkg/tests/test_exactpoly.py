from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings

from lndkit.exactpoly import (
    PolyContextError,
    Polynomial,
    format_polynomial,
    partial_derivative,
    poly_arith,
    poly_eval,
    variables,
)
from strategies import points, polynomials

UV = ("u", "v")
XYZ = ("x", "y", "z")
A4 = ("a1", "a2", "a3", "a4")


def test_difference_of_squares():
    u, v = variables(UV)
    assert poly_arith(u + v, u - v, "mul") == u**2 - v**2


def test_self_subtraction_is_zero():
    u, v = variables(UV)
    a = 3 * u**2 * v - Fraction(1, 2)
    assert poly_arith(a, a, "sub").is_zero()


def test_appendix_monomial_product():
    a1, a2, a3, a4 = variables(A4)
    assert poly_arith(a2**2 * a3, a4, "mul") == Polynomial.monomial(A4, (0, 2, 1, 1))


def test_context_mismatch():
    u, _ = variables(UV)
    x, _, _ = variables(XYZ)
    with pytest.raises(PolyContextError):
        u + x


def test_partial_derivatives():
    u, v = variables(UV)
    assert partial_derivative(u**3, "u") == 3 * u**2
    assert partial_derivative(u, "v").is_zero()
    a1, a2, a3, a4 = variables(A4)
    assert partial_derivative(a2**2 * a3, "a2") == 2 * a2 * a3
    with pytest.raises(PolyContextError):
        partial_derivative(u, "w")


def test_evaluation():
    x, y, z = variables(XYZ)
    assert poly_eval(x * y - z**3 + 1, (1, 7, 2)) == 0
    assert poly_eval(Polynomial.zero(XYZ), (5, 6, 7)) == 0
    (u,) = variables(("u",))
    assert poly_eval(u**2, (Fraction(3, 2),)) == Fraction(9, 4)
    with pytest.raises(PolyContextError):
        poly_eval(u, (1, 2))


def test_grevlex_leading_term():
    a1, a2, a3, a4 = variables(A4)
    f = a1 * a4 - a2**2 * a3 - 1
    assert f.leading_monomial() == (0, 2, 1, 0)
    x, y, z = variables(XYZ)
    # same degree: grevlex prefers the monomial with the smaller last exponent
    assert (x * z + y**2).leading_monomial() == (0, 2, 0)


def test_format():
    u, v = variables(UV)
    assert format_polynomial(Fraction(3, 2) * u**2 * v - v + 1) == "3/2*u^2*v - v + 1"
    assert str(Polynomial.zero(UV)) == "0"
    assert str(-u) == "-u"


def _sym(f: Polynomial):
    syms = sympy.symbols(f.varnames)
    return sum((sympy.Rational(c.numerator, c.denominator) *
                sympy.Mul(*[s**e for s, e in zip(syms, m)]) for m, c in f.items()), sympy.Integer(0))


@settings(max_examples=60, deadline=None)
@given(polynomials(XYZ), polynomials(XYZ))
def test_product_matches_sympy(f, g):
    assert sympy.expand(_sym(f * g) - _sym(f) * _sym(g)) == 0


@settings(max_examples=60, deadline=None)
@given(polynomials(UV), polynomials(UV), polynomials(UV))
def test_ring_axioms(f, g, h):
    assert f + g == g + f
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f - f == Polynomial.zero(UV)


@settings(max_examples=60, deadline=None)
@given(polynomials(UV), polynomials(UV))
def test_leibniz_rule(f, g):
    assert (f * g).derivative("u") == f.derivative("u") * g + f * g.derivative("u")


@settings(max_examples=60, deadline=None)
@given(polynomials(XYZ), polynomials(XYZ), points(3))
def test_evaluation_is_homomorphism(f, g, p):
    assert (f * g).evaluate(p) == f.evaluate(p) * g.evaluate(p)
    assert (f + g).evaluate(p) == f.evaluate(p) + g.evaluate(p)


@settings(max_examples=40, deadline=None)
@given(polynomials(UV), polynomials(UV), polynomials(UV))
def test_substitution_is_composition(f, g, h):
    p = (Fraction(2, 3), Fraction(-5, 2))
    assert f.substitute([g, h]).evaluate(p) == f.evaluate((g.evaluate(p), h.evaluate(p)))
