from fractions import Fraction

import pytest
from hypothesis import given, settings

from lndkit.cli.dsl import ParseError, parse_expression, parse_rational
from lndkit.exactpoly import Polynomial, variables
from strategies import polynomials

XYZT = ("x", "y", "z", "t")


def test_russell_relation():
    x, y, z, t = variables(XYZT)
    assert parse_expression("x + x^2*y + z^2 + t^3", XYZT) == x + x**2 * y + z**2 + t**3


def test_rational_coefficient():
    u, v = variables(("u", "v"))
    f = parse_expression("3/2*u - v", ("u", "v"))
    assert f == Fraction(3, 2) * u - v


def test_leading_minus_and_whitespace():
    u, v = variables(("u", "v"))
    assert parse_expression("  - u ^ 2 *v+ 1", ("u", "v")) == -(u**2) * v + 1
    assert parse_expression("0", ("u", "v")).is_zero()


@pytest.mark.parametrize("text,column,fragment", [
    ("u^(2)", 3, "unexpected character"),
    ("2u", 2, "expected '+'"),
    ("3/0*u", 3, "zero denominator"),
    ("u + w", 5, "unknown variable"),
    ("u +", 4, "end of input"),
    ("u - - v", 5, "expected a coefficient"),
])
def test_errors_are_positioned(text, column, fragment):
    with pytest.raises(ParseError) as info:
        parse_expression(text, ("u", "v"))
    assert info.value.line == 1 and info.value.column == column
    assert fragment in str(info.value)


def test_multiline_position():
    with pytest.raises(ParseError) as info:
        parse_expression("u +\n  v^", ("u", "v"))
    assert (info.value.line, info.value.column) == (2, 5)


def test_parse_rational():
    assert parse_rational("-7/4") == Fraction(-7, 4)
    assert parse_rational(" 3 ") == 3
    assert parse_rational(5) == 5
    with pytest.raises(ParseError):
        parse_rational("1/0")
    with pytest.raises(ParseError):
        parse_rational("1.5")


@settings(max_examples=100, deadline=None)
@given(polynomials(XYZT, max_deg=4, max_terms=6))
def test_round_trip(f: Polynomial):
    assert parse_expression(str(f), XYZT) == f
