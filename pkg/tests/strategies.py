"""Shared hypothesis strategies for exact polynomials."""

from fractions import Fraction

from hypothesis import strategies as st

from lndkit.exactpoly import Polynomial

rationals = st.builds(
    Fraction,
    st.integers(min_value=-6, max_value=6),
    st.integers(min_value=1, max_value=4),
)


def polynomials(varnames, max_deg=3, max_terms=4):
    n = len(varnames)
    monos = st.tuples(*[st.integers(min_value=0, max_value=max_deg)] * n)
    return st.dictionaries(monos, rationals, max_size=max_terms).map(lambda t: Polynomial(varnames, t))


def points(n):
    return st.tuples(*[rationals] * n)
