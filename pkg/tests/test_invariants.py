from fractions import Fraction

import pytest
import sympy

from lndkit.catalog import get_entry, make_dg_surface
from lndkit.errors import ArgumentError, PointNotOnVariety
from lndkit.fpalgebra import FPAlgebra
from lndkit.invariants import (
    Degenerate,
    GeneratorFamily,
    SubspaceBasis,
    Spans,
    appendix_determinant_closed_form,
    appendix_span,
    derksen_truncated,
    flow_coefficient,
    flow_shift,
    kernel_basis,
    ml_truncated,
    separates_points,
    subalgebra_membership,
    vandermonde_shifted_det,
)
from lndkit.lnd import Derivation, certify

PLANE = FPAlgebra.from_relations(("u", "v"))
DU = Derivation.partial(PLANE, "u")
DV = Derivation.partial(PLANE, "v")


def _span(A, d, elems):
    return SubspaceBasis.from_elements(A, d, elems)


def test_kernel_of_partial():
    v = PLANE.gen("v")
    assert kernel_basis(DU, 2) == _span(PLANE, 2, [1, v, v**2])


def test_ml_examples():
    assert ml_truncated([DU, DV], 3) == _span(PLANE, 3, [1])
    C = get_entry("cstar_c2")
    s, t = C.algebra.gen("s"), C.algebra.gen("t")
    assert ml_truncated(C.derivation_list(), 1) == _span(C.algebra, 1, [1, s, t])
    R = get_entry("russell")
    x = R.algebra.gen("x")
    assert ml_truncated(R.derivation_list(), 2) == _span(R.algebra, 2, [1, x, x**2])
    with pytest.raises(ArgumentError):
        ml_truncated([], 2)


def test_derksen_examples():
    D = derksen_truncated([DU, DV], 2)
    assert D.is_full() and D.dim == 6
    C = get_entry("cstar_c2")
    assert derksen_truncated(C.derivation_list(), 2).is_full()
    single = derksen_truncated([DU], 1)
    assert single == _span(PLANE, 1, [1, PLANE.gen("v")]) and not single.is_full()


def test_subalgebra_membership():
    u, v = PLANE.gens()
    assert subalgebra_membership(u**2, [u], 2)
    assert not subalgebra_membership(v, [u], 3)
    e = make_dg_surface(3)
    gens = [flow_shift(3, t) for t in (1, 2, 3)] + [e.generators["y"]]
    assert subalgebra_membership(e.generators["x2"], gens, 6)


def test_appendix_span_n3():
    e = make_dg_surface(3)
    x0, x1, x2 = (e.generators[f"x{k}"] for k in range(3))
    assert flow_shift(3, 1) == 3 * x0 + 3 * x1 + x2
    assert flow_shift(3, 2) == 6 * x0 + 12 * x1 + 8 * x2
    assert flow_shift(3, 3) == 9 * x0 + 27 * x1 + 27 * x2
    res = appendix_span(3, [1, 2, 3])
    assert isinstance(res, Spans)
    assert res.matrix == ((3, 3, 1), (6, 12, 8), (9, 27, 27))
    assert res.det == 108 == sympy.Matrix(res.matrix).det()


@pytest.mark.parametrize("ts", [[1, 1, 2], [0, 1, 2], [1, 2]])
def test_appendix_span_preconditions(ts):
    with pytest.raises(ArgumentError):
        appendix_span(3, ts)


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_determinant_closed_form(n):
    ts = [Fraction(k, 2) for k in range(1, n + 1)]
    assert appendix_span(n, ts).det == appendix_determinant_closed_form(n, ts) != 0


def test_flow_coefficients_and_vandermonde():
    assert [flow_coefficient(4, k) for k in range(4)] == [4, 6, 4, 1]
    assert vandermonde_shifted_det([1, 2, 3]) == sympy.Matrix([[1, 1, 1], [2, 4, 8], [3, 9, 27]]).det()


def test_separation_examples():
    F = GeneratorFamily.of({"u": PLANE.gen("u"), "v": PLANE.gen("v")})
    (res,) = separates_points(F, [((0, 0), (1, 0))])
    assert res.separated and res.witness == "u"
    line = FPAlgebra.from_relations(("u",))
    (res,) = separates_points(GeneratorFamily.of({"sq": line.gen("u") ** 2}), [((1,), (-1,))])
    assert not res.separated
    e = make_dg_surface(3)
    with pytest.raises(PointNotOnVariety):
        separates_points(e.generators, [((2, 1, 1, Fraction(3, 2)), (1, 0, 0, 1))])


def test_generator_witness_must_kill():
    e = make_dg_surface(3)
    with pytest.raises(ArgumentError):
        GeneratorFamily.of({"y": e.generators["y"]}, {"y": e.derivations["delta"]})


def test_subspace_operations():
    u, v = PLANE.gens()
    a = _span(PLANE, 2, [1, u, u * v])
    b = _span(PLANE, 2, [1, v, u * v + u])
    assert a.intersect(b) == _span(PLANE, 2, [1, u * v + u])
    assert a.intersect(_span(PLANE, 2, [v, v**2])).dim == 0
    assert _span(PLANE, 2, [1]).issubspace(a)
    assert a.contains(2 * u - 3) and not a.contains(v)
    assert str(_span(PLANE, 1, [1, u])) == "span{u, 1}"
