import pytest

from lndkit.catalog import (
    CATALOG_NAMES,
    dg_relation_search,
    get_entry,
    list_entries,
    make_affine_space,
    make_dg_surface,
    make_ym_surface,
)
from lndkit.errors import ArgumentError
from lndkit.invariants import derksen_truncated, ml_truncated
from lndkit.lnd import NilpotentWithBound, apply, check_well_defined, nilpotency_certificate


def test_affine_entries():
    e = make_affine_space(2)
    assert e.algebra.varnames == ("u", "v") and list(e.derivations) == ["d_u", "d_v"]
    assert ml_truncated(e.derivation_list(), 4).dim == 1
    assert derksen_truncated(e.derivation_list(), 3).is_full()
    assert make_affine_space(5).algebra.varnames == ("x1", "x2", "x3", "x4", "x5")
    with pytest.raises(ArgumentError):
        make_affine_space(0)


def test_russell_entry():
    e = get_entry("russell")
    da = e.derivations["delta_a"]
    assert check_well_defined(da)
    assert nilpotency_certificate(da, 10).bound <= 4
    x = e.algebra.gen("x")
    ml = ml_truncated(e.derivation_list(), 3)
    assert [str(b) for b in ml.elements()] == ["x^3", "x^2", "x", "1"]
    assert ml.contains(x**3 - 2 * x)


def test_ym_entries():
    assert check_well_defined(make_ym_surface(2, 1).derivations["delta2"])
    with pytest.raises(ArgumentError):
        make_ym_surface(4, 2)
    with pytest.raises(ArgumentError):
        make_ym_surface(3, 3)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_dg_identities(n):
    e = make_dg_surface(n)
    assert all(ident.holds(e) for ident in e.expected)
    assert check_well_defined(e.derivations["delta"]) and check_well_defined(e.derivations["delta_prime"])
    assert isinstance(nilpotency_certificate(e.derivations["delta"]), NilpotentWithBound)
    assert e.warnings


def test_dg_specific_values():
    e = make_dg_surface(3)
    g = e.generators
    assert apply(e.derivations["delta"], g["x1"]) == g["x2"]
    assert apply(e.derivations["delta_prime"], g["y"]).is_zero()
    with pytest.raises(ArgumentError):
        make_dg_surface(2)


@pytest.mark.parametrize("n", [3, 4])
def test_relation_search_is_unique(n):
    assert dg_relation_search(n) == [(n - 1, 1, 1)]


def test_catalog_names():
    assert [name for name, _ in list_entries()] == list(CATALOG_NAMES)
    for name in ("affine:3", "russell", "ym:5:2", "dg:4", "cstar_c2"):
        assert get_entry(name).name == name
    for bad in ("ym:3", "dg:x", "nope"):
        with pytest.raises(ArgumentError):
            get_entry(bad)
