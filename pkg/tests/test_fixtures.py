import pytest

from symgrowth.algebra import build_algebra, verify_ci
from symgrowth.complexes import complete_resolution, gdim_zero_check, minimal_resolution
from symgrowth.fixtures import FixtureError, construction_instance, get_fixture, standard_fixtures
from symgrowth.growth import symmetric_growth_verdict
from symgrowth.modules import residue_field
from symgrowth.poly import parse_poly

P = 32003


def test_fixture_roster():
    names = [f.name for f in standard_fixtures()]
    assert names == ["R1", "R2", "R2s", "R3", "R4", "X3"]


def test_get_fixture_unknown():
    with pytest.raises(FixtureError):
        get_fixture("nope")


@pytest.mark.parametrize("name", ["R1", "R2", "R2s", "R4", "X3"])
def test_expectations_recomputed_positive_fixtures(name):
    f = get_fixture(name)
    assert gdim_zero_check(f.module, 4).passed == f.expected["gdim_zero"]
    assert (verify_ci(f.algebra) is not None) == f.expected["ci"]
    cr = complete_resolution(f.module, 10)
    rep = symmetric_growth_verdict(cr)
    assert rep.symmetric is f.expected["symmetric"]
    if "cx_plus" in f.expected:
        assert rep.cx_plus == f.expected["cx_plus"]
        assert rep.cx_minus == f.expected["cx_minus"]
    if f.expected.get("betti_all_one"):
        t = cr.betti()
        assert all(t[n] == 1 for n in range(-8, 9))


def test_expectations_negative_fixture():
    f = get_fixture("R3")
    assert not gdim_zero_check(f.module, 2).passed
    assert verify_ci(f.algebra) is None
    b = minimal_resolution(f.module, 7).betti_numbers()
    assert b == [2 ** n for n in range(8)]


def test_every_expectation_has_an_oracle_note():
    for f in standard_fixtures():
        assert f.oracles, f.name


def test_construction_unit_law():
    a1 = build_algebra(P, ("x",), [parse_poly("x^2", ("x",), P)])
    k_alg = build_algebra(P, (), [])
    fx = construction_instance(a1, residue_field(a1), k_alg)
    assert fx.algebra.dims == a1.dims
    assert fx.module.dims == residue_field(a1).dims


def test_construction_free_module():
    from symgrowth.modules import FreeModule

    a1 = build_algebra(P, ("x",), [parse_poly("x^2", ("x",), P)])
    a2 = build_algebra(P, ("y",), [parse_poly("y^2", ("y",), P)])
    fx = construction_instance(a1, FreeModule(a1, (0,)).as_module(), a2)
    # free extends to free: bounded resolution
    b = minimal_resolution(fx.module, 4).betti_numbers()
    assert b == [1, 0, 0, 0, 0]


def test_construction_rejects_bad_first_factor():
    a1 = build_algebra(P, ("x", "y"), [parse_poly(s, ("x", "y"), P) for s in ("x^2", "x y", "y^2")])
    a2 = build_algebra(P, ("z",), [parse_poly("z^2", ("z",), P)])
    with pytest.raises(FixtureError):
        construction_instance(a1, residue_field(a1), a2)


def test_construction_flat_extension_preserves_betti():
    # window-checked: beta_n over the tensor ring equals beta_n over A1
    f = get_fixture("R4")
    a1, m1, _ = f.factors
    b_ext = minimal_resolution(f.module, 6).betti_numbers()
    b_base = minimal_resolution(m1, 6).betti_numbers()
    assert b_ext == b_base
