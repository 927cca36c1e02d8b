import pytest

from symgrowth.algebra import build_algebra
from symgrowth.complexes import (
    GdimError,
    complete_resolution,
    ext_against_ring,
    gdim_zero_check,
    minimal_resolution,
    negative_betti_via_dual,
    tate_ext_dims,
)
from symgrowth.modules import FreeModule, direct_sum, from_presentation, residue_field, syzygy
from symgrowth.poly import PolyMatrix, parse_poly

P = 32003


def make(names, rels):
    return build_algebra(P, tuple(names), [parse_poly(s, tuple(names), P) for s in rels])


@pytest.fixture(scope="module")
def R1():
    return make(("x",), ["x^2"])


@pytest.fixture(scope="module")
def R2():
    return make(("x", "y"), ["x^2", "y^2"])


@pytest.fixture(scope="module")
def R3():
    return make(("x", "y"), ["x^2", "x y", "y^2"])


@pytest.fixture(scope="module")
def R4():
    # k[x]/(x^2) (x) k[y,z]/(y^2, yz, z^2), presented directly
    return make(("x", "y", "z"), ["x^2", "y^2", "y z", "z^2"])


def test_resolution_hypersurface_periodic(R1):
    res = minimal_resolution(residue_field(R1), 6)
    assert res.betti_numbers() == [1] * 7
    x = parse_poly("x", R1.names, P)
    for n in range(1, 7):
        d = res.complex.diffs[n]
        assert d.nrows == d.ncols == 1
        assert d.entry(0, 0) == x or d.entry(0, 0) == x.scale(-1)


def test_resolution_two_squares_linear_growth(R2):
    # oracle: brute-force kernel dimensions degreewise give beta_n = n+1
    res = minimal_resolution(residue_field(R2), 8)
    assert res.betti_numbers() == [n + 1 for n in range(9)]
    assert res.complex.is_minimal()


def test_resolution_mm2_doubling(R3):
    # oracle: m^2 = 0 forces beta_{n+1} = 2 beta_n
    res = minimal_resolution(residue_field(R3), 7)
    assert res.betti_numbers() == [2 ** n for n in range(8)]


def test_resolution_exactness_interior(R2):
    res = minimal_resolution(residue_field(R2), 6)
    for n in res.complex.interior():
        if n >= 1:
            assert res.complex.exact_at(n)
    assert res.complex.dd_is_zero()


def test_ext_against_ring_free(R2):
    F = FreeModule(R2, (0, 2)).as_module()
    assert ext_against_ring(F, 5) == [0] * 5


def test_ext_against_ring_gorenstein_k(R2):
    assert ext_against_ring(residue_field(R2), 6) == [0] * 6


def test_ext_against_ring_mm2_nonzero(R3):
    ext = ext_against_ring(residue_field(R3), 3)
    assert ext[0] != 0


def test_gdim_pass(R1, R2):
    assert gdim_zero_check(residue_field(R1), 6).passed
    assert gdim_zero_check(residue_field(R2), 6).passed


def test_gdim_fail_mm2(R3):
    cert = gdim_zero_check(residue_field(R3), 2)
    assert not cert.passed
    assert not cert.reflexive
    assert cert.ext_M[0] != 0
    msgs = " ".join(cert.failures())
    assert "biduality" in msgs and "Ext" in msgs


def test_complete_resolution_hypersurface(R1):
    cr = complete_resolution(residue_field(R1), 6)
    table = cr.betti()
    assert all(table[n] == 1 for n in range(-6, 7))
    assert not cr.has_free_summand
    assert cr.complex.is_minimal()


def test_complete_resolution_two_squares(R2):
    # oracle: beta_{-(n+1)}(M) = beta_n(M^*) and M^* is k up to twist
    cr = complete_resolution(residue_field(R2), 6)
    t = cr.betti()
    for n in range(0, 7):
        assert t[n] == n + 1
    for n in range(1, 7):
        assert t[-n] == n
    assert cr.complex.dd_is_zero()


def test_negative_betti_two_paths_agree(R2):
    cr = complete_resolution(residue_field(R2), 8)
    via_dual = negative_betti_via_dual(residue_field(R2), 8)
    spliced = [cr.betti()[-n] for n in range(1, 9)]
    assert spliced == via_dual


def test_complete_resolution_periodic_over_non_ci(R4):
    # the construction module A/(x): ann(x) = (x), so the resolution is periodic
    M = from_presentation(R4, (0,), (1,), PolyMatrix(R4.nvars, P, [[parse_poly("x", R4.names, P)]]))
    cr = complete_resolution(M, 6)
    assert all(cr.betti()[n] == 1 for n in range(-6, 7))


def test_complete_resolution_refuses_mm2(R3):
    with pytest.raises(GdimError) as ei:
        complete_resolution(residue_field(R3), 3)
    assert "biduality" in str(ei.value)
    assert "Ext" in str(ei.value)


def test_complete_resolution_exactness_and_total_acyclicity(R2):
    cr = complete_resolution(residue_field(R2), 5)
    C = cr.complex
    for n in C.interior():
        assert C.exact_at(n)
    D = C.dualize()
    assert D.dd_is_zero()
    for n in D.interior():
        assert D.exact_at(n)


def test_dualize_twice_is_identity(R2):
    cr = complete_resolution(residue_field(R2), 4)
    C = cr.complex
    DD = C.dualize().dualize()
    assert DD.twists == C.twists
    for n in range(C.lo + 1, C.hi + 1):
        assert DD.diffs[n] == C.diffs[n]


def test_dualize_hypersurface_same_shape(R1):
    # dual of the k-complex over k[x]/(x^2): same ranks, differential x
    cr = complete_resolution(residue_field(R1), 4)
    D = cr.complex.dualize()
    x = parse_poly("x", R1.names, P)
    for n in range(D.lo + 1, D.hi + 1):
        d = D.diffs[n]
        assert d.nrows == d.ncols == 1
        q = d.entry(0, 0)
        assert q == x or q == x.scale(-1)


def test_dualize_bounded_free(R2):
    F = FreeModule(R2, (0,))
    res = minimal_resolution(F.as_module(), 3)
    C = res.complex
    assert [C.rank(n) for n in range(4)] == [1, 0, 0, 0]
    D = C.dualize()
    assert [D.rank(-n) for n in range(4)] == [1, 0, 0, 0]


def test_tate_dims_match_betti_when_minimal(R1, R2):
    for A in (R1, R2):
        cr = complete_resolution(residue_field(A), 5)
        dims = tate_ext_dims(cr)
        t = cr.betti()
        for n in range(-5, 6):
            assert dims[n] == t[n]


def test_tate_dims_free_module(R2):
    # a free module has a free summand: the splice map is an isomorphism
    F = FreeModule(R2, (0,)).as_module()
    cr = complete_resolution(F, 3)
    assert cr.has_free_summand
    dims = tate_ext_dims(cr)
    assert dims[0] == 0 and dims[-1] == 0


def test_betti_additivity_direct_sum(R2):
    k = residue_field(R2)
    m, _ = syzygy(k)
    s = direct_sum(k, m)
    b_sum = minimal_resolution(s, 5).betti_numbers()
    b_k = minimal_resolution(k, 5).betti_numbers()
    b_m = minimal_resolution(m, 5).betti_numbers()
    assert b_sum == [a + b for a, b in zip(b_k, b_m)]


def test_resolution_determinism(R2):
    k = residue_field(R2)
    r1 = minimal_resolution(k, 5)
    r2 = minimal_resolution(k, 5)
    for n in range(1, 6):
        assert r1.complex.diffs[n] == r2.complex.diffs[n]
    cr1 = complete_resolution(k, 4)
    cr2 = complete_resolution(k, 4)
    for n in range(-3, 5):
        assert cr1.complex.diffs[n] == cr2.complex.diffs[n]
