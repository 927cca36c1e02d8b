import pytest

from symgrowth.algebra import build_algebra, verify_ci
from symgrowth.complexes import complete_resolution
from symgrowth.modules import residue_field
from symgrowth.operators import (
    chain_map_defects,
    commutator_homotopies,
    duality_commutation_check,
    eventual_injectivity,
    eventual_surjectivity_of_chainmap,
    finite_generation_check,
    induced_ext_action,
    lift_and_decompose,
    reconstruction_defects,
)
from symgrowth.poly import parse_poly

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
def X3():
    return make(("x",), ["x^3"])


@pytest.fixture(scope="module")
def ops1(R1):
    return lift_and_decompose(complete_resolution(residue_field(R1), 6))


@pytest.fixture(scope="module")
def ops2(R2):
    return lift_and_decompose(complete_resolution(residue_field(R2), 6))


@pytest.fixture(scope="module")
def ops3(X3):
    return lift_and_decompose(complete_resolution(residue_field(X3), 6))


def test_hypersurface_operator_is_identity(ops1):
    # d~^2 = x^2 exactly, so t_1 = 1 in every spot
    for n, pm in ops1.t[0].items():
        assert pm.nrows == pm.ncols == 1
        q = pm.entry(0, 0)
        assert q.degree() == 0
        assert q.constant_coeff() in (1, P - 1)


def test_x_cubed_operator_is_identity(ops3):
    # resolution alternates x, x^2; both products lift to x^3, cofactor 1
    for n, pm in ops3.t[0].items():
        assert pm.nrows == pm.ncols == 1
        assert pm.entry(0, 0).constant_coeff() in (1, P - 1)


def test_reconstruction_exact(ops1, ops2, ops3):
    for ops in (ops1, ops2, ops3):
        assert reconstruction_defects(ops) == []


def test_chain_map_identity(ops1, ops2, ops3):
    for ops in (ops1, ops2, ops3):
        assert chain_map_defects(ops) == []


def test_commutators_null_homotopic(ops2):
    results = commutator_homotopies(ops2)
    assert results and all(ok for ok, _ in results.values())


def test_operator_nontrivial_below(ops2):
    # the induced maps of t_1, t_2 on Ext are nonzero somewhere
    for i in range(2):
        assert any(not ops2.t[i][n].constant_matrix().is_zero() for n in ops2.t[i] if n >= 2)


def test_induced_action_zero_eta(ops1):
    act = induced_ext_action(ops1, (0,))
    assert all(m.is_zero() for m in act.values())


def test_induced_action_identity_hypersurface(ops1):
    act = induced_ext_action(ops1, (1,))
    for n in range(0, 4):
        assert act[n].rank() == 1


def test_eventual_injectivity_hypersurface(ops1):
    v = eventual_injectivity(ops1, (1,))
    assert v.passed
    assert v.n0 == 0


def test_eventual_injectivity_two_squares(ops2):
    v = eventual_injectivity(ops2, (1, 1))
    assert v.passed
    assert v.coeffs == (1, 1)
    assert v.n0 == 0


def test_injectivity_zero_coeffs_fails_everywhere(ops2):
    v0 = eventual_injectivity(ops2, (0, 0), attempts=0)
    assert not v0.passed
    assert not any(v0.ok_M.values())


def test_injectivity_zero_coeffs_fails_then_retries(ops2):
    v = eventual_injectivity(ops2, (0, 0), seed=1)
    # zero eta fails, but the seeded retry finds a generic witness
    assert v.passed
    assert v.attempts > 1


def test_surjectivity_hypersurface(ops1):
    v = eventual_surjectivity_of_chainmap(ops1, (1,))
    assert v.passed and v.linkage_ok


def test_surjectivity_generic_two_squares(ops2):
    v = eventual_surjectivity_of_chainmap(ops2, (1, 1))
    assert v.passed and v.linkage_ok


def test_surjectivity_zero_eta_fails(ops2):
    v = eventual_surjectivity_of_chainmap(ops2, (0, 0))
    assert not v.passed


def test_duality_commutation(ops1, ops2, ops3):
    for ops in (ops1, ops2, ops3):
        v = duality_commutation_check(ops)
        assert v.passed


def test_induced_actions_commute_exactly(ops2):
    # degree-2 operators are even, so the two induced actions on Ext
    # must agree on the nose: the commutator acts as zero exactly
    a1 = induced_ext_action(ops2, (1, 0))
    a2 = induced_ext_action(ops2, (0, 1))
    for n in range(0, ops2.complex.hi - 3):
        assert a2[n + 2] @ a1[n] == a1[n + 2] @ a2[n]


def test_finite_generation(ops1, ops2):
    v1 = finite_generation_check(ops1)
    assert v1.passed and v1.n0 == 0
    v2 = finite_generation_check(ops2)
    assert v2.passed and v2.n0 is not None


def test_finite_generation_not_observed_with_zeroed_operators(ops2):
    from dataclasses import replace

    from symgrowth.poly import PolyMatrix

    zeroed = [
        {n: PolyMatrix.zero(pm.nvars, pm.p, pm.nrows, pm.ncols) for n, pm in ti.items()}
        for ti in ops2.t
    ]
    crippled = replace(ops2, t=zeroed)
    v = finite_generation_check(crippled)
    assert not v.passed
    assert v.n0 is None


def test_window_length_precondition(R1):
    from symgrowth.complexes import minimal_resolution
    from symgrowth.operators import OperatorError

    res = minimal_resolution(residue_field(R1), 2)
    with pytest.raises(OperatorError):
        lift_and_decompose(res.complex, verify_ci(R1))


def test_operators_deterministic(R2):
    cr = complete_resolution(residue_field(R2), 5)
    a = lift_and_decompose(cr)
    b = lift_and_decompose(cr)
    for i in range(2):
        assert a.t[i] == b.t[i]
