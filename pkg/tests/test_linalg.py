import itertools
import random

import numpy as np
import pytest

from symgrowth.linalg import Mat, inv_mod, is_prime


def test_is_prime():
    assert is_prime(2) and is_prime(3) and is_prime(32003)
    assert not is_prime(1) and not is_prime(32004) and not is_prime(0)


def test_inv_mod():
    for p in (3, 5, 7, 32003):
        for a in range(1, min(p, 50)):
            assert (a * inv_mod(a, p)) % p == 1


def test_rref_proportional_rows():
    m = Mat(7, [[1, 2], [2, 4]])
    R, piv = m.rref()
    assert R == Mat(7, [[1, 2], [0, 0]])
    assert piv == (0,)


def test_rref_identity():
    m = Mat(5, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    R, piv = m.rref()
    assert R == m
    assert piv == (0, 1, 2)


def test_rref_permutation():
    m = Mat(5, [[0, 1], [1, 0]])
    R, piv = m.rref()
    assert R == Mat.identity(5, 2)
    assert piv == (0, 1)


def test_kernel_zero_map():
    m = Mat.zeros(11, 2, 3)
    K = m.kernel_basis()
    assert K.ncols == 3
    assert (m @ K).is_zero()


def test_kernel_full_rank():
    m = Mat(7, [[1, 2], [3, 4]])
    assert m.rank() == 2
    assert m.kernel_basis().ncols == 0


def test_kernel_gf3_matches_enumeration():
    # oracle: enumerate all 9 vectors of GF(3)^2 and pick the kernel
    m = Mat(3, [[1, 1]])
    kernel = [(a, b) for a, b in itertools.product(range(3), repeat=2) if (a + b) % 3 == 0]
    assert set(kernel) == {(0, 0), (1, 2), (2, 1)}
    K = m.kernel_basis()
    assert K.ncols == 1
    assert tuple(K.col(0)) in {(1, 2), (2, 1)}


def test_solve_identity():
    m = Mat.identity(7, 3)
    b = [1, 5, 6]
    x = m.solve(b)
    assert list(x) == b


def test_solve_inconsistent_exhaustive():
    # oracle: exhaustive check over GF(7)^2 that no solution exists
    m = Mat(7, [[1, 2], [2, 4]])
    b = (1, 3)
    for x0, x1 in itertools.product(range(7), repeat=2):
        assert ((x0 + 2 * x1) % 7, (2 * x0 + 4 * x1) % 7) != b
    assert m.solve(b) is None


def test_solve_free_variable_convention():
    m = Mat(5, [[1, 1]])
    x = m.solve([0])
    assert list(x) == [0, 0]


def _random_mat(rng, p, nrows, ncols):
    if nrows == 0 or ncols == 0:
        return Mat.zeros(p, nrows, ncols)
    return Mat(p, [[rng.randrange(p) for _ in range(ncols)] for _ in range(nrows)])


@pytest.mark.parametrize("p", [2, 3, 7, 32003])
def test_rank_nullity_and_kernel_property(p):
    rng = random.Random(p)
    for _ in range(25):
        nrows = rng.randrange(0, 7)
        ncols = rng.randrange(0, 7)
        m = _random_mat(rng, p, nrows, ncols)
        K = m.kernel_basis()
        assert m.rank() + K.ncols == ncols
        if ncols:
            assert (m @ K).is_zero()
        # kernel columns are independent
        assert K.rank() == K.ncols


@pytest.mark.parametrize("p", [3, 7, 32003])
def test_solve_agrees_with_rank_test(p):
    rng = random.Random(100 + p)
    for _ in range(40):
        nrows = rng.randrange(1, 6)
        ncols = rng.randrange(1, 6)
        m = _random_mat(rng, p, nrows, ncols)
        b = np.array([rng.randrange(p) for _ in range(nrows)], dtype=np.int64)
        x = m.solve(b)
        aug = Mat.hstack([m, Mat(p, b.reshape(-1, 1))])
        if x is None:
            assert aug.rank() == m.rank() + 1
        else:
            assert aug.rank() == m.rank()
            assert np.array_equal(m.apply(x), b % p)


def test_rref_preserves_row_space_and_is_idempotent():
    rng = random.Random(7)
    for _ in range(25):
        m = _random_mat(rng, 7, rng.randrange(1, 6), rng.randrange(1, 6))
        R, _ = m.rref()
        stacked = Mat.vstack([m, R])
        assert stacked.rank() == m.rank() == R.rank()
        assert R.rref()[0] == R


def test_solve_multi():
    m = Mat(7, [[1, 2], [0, 3]])
    B = Mat(7, [[1, 0], [0, 1]])
    X = m.solve_multi(B)
    assert m @ X == B


def test_determinism_across_recomputation():
    rows = [[3, 1, 4, 1], [5, 9, 2, 6], [5, 3, 5, 8]]
    a = Mat(32003, rows)
    b = Mat(32003, rows)
    assert a.rref()[0] == b.rref()[0]
    assert a.kernel_basis() == b.kernel_basis()


def test_immutability():
    m = Mat(7, [[1, 2], [3, 4]])
    with pytest.raises(ValueError):
        m.a[0, 0] = 5
