"""Dense exact linear algebra over prime fields GF(p).

Every structural computation in the engine (normal forms, kernels,
syzygies, homotopy systems) bottoms out in Gaussian elimination here.
Matrices are immutable, stored as numpy int64 arrays with entries
normalized into [0, p).  All arithmetic is integer and modular, so
results are identical across platforms and runs; there is no floating
point anywhere.
"""

from __future__ import annotations

import numpy as np

__all__ = ["Mat", "is_prime", "inv_mod", "MAX_MODULUS"]

# Largest supported modulus.  Keeps every intermediate product of a
# matrix multiply inside int64 for matrices up to ~5000 inner dimension.
MAX_MODULUS = 1 << 20


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def inv_mod(a: int, p: int) -> int:
    return pow(int(a) % p, -1, p)


def _as_array(data) -> np.ndarray:
    a = np.array(data, dtype=np.int64)
    if a.ndim == 1:
        a = a.reshape(-1, 1)
    if a.ndim != 2:
        raise ValueError(f"matrix data must be 2-dimensional, got shape {a.shape}")
    return a


class Mat:
    """Immutable dense matrix over GF(p)."""

    __slots__ = ("p", "a", "_rref")

    def __init__(self, p: int, data):
        if not 2 <= p < MAX_MODULUS:
            raise ValueError(f"modulus {p} out of supported range")
        self.p = p
        a = _as_array(data) % p
        a.setflags(write=False)
        self.a = a
        self._rref = None

    @classmethod
    def _wrap(cls, p: int, a: np.ndarray) -> "Mat":
        # internal: array already reduced mod p
        m = object.__new__(cls)
        m.p = p
        a = np.ascontiguousarray(a, dtype=np.int64)
        a.setflags(write=False)
        m.a = a
        m._rref = None
        return m

    @classmethod
    def zeros(cls, p: int, nrows: int, ncols: int) -> "Mat":
        return cls._wrap(p, np.zeros((nrows, ncols), dtype=np.int64))

    @classmethod
    def identity(cls, p: int, n: int) -> "Mat":
        return cls._wrap(p, np.eye(n, dtype=np.int64))

    @classmethod
    def from_columns(cls, p: int, nrows: int, cols) -> "Mat":
        cols = list(cols)
        if not cols:
            return cls.zeros(p, nrows, 0)
        a = np.stack([np.asarray(c, dtype=np.int64).reshape(nrows) for c in cols], axis=1)
        return cls(p, a)

    @property
    def nrows(self) -> int:
        return self.a.shape[0]

    @property
    def ncols(self) -> int:
        return self.a.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.a.shape

    def __repr__(self) -> str:
        return f"Mat(GF({self.p}), {self.nrows}x{self.ncols})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Mat)
            and self.p == other.p
            and self.shape == other.shape
            and bool(np.array_equal(self.a, other.a))
        )

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.a.any()

    def col(self, j: int) -> np.ndarray:
        return self.a[:, j]

    def row(self, i: int) -> np.ndarray:
        return self.a[i, :]

    def __matmul__(self, other: "Mat") -> "Mat":
        if self.p != other.p:
            raise ValueError("modulus mismatch")
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        return Mat._wrap(self.p, (self.a @ other.a) % self.p)

    def apply(self, v: np.ndarray) -> np.ndarray:
        return (self.a @ (np.asarray(v, dtype=np.int64) % self.p)) % self.p

    def __add__(self, other: "Mat") -> "Mat":
        return Mat._wrap(self.p, (self.a + other.a) % self.p)

    def __sub__(self, other: "Mat") -> "Mat":
        return Mat._wrap(self.p, (self.a - other.a) % self.p)

    def __neg__(self) -> "Mat":
        return Mat._wrap(self.p, (-self.a) % self.p)

    def scale(self, c: int) -> "Mat":
        return Mat._wrap(self.p, (self.a * (c % self.p)) % self.p)

    def transpose(self) -> "Mat":
        return Mat._wrap(self.p, np.ascontiguousarray(self.a.T))

    @staticmethod
    def hstack(mats) -> "Mat":
        mats = list(mats)
        p = mats[0].p
        return Mat._wrap(p, np.hstack([m.a for m in mats]))

    @staticmethod
    def vstack(mats) -> "Mat":
        mats = list(mats)
        p = mats[0].p
        return Mat._wrap(p, np.vstack([m.a for m in mats]))

    def kron(self, other: "Mat") -> "Mat":
        return Mat._wrap(self.p, np.kron(self.a, other.a) % self.p)

    # -- elimination ----------------------------------------------------

    def rref(self) -> tuple["Mat", tuple[int, ...]]:
        """Reduced row echelon form and pivot columns.

        First nonzero entry in each column is chosen as pivot; the row
        space is preserved and the result is unique.
        """
        if self._rref is None:
            R = self.a.copy()
            p = self.p
            nrows, ncols = R.shape
            pivots = []
            r = 0
            for c in range(ncols):
                if r == nrows:
                    break
                nz = np.nonzero(R[r:, c])[0]
                if nz.size == 0:
                    continue
                pr = r + int(nz[0])
                if pr != r:
                    R[[r, pr]] = R[[pr, r]]
                R[r] = (R[r] * inv_mod(int(R[r, c]), p)) % p
                col = R[:, c].copy()
                col[r] = 0
                nzr = np.nonzero(col)[0]
                if nzr.size:
                    R[nzr] = (R[nzr] - np.outer(col[nzr], R[r])) % p
                pivots.append(c)
                r += 1
            self._rref = (Mat._wrap(p, R), tuple(pivots))
        return self._rref

    def rank(self) -> int:
        return len(self.rref()[1])

    def kernel_basis(self) -> "Mat":
        """Matrix whose columns form a basis of the right null space.

        Column count is ncols - rank; self @ result == 0 exactly.  Free
        variables are taken in ascending column order, so the basis is
        deterministic.
        """
        R, piv = self.rref()
        pivset = set(piv)
        free = [c for c in range(self.ncols) if c not in pivset]
        K = np.zeros((self.ncols, len(free)), dtype=np.int64)
        for j, fc in enumerate(free):
            K[fc, j] = 1
            for i, pc in enumerate(piv):
                v = int(R.a[i, fc])
                if v:
                    K[pc, j] = self.p - v
        return Mat._wrap(self.p, K)

    def solve(self, b) -> np.ndarray | None:
        """One solution x of self @ x = b, or None if inconsistent.

        Free variables are set to 0 under the RREF parameterization, so
        the returned solution is deterministic.
        """
        bcol = np.asarray(b, dtype=np.int64).reshape(self.nrows, 1) % self.p
        X = self.solve_multi(Mat._wrap(self.p, bcol))
        return None if X is None else X.a[:, 0]

    def solve_multi(self, B: "Mat") -> "Mat | None":
        """X with self @ X = B (columnwise), or None if any column fails."""
        if B.nrows != self.nrows:
            raise ValueError("right-hand side has wrong number of rows")
        aug = Mat.hstack([self, B])
        R, piv = aug.rref()
        n = self.ncols
        if any(c >= n for c in piv):
            return None
        X = np.zeros((n, B.ncols), dtype=np.int64)
        for i, pc in enumerate(piv):
            X[pc, :] = R.a[i, n:]
        return Mat._wrap(self.p, X)
