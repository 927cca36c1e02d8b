"""Artinian standard-graded quotient algebras A = k[x_1..x_n]/I.

The algebra is realized degreewise: for each degree d we row-reduce the
span of the monomial multiples of the relations inside k[x]_d, keep the
non-pivot monomials as the chosen basis of A_d, and record the normal
form projection plus the multiplication-by-variable maps A_d -> A_{d+1}.
No Groebner machinery is needed because every ideal piece is spanned by
monomial multiples of the (homogeneous) relations.

Construction stops at the first degree with A_d = 0; if none is found
below the degree cap the input is rejected as not visibly Artinian.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import Mat, is_prime
from .poly import Poly, monomials

DEFAULT_P = 32003

_NAME_POOL = "xyzwvutsrqponmlkjihgfedcba"


class AlgebraError(ValueError):
    pass


class NotArtinianError(AlgebraError):
    """No zero graded piece was found below the degree cap."""


@dataclass(frozen=True)
class CIStructure:
    """Witness that A = k[x_1..x_n]/(f_1..f_n) is a complete intersection.

    A finite-dimensional quotient by exactly n homogeneous relations
    forces the relations to be a regular sequence (a homogeneous system
    of parameters in the polynomial ring), so the witness is the count
    match plus the socle-degree consistency check.
    """

    nvars: int
    degrees: tuple[int, ...]
    socle_degree: int


class GradedAlgebra:
    """Immutable graded quotient with per-degree bases and action maps."""

    def __init__(self, p, names, relations, top, basis, nf_mats):
        self.p = p
        self.names = tuple(names)
        self.nvars = len(self.names)
        self.relations = tuple(relations)
        self.top = top
        self.basis = basis          # basis[d]: tuple of exponent tuples
        self.dims = [len(b) for b in basis]
        self.nf_mats = nf_mats      # nf_mats[d]: Mat, dim A_d x #monomials(n, d)
        self._mono_pos = [
            {m: i for i, m in enumerate(monomials(self.nvars, d))} for d in range(top + 1)
        ]
        self._basis_pos = [{m: i for i, m in enumerate(b)} for d, b in enumerate(basis)]
        self.act = self._action_matrices()
        self._mult_cache: dict = {}
        self._mono_act_cache: dict = {}

    # -- construction -----------------------------------------------------

    def _action_matrices(self):
        act = []
        for i in range(self.nvars):
            per_degree = []
            for d in range(self.top + 1):
                if d + 1 > self.top:
                    per_degree.append(Mat.zeros(self.p, 0, self.dims[d]))
                    continue
                cols = []
                for m in self.basis[d]:
                    shifted = list(m)
                    shifted[i] += 1
                    cols.append(self.nf_mats[d + 1].col(self._mono_pos[d + 1][tuple(shifted)]))
                per_degree.append(Mat.from_columns(self.p, self.dims[d + 1], cols))
            act.append(per_degree)
        return act

    # -- queries ------------------------------------------------------------

    def dim(self, d: int) -> int:
        return self.dims[d] if 0 <= d <= self.top else 0

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def is_compatible(self, other: "GradedAlgebra") -> bool:
        return self.p == other.p

    def zero_poly(self) -> Poly:
        return Poly.zero(self.nvars, self.p)

    def variable(self, i: int) -> Poly:
        return Poly.variable(self.nvars, self.p, i)

    def monomial_coords(self, f: Poly, d: int) -> np.ndarray:
        """Coefficient vector of the degree-d part of f over k[x]_d monomials."""
        monos = monomials(self.nvars, d)
        v = np.zeros(len(monos), dtype=np.int64)
        pos = self._mono_pos[d] if d <= self.top else {m: i for i, m in enumerate(monos)}
        for e, c in f.terms.items():
            if sum(e) == d:
                v[pos[e]] = c
        return v

    def nf_vector(self, f: Poly, d: int) -> np.ndarray:
        """Normal form of the degree-d part of f, in the basis of A_d."""
        if d < 0 or d > self.top:
            return np.zeros(0, dtype=np.int64)
        return self.nf_mats[d].apply(self.monomial_coords(f, d))

    def vector_to_poly(self, d: int, vec) -> Poly:
        t = {}
        for m, c in zip(self.basis[d], np.asarray(vec, dtype=np.int64)):
            c = int(c) % self.p
            if c:
                t[m] = c
        return Poly(self.nvars, self.p, t)

    def nf_poly(self, f: Poly) -> Poly:
        """Image of f in A, written on the chosen monomial basis."""
        out = self.zero_poly()
        for d in sorted({sum(e) for e in f.terms}):
            if d > self.top:
                continue
            out = out + self.vector_to_poly(d, self.nf_vector(f, d))
        return out

    # -- multiplication -------------------------------------------------------

    def act_monomial(self, exps, d: int) -> Mat:
        """Matrix of multiplication by the monomial x^exps, A_d -> A_{d+|exps|}."""
        exps = tuple(exps)
        key = (exps, d)
        cached = self._mono_act_cache.get(key)
        if cached is not None:
            return cached
        total = sum(exps)
        m = Mat.identity(self.p, self.dim(d)) if d <= self.top else Mat.zeros(self.p, 0, 0)
        cur = d
        for i, e in enumerate(exps):
            for _ in range(e):
                if cur > self.top:
                    break
                m = self.act[i][cur] @ m
                cur += 1
        if cur != d + total or d + total > self.top:
            m = Mat.zeros(self.p, self.dim(d + total), self.dim(d))
        self._mono_act_cache[key] = m
        return m

    def mult_matrix(self, q: Poly, d: int, delta: int | None = None) -> Mat:
        """Matrix of multiplication by homogeneous q, A_d -> A_{d+delta}.

        delta defaults to deg q; it must be supplied for the zero
        polynomial so the output shape is determined.
        """
        if q.is_zero():
            if delta is None:
                raise AlgebraError("zero polynomial needs an explicit degree")
            return Mat.zeros(self.p, self.dim(d + delta), self.dim(d))
        if not q.is_homogeneous():
            raise AlgebraError("multiplication matrices need homogeneous entries")
        dq = q.degree()
        if delta is not None and delta != dq:
            raise AlgebraError(f"entry has degree {dq}, expected {delta}")
        key = (q, d)
        cached = self._mult_cache.get(key)
        if cached is None:
            m = Mat.zeros(self.p, self.dim(d + dq), self.dim(d))
            for e, c in q.terms.items():
                m = m + self.act_monomial(e, d).scale(c)
            self._mult_cache[key] = cached = m
        return cached

    def __repr__(self) -> str:
        rels = ",".join(f.render(self.names) for f in self.relations)
        return f"GradedAlgebra(GF({self.p})[{','.join(self.names)}]/({rels}), dims={self.dims})"


def build_algebra(p: int, names, relations, degree_cap: int | None = None) -> GradedAlgebra:
    """Build the Artinian graded quotient k[names]/(relations) over GF(p).

    Relations must be homogeneous of degree >= 2 (so the variables stay
    minimal generators of the maximal ideal).  Raises NotArtinianError
    if no zero graded piece appears by the degree cap.
    """
    names = tuple(names)
    nvars = len(names)
    if not is_prime(p):
        raise AlgebraError(f"modulus {p} is not prime")
    if len(set(names)) != nvars:
        raise AlgebraError("duplicate variable names")
    relations = tuple(relations)
    for f in relations:
        if f.nvars != nvars or f.p != p:
            raise AlgebraError("relation from a different ring")
        if f.is_zero() or not f.is_homogeneous():
            raise AlgebraError(f"relation {f.render(names)} is not homogeneous and nonzero")
        if f.degree() < 2:
            raise AlgebraError(f"relation {f.render(names)} has degree < 2")
    if degree_cap is None:
        if relations and len(relations) >= nvars:
            degree_cap = sum(f.degree() for f in relations) + 2
        else:
            degree_cap = 20

    basis: list[tuple] = []
    nf_mats: list[Mat] = []
    for d in range(degree_cap + 1):
        monos = monomials(nvars, d)
        if not monos:
            # polynomial ring piece already zero (only happens for nvars=0)
            top = d - 1
            return GradedAlgebra(p, names, relations, top, basis, nf_mats)
        rows = []
        for f in relations:
            df = f.degree()
            if df > d:
                continue
            for m in monomials(nvars, d - df):
                mono = Poly.monomial(nvars, p, m)
                prod = mono * f
                row = np.zeros(len(monos), dtype=np.int64)
                pos = {mm: i for i, mm in enumerate(monos)}
                for e, c in prod.terms.items():
                    row[pos[e]] = c
                rows.append(row)
        if rows:
            span = Mat(p, np.vstack(rows))
        else:
            span = Mat.zeros(p, 0, len(monos))
        R, piv = span.rref()
        pivset = set(piv)
        free = [j for j in range(len(monos)) if j not in pivset]
        if not free:
            top = d - 1
            return GradedAlgebra(p, names, relations, top, basis, nf_mats)
        # normal form projection: e_q -> e_q, e_{p_i} -> -sum_q R[i,q] e_q
        nf = np.zeros((len(free), len(monos)), dtype=np.int64)
        for qi, q in enumerate(free):
            nf[qi, q] = 1
            for i, pc in enumerate(piv):
                v = int(R.a[i, q])
                if v:
                    nf[qi, pc] = (-v) % p
        basis.append(tuple(monos[j] for j in free))
        nf_mats.append(Mat(p, nf))
    raise NotArtinianError(
        f"no zero graded piece found up to degree {degree_cap}; ring is not Artinian within cap"
    )


def verify_ci(A: GradedAlgebra) -> CIStructure | None:
    """Certify A as a complete intersection, or return None.

    Certification requires relation count == variable count.  The socle
    degree must then equal sum(deg f_i - 1), and the Hilbert function
    must be symmetric (complete intersections are Gorenstein); both are
    asserted as internal consistency checks.
    """
    if len(A.relations) != A.nvars:
        return None
    degrees = tuple(f.degree() for f in A.relations)
    expected_socle = sum(d - 1 for d in degrees)
    if A.top != expected_socle:
        raise AlgebraError(
            f"socle degree {A.top} != sum(deg-1) = {expected_socle}; relations are not a regular sequence"
        )
    for d in range(A.top + 1):
        if A.dim(d) != A.dim(A.top - d):
            raise AlgebraError("Hilbert function of a certified CI must be symmetric")
    return CIStructure(A.nvars, degrees, expected_socle)


def _fresh_name(base: str, used: set[str]) -> str:
    if base not in used:
        return base
    for c in _NAME_POOL:
        if c not in used:
            return c
    k = 1
    while f"{base}{k}" in used:
        k += 1
    return f"{base}{k}"


def _embed_poly(f: Poly, total: int, offset: int, p: int) -> Poly:
    t = {}
    for e, c in f.terms.items():
        ee = [0] * total
        ee[offset:offset + len(e)] = e
        t[tuple(ee)] = c
    return Poly(total, p, t)


def tensor_algebra(A1: GradedAlgebra, A2: GradedAlgebra) -> GradedAlgebra:
    """A1 (x)_k A2 as a graded algebra on the disjoint union of variables.

    In the Artinian graded setting the localization at the maximal ideal
    is the identity, so the tensor product itself is the local ring of
    the construction.  Colliding variable names from A2 are renamed.
    """
    if not A1.is_compatible(A2):
        raise AlgebraError("modulus mismatch in tensor product")
    names = list(A1.names)
    used = set(names)
    for nm in A2.names:
        fresh = _fresh_name(nm, used)
        names.append(fresh)
        used.add(fresh)
    total = len(names)
    rels = [_embed_poly(f, total, 0, A1.p) for f in A1.relations]
    rels += [_embed_poly(f, total, A1.nvars, A1.p) for f in A2.relations]
    T = build_algebra(A1.p, names, rels, degree_cap=A1.top + A2.top + 2)
    if T.total_dim != A1.total_dim * A2.total_dim:
        raise AlgebraError("tensor algebra dimension is not the product of dimensions")
    if T.top != A1.top + A2.top:
        raise AlgebraError("tensor algebra socle degree is not the sum of socle degrees")
    return T
