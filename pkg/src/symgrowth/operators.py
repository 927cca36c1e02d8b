"""Cohomology operators over certified complete intersections.

Over A = B/(f_1..f_c) the differentials of a free complex lift to B
(each basis monomial lifts to itself, so the lift is canonical), the
square of the lifted differential lands in (f_1..f_c), and solving

    lifted d^2 = sum_i f_i * lifted_t_i

per internal degree produces the degree -2 chain operators t_i on the
original complex.  The induced maps on Ext(-, k) are the transposed
constant-term matrices of the t_i, by minimality.

Homotopies are solved inside the space of A-linear maps: the unknowns
are the coefficients of the entries of h over the algebra basis in the
forced entry degrees, the first two indices are solved jointly, and the
remaining ones are lifted greedily up the window (exactness at interior
indices makes each step solvable when a global homotopy exists).
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from .algebra import CIStructure, GradedAlgebra, verify_ci
from .complexes import CompleteResolution, FreeComplex
from .linalg import Mat
from .poly import Poly, PolyMatrix, monomials


class OperatorError(RuntimeError):
    pass


@dataclass
class OperatorSet:
    """The operators t_i on a complex window, with their B-lifted data."""

    complex: FreeComplex
    ci: CIStructure
    t: list[dict[int, PolyMatrix]]       # reduced over A; t[i][n]: C_n -> C_{n-2}
    t_lift: list[dict[int, PolyMatrix]]  # cofactors over B
    d2: dict[int, PolyMatrix]            # lifted d^2 over B
    cr: CompleteResolution | None = None
    _dual_ops: "OperatorSet | None" = None

    @property
    def count(self) -> int:
        return len(self.ci.degrees)

    def indices(self):
        return sorted(self.d2)

    def combination(self, coeffs, n: int) -> PolyMatrix:
        C = self.complex
        out = PolyMatrix.zero(C.A.nvars, C.A.p, C.rank(n - 2), C.rank(n))
        for c, ti in zip(coeffs, self.t):
            if c % C.A.p:
                out = out + ti[n].map_entries(lambda q: q.scale(c))
        return out

    def combination_ct(self, coeffs, n: int) -> Mat:
        return self.combination(coeffs, n).constant_matrix()

    def dual_operators(self) -> "OperatorSet":
        """Operators computed directly on the dualized complex."""
        if self._dual_ops is None:
            self._dual_ops = lift_and_decompose(self.complex.dualize(), self.ci, verify=False)
        return self._dual_ops


def _decomposition_table(A: GradedAlgebra, ci: CIStructure, D: int, cache: dict):
    """Matrix of (g_1..g_c) -> sum g_i f_i landing in k[x]_D, with layout."""
    if D not in cache:
        monos_D = monomials(A.nvars, D)
        pos = {m: k for k, m in enumerate(monos_D)}
        cols = []
        layout = []
        for i, f in enumerate(A.relations):
            df = f.degree()
            for m in monomials(A.nvars, D - df):
                col = np.zeros(len(monos_D), dtype=np.int64)
                for e, c in f.terms.items():
                    ee = tuple(a + b for a, b in zip(e, m))
                    col[pos[ee]] = (col[pos[ee]] + c) % A.p
                cols.append(col)
                layout.append((i, m))
        mat = Mat.from_columns(A.p, len(monos_D), cols) if cols else Mat.zeros(A.p, len(monos_D), 0)
        cache[D] = (mat, layout)
    return cache[D]


def lift_and_decompose(C, ci: CIStructure | None = None, verify: bool = True) -> OperatorSet:
    """Lift the differentials to B, decompose d^2, and build the t_i.

    Accepts a FreeComplex or a CompleteResolution.  The per-degree
    cofactor solve uses the free-variables-zero convention, so the
    operators are deterministic; different valid choices differ by a
    homotopy, and every downstream check is homotopy-invariant or
    constant-term level.
    """
    cr = None
    if isinstance(C, CompleteResolution):
        cr = C
        C = C.complex
    A = C.A
    if ci is None:
        ci = verify_ci(A)
        if ci is None:
            raise OperatorError("operators need a certified complete intersection ring")
    if C.hi - C.lo < 4:
        raise OperatorError("operator construction needs a window of length >= 4")
    c = len(A.relations)
    t_lift: list[dict[int, PolyMatrix]] = [dict() for _ in range(c)]
    t_red: list[dict[int, PolyMatrix]] = [dict() for _ in range(c)]
    d2: dict[int, PolyMatrix] = {}
    cache: dict = {}
    for n in range(C.lo + 2, C.hi + 1):
        square = C.diffs[n - 1] * C.diffs[n]
        d2[n] = square
        gmats = [
            [[A.zero_poly() for _ in range(square.ncols)] for _ in range(square.nrows)]
            for _ in range(c)
        ]
        # group entries by internal degree and solve each degree once
        by_degree: dict[int, list[tuple[int, int]]] = {}
        for a in range(square.nrows):
            for b in range(square.ncols):
                q = square.entry(a, b)
                if q.is_zero():
                    continue
                if not q.is_homogeneous():
                    raise OperatorError("lifted d^2 entry is not homogeneous")
                by_degree.setdefault(q.degree(), []).append((a, b))
        for D, places in by_degree.items():
            mat, layout = _decomposition_table(A, ci, D, cache)
            rhs_cols = [A.monomial_coords(square.entry(a, b), D) for a, b in places]
            X = mat.solve_multi(Mat.from_columns(A.p, mat.nrows, rhs_cols))
            if X is None:
                raise OperatorError(
                    f"entry of lifted d^2 at index {n} is not in the relation ideal; internal fault"
                )
            for col, (a, b) in enumerate(places):
                per_rel: dict[int, dict] = {}
                for k, (i, m) in enumerate(layout):
                    v = int(X.a[k, col])
                    if v:
                        per_rel.setdefault(i, {})[m] = v
                for i, terms in per_rel.items():
                    gmats[i][a][b] = Poly(A.nvars, A.p, terms)
        for i in range(c):
            lifted = PolyMatrix(A.nvars, A.p, gmats[i], square.nrows, square.ncols)
            t_lift[i][n] = lifted
            t_red[i][n] = lifted.map_entries(A.nf_poly)
    ops = OperatorSet(C, ci, t_red, t_lift, d2, cr)
    if verify:
        bad = reconstruction_defects(ops)
        if bad:
            raise OperatorError(f"d^2 decomposition does not reconstruct at indices {bad}")
        bad = chain_map_defects(ops)
        if bad:
            raise OperatorError(f"operator chain-map identity fails at {bad}")
        for (i, j), (ok, witness) in commutator_homotopies(ops).items():
            if not ok:
                raise OperatorError(
                    f"operators {i}, {j} do not commute up to homotopy (index {witness})"
                )
    return ops


def reconstruction_defects(ops: OperatorSet) -> list[int]:
    """Indices where sum_i f_i * lifted_t_i differs from lifted d^2."""
    A = ops.complex.A
    bad = []
    for n, square in ops.d2.items():
        acc = PolyMatrix.zero(A.nvars, A.p, square.nrows, square.ncols)
        for f, tl in zip(A.relations, ops.t_lift):
            acc = acc + tl[n].scale_poly(f)
        if acc != square:
            bad.append(n)
    return bad


def chain_map_defects(ops: OperatorSet) -> list[tuple[int, int]]:
    """(relation, index) pairs where d t_i != t_i d as maps over A."""
    C = ops.complex
    A = C.A
    bad = []
    for i, ti in enumerate(ops.t):
        for n in range(C.lo + 3, C.hi + 1):
            lhs = (C.diffs[n - 2] * ti[n]).map_entries(A.nf_poly)
            rhs = (ti[n - 1] * C.diffs[n]).map_entries(A.nf_poly)
            if lhs != rhs:
                bad.append((i, n))
    return bad


# -- homotopy solving -----------------------------------------------------------


def _hom_basis(C: FreeComplex, n_src: int, n_tgt: int, shift: int):
    """Basis of the A-linear maps C_{n_src} -> C_{n_tgt} lowering degree by shift."""
    A = C.A
    src = C.twists[n_src]
    tgt = C.twists[n_tgt]
    basis = []
    for i, ti in enumerate(tgt):
        for j, tj in enumerate(src):
            delta = tj - ti - shift
            if 0 <= delta <= A.top:
                for m in A.basis[delta]:
                    basis.append((i, j, m))
    return basis


def _from_coeffs(C: FreeComplex, n_src: int, n_tgt: int, shift: int, basis, vec) -> PolyMatrix:
    A = C.A
    rows = [[dict() for _ in C.twists[n_src]] for _ in C.twists[n_tgt]]
    for (i, j, m), v in zip(basis, vec):
        v = int(v) % A.p
        if v:
            rows[i][j][m] = v
    ent = [[Poly(A.nvars, A.p, cell) for cell in row] for row in rows]
    return PolyMatrix(A.nvars, A.p, ent, len(C.twists[n_tgt]), len(C.twists[n_src]))


def _coords(C: FreeComplex, n_src: int, n_tgt: int, shift: int, pm: PolyMatrix) -> np.ndarray:
    A = C.A
    parts = []
    for i, ti in enumerate(C.twists[n_tgt]):
        for j, tj in enumerate(C.twists[n_src]):
            delta = tj - ti - shift
            q = pm.entry(i, j)
            if 0 <= delta <= A.top:
                parts.append(A.nf_vector(q, delta))
            elif not q.is_zero():
                raise OperatorError("map has entries outside its Hom space; internal fault")
    return np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)


def null_homotopy(C: FreeComplex, u: dict[int, PolyMatrix], drop: int, shift: int):
    """Solve u = d h + h d for a chain map u of homological degree `drop`.

    u[n] maps C_n -> C_{n+drop} (drop <= -2), h[n] maps C_n -> C_{n+drop+1},
    and both lower internal degree by `shift`.  The two lowest h's are
    solved jointly, then each next h is lifted greedily; exactness at
    interior indices guarantees solvability whenever a global homotopy
    exists.  Returns (h, None) or (None, witness_index).
    """
    A = C.A
    nf = A.nf_poly
    ns = sorted(u)
    n0 = ns[0]
    h: dict[int, PolyMatrix] = {}
    basis0 = _hom_basis(C, n0, n0 + drop + 1, shift)
    basis_prev = _hom_basis(C, n0 - 1, n0 + drop, shift)
    d_after = C.diffs[n0 + drop + 1]
    d_here = C.diffs[n0]
    cols = []
    for k in range(len(basis0)):
        e = np.zeros(len(basis0), dtype=np.int64)
        e[k] = 1
        hk = _from_coeffs(C, n0, n0 + drop + 1, shift, basis0, e)
        cols.append(_coords(C, n0, n0 + drop, shift, (d_after * hk).map_entries(nf)))
    for k in range(len(basis_prev)):
        e = np.zeros(len(basis_prev), dtype=np.int64)
        e[k] = 1
        hk = _from_coeffs(C, n0 - 1, n0 + drop, shift, basis_prev, e)
        cols.append(_coords(C, n0, n0 + drop, shift, (hk * d_here).map_entries(nf)))
    target = _coords(C, n0, n0 + drop, shift, u[n0])
    system = Mat.from_columns(A.p, len(target), cols) if cols else Mat.zeros(A.p, len(target), 0)
    sol = system.solve(target) if len(target) else np.zeros(len(cols), dtype=np.int64)
    if sol is None:
        return None, n0
    h[n0] = _from_coeffs(C, n0, n0 + drop + 1, shift, basis0, sol[: len(basis0)])
    h[n0 - 1] = _from_coeffs(C, n0 - 1, n0 + drop, shift, basis_prev, sol[len(basis0):])
    for n in ns[1:]:
        rhs = (u[n] - (h[n - 1] * C.diffs[n])).map_entries(nf)
        basis = _hom_basis(C, n, n + drop + 1, shift)
        d_after = C.diffs[n + drop + 1]
        cols = []
        for k in range(len(basis)):
            e = np.zeros(len(basis), dtype=np.int64)
            e[k] = 1
            hk = _from_coeffs(C, n, n + drop + 1, shift, basis, e)
            cols.append(_coords(C, n, n + drop, shift, (d_after * hk).map_entries(nf)))
        target = _coords(C, n, n + drop, shift, rhs)
        system = Mat.from_columns(A.p, len(target), cols) if cols else Mat.zeros(A.p, len(target), 0)
        sol = system.solve(target) if len(target) else np.zeros(len(cols), dtype=np.int64)
        if sol is None:
            return None, n
        h[n] = _from_coeffs(C, n, n + drop + 1, shift, basis, sol)
    return h, None


def commutator_homotopies(ops: OperatorSet) -> dict[tuple[int, int], tuple[bool, int | None]]:
    """Null-homotopy solves for every commutator t_i t_j - t_j t_i."""
    C = ops.complex
    A = C.A
    out = {}
    for i in range(ops.count):
        for j in range(i + 1, ops.count):
            shift = ops.ci.degrees[i] + ops.ci.degrees[j]
            u = {}
            for n in range(C.lo + 4, C.hi + 1):
                comm = ops.t[i][n - 2] * ops.t[j][n] - ops.t[j][n - 2] * ops.t[i][n]
                u[n] = comm.map_entries(A.nf_poly)
            if not u:
                out[(i, j)] = (True, None)
                continue
            h, witness = null_homotopy(C, u, -4, shift)
            out[(i, j)] = (h is not None, witness)
    return out


# -- induced maps on Ext(-, k) ---------------------------------------------------


def induced_ext_action(ops: OperatorSet, coeffs) -> dict[int, Mat]:
    """Maps Ext^n(M, k) -> Ext^{n+2}(M, k) for eta = sum c_i chi_i.

    Minimality identifies Ext^n(M, k) with Hom(C_n, k), and the action
    is the transposed constant-term matrix of the combined operator.
    """
    C = ops.complex
    if len(coeffs) != ops.count:
        raise OperatorError(f"expected {ops.count} coefficients")
    out = {}
    for m in range(C.lo + 2, C.hi + 1):
        out[m - 2] = ops.combination_ct(coeffs, m).transpose()
    return out


@dataclass
class InjectivityVerdict:
    passed: bool
    coeffs: tuple[int, ...] | None
    tail: list[int]
    ok_M: dict[int, bool]
    ok_Mstar: dict[int, bool]
    n0_M: int | None
    n0_Mstar: int | None
    attempts: int

    @property
    def n0(self) -> int | None:
        if self.n0_M is None or self.n0_Mstar is None:
            return None
        return max(self.n0_M, self.n0_Mstar)

    def as_json(self) -> dict:
        return {
            "passed": self.passed,
            "coeffs": list(self.coeffs) if self.coeffs else None,
            "tail": self.tail,
            "n0": self.n0,
            "attempts": self.attempts,
        }


def _suffix_start(ok: dict[int, bool]) -> int | None:
    """Smallest index from which the flags are all true onward."""
    for start in sorted(ok):
        if all(v for n, v in ok.items() if n >= start):
            return start
    return None


def _injectivity_profile(ops: OperatorSet, coeffs) -> dict[int, bool]:
    """Per-index injectivity of the eta-action on positive Ext indices."""
    C = ops.complex
    act = induced_ext_action(ops, coeffs)
    return {n: act[n].rank() == C.rank(n) for n in sorted(act) if n >= 0 and n + 2 <= C.hi}


def _dual_injectivity_profile(ops: OperatorSet, coeffs) -> dict[int, bool]:
    """Same for M^*: Ext^n(M^*, k) lives at index n+1 of the dual complex."""
    dual_ops = ops.dual_operators()
    D = dual_ops.complex
    act = induced_ext_action(dual_ops, coeffs)
    out = {}
    for m in sorted(act):
        # act[m]: Hom(D_m, k) -> Hom(D_{m+2}, k) is the action on Ext^{m-1}(M^*, k)
        n = m - 1
        if n >= 0:
            out[n] = act[m].rank() == D.rank(m)
    return out


def _tail_indices(checkable: list[int], tail_len: int) -> list[int]:
    return checkable[-tail_len:] if tail_len < len(checkable) else checkable


def eventual_injectivity(
    ops: OperatorSet, coeffs, tail_len: int = 4, seed: int = 0, attempts: int = 16
) -> InjectivityVerdict:
    """Search for eta making the Ext action injective on the tail, for both
    M and M^*.  Retries seeded pseudorandom coefficient vectors when the
    supplied ones fail; "no witness found" is a legal outcome."""
    p = ops.complex.A.p
    rng = random.Random(seed)
    candidates = [tuple(int(c) % p for c in coeffs)]
    for _ in range(attempts):
        candidates.append(tuple(rng.randrange(1, p) for _ in range(ops.count)))
    tried = 0
    for cand in candidates:
        tried += 1
        okM = _injectivity_profile(ops, cand)
        okS = _dual_injectivity_profile(ops, cand)
        common = sorted(set(okM) & set(okS))
        tail = _tail_indices(common, tail_len)
        if tail and all(okM[n] and okS[n] for n in tail):
            return InjectivityVerdict(
                True, cand, tail, okM, okS, _suffix_start(okM), _suffix_start(okS), tried
            )
    okM = _injectivity_profile(ops, candidates[0])
    okS = _dual_injectivity_profile(ops, candidates[0])
    common = sorted(set(okM) & set(okS))
    return InjectivityVerdict(
        False, None, _tail_indices(common, tail_len), okM, okS, None, None, tried
    )


@dataclass
class SurjectivityVerdict:
    passed: bool
    tail: list[int]
    ok: dict[int, bool]
    linkage_ok: bool

    def as_json(self) -> dict:
        return {"passed": self.passed, "tail": self.tail, "linkage_ok": self.linkage_ok}


def eventual_surjectivity_of_chainmap(ops: OperatorSet, coeffs, tail_len: int = 4) -> SurjectivityVerdict:
    """Check that the combined chain map C_{n+2} -> C_n is surjective on
    the tail (surjectivity mod m suffices by Nakayama), and assert the
    linkage: Ext-injectivity at n forces surjectivity at n."""
    C = ops.complex
    checkable = [n for n in range(max(0, C.lo), C.hi - 1) if n + 2 <= C.hi]
    tail = _tail_indices(checkable, tail_len)
    ok = {}
    for n in tail:
        ct = ops.combination_ct(coeffs, n + 2)
        ok[n] = ct.rank() == C.rank(n)
    inj = _injectivity_profile(ops, coeffs)
    linkage = all(ok.get(n, False) for n in tail if inj.get(n, False))
    return SurjectivityVerdict(all(ok.values()) if ok else False, tail, ok, linkage)


@dataclass
class DualityVerdict:
    passed: bool
    per_relation: list[tuple[bool, int | None]]

    def as_json(self) -> dict:
        return {
            "passed": self.passed,
            "per_relation": [{"ok": ok, "witness": w} for ok, w in self.per_relation],
        }


def duality_commutation_check(ops: OperatorSet) -> DualityVerdict:
    """Compare operators computed on the dualized complex against the
    transposed operators, up to an explicitly solved chain homotopy.

    Realizes D(phi_M(chi)) = phi_{M^*}(chi) at the chain level: for each
    relation, the directly computed operator on C^* and Sigma^2 t^* must
    be homotopic at the interior indices.
    """
    C = ops.complex
    A = C.A
    dual_ops = ops.dual_operators()
    D = dual_ops.complex
    results = []
    for i in range(ops.count):
        shift = ops.ci.degrees[i]
        u = {}
        for m in range(D.lo + 2, D.hi + 1):
            n = 2 - m
            if not (C.lo + 2 <= n <= C.hi):
                continue
            diff = dual_ops.t[i][m] - ops.t[i][n].transpose()
            u[m] = diff.map_entries(A.nf_poly)
        if not u:
            results.append((True, None))
            continue
        h, witness = null_homotopy(D, u, -2, shift)
        results.append((h is not None, witness))
    return DualityVerdict(all(ok for ok, _ in results), results)


@dataclass
class GenerationVerdict:
    passed: bool
    tail: list[int]
    ok: dict[int, bool]
    n0: int | None

    def as_json(self) -> dict:
        return {"passed": self.passed, "tail": self.tail, "n0": self.n0}


def finite_generation_check(ops: OperatorSet, tail_len: int = 4) -> GenerationVerdict:
    """Check Ext^{n+2}(M,k) = sum_i image(chi_i . Ext^n(M,k)) on the window.

    Reports the smallest n0 from which generation holds onward, or
    "not observed" (n0 = None) when it never stabilizes in the window.
    """
    C = ops.complex
    checkable = [n for n in range(max(0, C.lo), C.hi - 1) if n + 2 <= C.hi]
    ok = {}
    for n in checkable:
        stacked = Mat.hstack(
            [ops.t[i][n + 2].constant_matrix().transpose() for i in range(ops.count)]
        )
        ok[n] = stacked.rank() == C.rank(n + 2)
    n0 = None
    for start in checkable:
        if all(ok[n] for n in checkable if n >= start):
            n0 = start
            break
    tail = _tail_indices(checkable, tail_len)
    return GenerationVerdict(bool(tail) and all(ok[n] for n in tail), tail, ok, n0)
