"""Finitely generated graded modules over an Artinian graded algebra.

Modules are stored extensionally: the dimension of each graded piece
plus the multiplication-by-variable maps between consecutive pieces.
Duals, Homs, kernels and pushouts then become plain linear algebra over
GF(p).  Presentations are kept only as provenance.

Degree conventions: a free module on a generator of degree e is written
with twist e (the module A(-e)); the dual of a module M is graded by
(M^*)_e = { f : f(M_d) <= A_{d+e} for all d }, so dualizing flips twist
signs.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import GradedAlgebra
from .linalg import Mat
from .poly import Poly, PolyMatrix


class ModuleError(ValueError):
    pass


def complement_projection(p: int, span_cols: Mat) -> tuple[Mat, Mat, tuple[int, ...]]:
    """Projection onto a complement of the column space of span_cols.

    Returns (proj, sect, free) where proj: k^m -> k^(m-r) kills the
    subspace, sect embeds the complement back as the standard basis
    vectors indexed by the non-pivot coordinates `free`, and
    proj @ sect = identity.
    """
    m = span_cols.nrows
    R, piv = span_cols.transpose().rref()
    pivset = set(piv)
    free = tuple(q for q in range(m) if q not in pivset)
    proj = np.zeros((len(free), m), dtype=np.int64)
    for qi, q in enumerate(free):
        proj[qi, q] = 1
        for i, pc in enumerate(piv):
            v = int(R.a[i, q])
            if v:
                proj[qi, pc] = (-v) % p
    sect = np.zeros((m, len(free)), dtype=np.int64)
    for qi, q in enumerate(free):
        sect[q, qi] = 1
    return Mat(p, proj), Mat(p, sect), free


class GradedModule:
    """Graded A-module given by piece dimensions and variable actions."""

    def __init__(self, A: GradedAlgebra, dims: dict[int, int], act: list[dict[int, Mat]], provenance=None):
        self.A = A
        self.dims = {d: n for d, n in dims.items() if n}
        self.act = act
        self.provenance = provenance
        self._mono_act_cache: dict = {}

    def degrees(self) -> list[int]:
        return sorted(self.dims)

    def dim(self, d: int) -> int:
        return self.dims.get(d, 0)

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    def is_zero(self) -> bool:
        return not self.dims

    def lo(self) -> int:
        return min(self.dims) if self.dims else 0

    def hi(self) -> int:
        return max(self.dims) if self.dims else 0

    def act_mat(self, i: int, d: int) -> Mat:
        m = self.act[i].get(d)
        if m is None:
            return Mat.zeros(self.A.p, self.dim(d + 1), self.dim(d))
        return m

    def act_monomial(self, exps, d: int) -> Mat:
        exps = tuple(exps)
        key = (exps, d)
        cached = self._mono_act_cache.get(key)
        if cached is not None:
            return cached
        m = Mat.identity(self.A.p, self.dim(d))
        cur = d
        for i, e in enumerate(exps):
            for _ in range(e):
                m = self.act_mat(i, cur) @ m
                cur += 1
        self._mono_act_cache[key] = m
        return m

    def check(self):
        """Validate shapes, commuting actions, and relation compatibility."""
        for i in range(self.A.nvars):
            for d, m in self.act[i].items():
                if m.shape != (self.dim(d + 1), self.dim(d)):
                    raise ModuleError(f"action x{i} at degree {d} has shape {m.shape}")
        for d in self.degrees():
            for i in range(self.A.nvars):
                for j in range(i + 1, self.A.nvars):
                    ij = self.act_mat(i, d + 1) @ self.act_mat(j, d)
                    ji = self.act_mat(j, d + 1) @ self.act_mat(i, d)
                    if ij != ji:
                        raise ModuleError(f"actions x{i}, x{j} do not commute at degree {d}")
            for f in self.A.relations:
                df = f.degree()
                acc = Mat.zeros(self.A.p, self.dim(d + df), self.dim(d))
                for e, c in f.terms.items():
                    acc = acc + self.act_monomial(e, d).scale(c)
                if not acc.is_zero():
                    raise ModuleError(f"relation {f.render(self.A.names)} does not annihilate degree {d}")
        return True

    def __repr__(self) -> str:
        return f"GradedModule(dims={{{', '.join(f'{d}: {n}' for d, n in sorted(self.dims.items()))}}})"


@dataclass
class ModuleMap:
    """Degree-zero map of graded modules, one matrix per degree."""

    source: GradedModule
    target: GradedModule
    comp: dict[int, Mat] = field(default_factory=dict)

    def at(self, d: int) -> Mat:
        m = self.comp.get(d)
        if m is None:
            return Mat.zeros(self.source.A.p, self.target.dim(d), self.source.dim(d))
        return m

    def is_module_map(self) -> bool:
        src, tgt = self.source, self.target
        for d in set(src.degrees()) | set(tgt.degrees()):
            for i in range(src.A.nvars):
                lhs = tgt.act_mat(i, d) @ self.at(d)
                rhs = self.at(d + 1) @ src.act_mat(i, d)
                if lhs != rhs:
                    return False
        return True

    def is_bijective(self) -> bool:
        degs = set(self.source.degrees()) | set(self.target.degrees())
        for d in degs:
            if self.source.dim(d) != self.target.dim(d):
                return False
            if self.at(d).rank() != self.source.dim(d):
                return False
        return True

    def is_surjective(self) -> bool:
        return all(self.at(d).rank() == self.target.dim(d) for d in self.target.degrees())

    def is_injective(self) -> bool:
        return all(self.at(d).rank() == self.source.dim(d) for d in self.source.degrees())


# -- basic constructors -------------------------------------------------------


def zero_module(A: GradedAlgebra) -> GradedModule:
    return GradedModule(A, {}, [dict() for _ in range(A.nvars)])


def residue_field(A: GradedAlgebra) -> GradedModule:
    """k = A/m, concentrated in degree 0."""
    return GradedModule(A, {0: 1}, [dict() for _ in range(A.nvars)])


def twist(M: GradedModule, e: int) -> GradedModule:
    """Shift internal degrees up by e: twist(M, e)_d = M_(d-e)."""
    dims = {d + e: n for d, n in M.dims.items()}
    act = [{d + e: m for d, m in M.act[i].items()} for i in range(M.A.nvars)]
    return GradedModule(M.A, dims, act)


def direct_sum(M: GradedModule, N: GradedModule) -> GradedModule:
    A = M.A
    dims = {}
    for d in set(M.dims) | set(N.dims):
        dims[d] = M.dim(d) + N.dim(d)
    act = []
    for i in range(A.nvars):
        comp = {}
        for d in dims:
            m = np.zeros((M.dim(d + 1) + N.dim(d + 1), dims[d]), dtype=np.int64)
            m[: M.dim(d + 1), : M.dim(d)] = M.act_mat(i, d).a
            m[M.dim(d + 1):, M.dim(d):] = N.act_mat(i, d).a
            if m.size:
                comp[d] = Mat(A.p, m)
        act.append(comp)
    return GradedModule(A, dims, act)


def sum_inclusions(M: GradedModule, N: GradedModule, S: GradedModule) -> tuple[ModuleMap, ModuleMap]:
    """The two canonical inclusions into a direct sum built by direct_sum."""
    p = M.A.p
    inc1, inc2 = {}, {}
    for d in S.degrees():
        a = np.zeros((S.dim(d), M.dim(d)), dtype=np.int64)
        a[: M.dim(d), :] = np.eye(M.dim(d), dtype=np.int64)
        inc1[d] = Mat(p, a)
        b = np.zeros((S.dim(d), N.dim(d)), dtype=np.int64)
        b[M.dim(d):, :] = np.eye(N.dim(d), dtype=np.int64)
        inc2[d] = Mat(p, b)
    return ModuleMap(M, S, inc1), ModuleMap(N, S, inc2)


# -- free modules ------------------------------------------------------------


class FreeModule:
    """Free graded module ⊕_j A(-t_j) with an explicit degreewise basis.

    The basis of the degree-d piece is ordered by generator index, then
    by the algebra's monomial basis of A_{d - t_j}.
    """

    def __init__(self, A: GradedAlgebra, twists):
        self.A = A
        self.twists = tuple(twists)
        self._module = None

    @property
    def rank(self) -> int:
        return len(self.twists)

    def dim(self, d: int) -> int:
        return sum(self.A.dim(d - t) for t in self.twists)

    def support(self) -> list[int]:
        if not self.twists:
            return []
        lo = min(self.twists)
        hi = max(self.twists) + self.A.top
        return [d for d in range(lo, hi + 1) if self.dim(d)]

    def layout(self, d: int) -> list[tuple[int, int, int]]:
        """(generator index, offset, block dimension) per generator."""
        out = []
        off = 0
        for j, t in enumerate(self.twists):
            k = self.A.dim(d - t)
            out.append((j, off, k))
            off += k
        return out

    def dual(self) -> "FreeModule":
        return FreeModule(self.A, tuple(-t for t in self.twists))

    def as_module(self) -> GradedModule:
        if self._module is None:
            A = self.A
            dims = {d: self.dim(d) for d in self.support()}
            act = []
            for i in range(A.nvars):
                comp = {}
                for d in dims:
                    m = np.zeros((self.dim(d + 1), self.dim(d)), dtype=np.int64)
                    tgt_layout = {j: (off, k) for j, off, k in self.layout(d + 1)}
                    for j, off, k in self.layout(d):
                        if not k:
                            continue
                        toff, tk = tgt_layout[j]
                        if tk:
                            m[toff:toff + tk, off:off + k] = A.act[i][d - self.twists[j]].a
                    if m.size:
                        comp[d] = Mat(A.p, m)
                act.append(comp)
            self._module = GradedModule(A, dims, act)
        return self._module

    def decode(self, d: int, vec) -> list[Poly]:
        """Degree-d coordinate vector -> column of polynomial entries."""
        vec = np.asarray(vec, dtype=np.int64)
        out = []
        for j, off, k in self.layout(d):
            out.append(self.A.vector_to_poly(d - self.twists[j], vec[off:off + k]) if k else self.A.zero_poly())
        return out

    def encode(self, polys, d: int) -> np.ndarray:
        """Column of polynomial entries -> degree-d coordinate vector."""
        parts = []
        for (j, off, k), q in zip(self.layout(d), polys):
            parts.append(self.A.nf_vector(q, d - self.twists[j]))
        return np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)

    def polymap_components(self, target: "FreeModule", pm: PolyMatrix, shift: int = 0) -> dict[int, Mat]:
        """Degreewise matrices of the map self -> target with entries pm.

        The map lowers internal degree by `shift`; entry (i, j) must be
        homogeneous of degree twists[j] - target.twists[i] - shift (or
        zero).
        """
        A = self.A
        if pm.nrows != target.rank or pm.ncols != self.rank:
            raise ModuleError(f"polynomial matrix shape {pm.nrows}x{pm.ncols} does not match ranks")
        comp = {}
        for d in self.support():
            rows = target.dim(d - shift)
            m = np.zeros((rows, self.dim(d)), dtype=np.int64)
            tgt_layout = target.layout(d - shift)
            for j, off, k in self.layout(d):
                if not k:
                    continue
                for i, toff, tk in tgt_layout:
                    if not tk:
                        continue
                    delta = self.twists[j] - target.twists[i] - shift
                    blk = A.mult_matrix(pm.entry(i, j), d - self.twists[j], delta=delta)
                    m[toff:toff + tk, off:off + k] = blk.a
            comp[d] = Mat(A.p, m)
        return comp

    def __repr__(self) -> str:
        return f"FreeModule(twists={self.twists})"


def free_cover_map(F: FreeModule, M: GradedModule, lifts: list[tuple[int, np.ndarray]]) -> ModuleMap:
    """The map F -> M sending generator j to its lift vector."""
    A = F.A
    comp = {}
    for d in F.support():
        cols = []
        for j, off, k in F.layout(d):
            e = F.twists[j]
            if not k:
                continue
            deg, v = lifts[j]
            act = M.act_monomial  # monomial action on M
            for mono in A.basis[d - e]:
                cols.append(act(mono, e).apply(v))
        comp[d] = Mat.from_columns(A.p, M.dim(d), cols)
    return ModuleMap(F.as_module(), M, comp)


# -- minimal generators, kernels, syzygies ------------------------------------


def minimal_generators(M: GradedModule) -> list[tuple[int, np.ndarray]]:
    """Homogeneous lifts of a basis of M/mM.

    Processed lowest degree first; within a degree the lifts are the
    standard basis vectors at the non-pivot coordinates of mM_d, so the
    result is deterministic.
    """
    gens = []
    for d in M.degrees():
        imgs = [M.act_mat(i, d - 1) for i in range(M.A.nvars) if M.dim(d - 1)]
        W = Mat.hstack(imgs) if imgs else Mat.zeros(M.A.p, M.dim(d), 0)
        _, _, free = complement_projection(M.A.p, W)
        for q in free:
            v = np.zeros(M.dim(d), dtype=np.int64)
            v[q] = 1
            gens.append((d, v))
    return gens


def minimal_cover(M: GradedModule) -> tuple[FreeModule, ModuleMap, list[tuple[int, np.ndarray]]]:
    gens = minimal_generators(M)
    F = FreeModule(M.A, tuple(d for d, _ in gens))
    phi = free_cover_map(F, M, gens)
    return F, phi, gens


def kernel_of(phi: ModuleMap) -> tuple[GradedModule, ModuleMap]:
    """Kernel of a degree-zero map, with its inclusion into the source."""
    src = phi.source
    A = src.A
    dims = {}
    incl = {}
    for d in src.degrees():
        K = phi.at(d).kernel_basis()
        if K.ncols:
            dims[d] = K.ncols
            incl[d] = K
    act = [dict() for _ in range(A.nvars)]
    for d in dims:
        for i in range(A.nvars):
            img = src.act_mat(i, d) @ incl[d]
            if dims.get(d + 1, 0) == 0:
                if not img.is_zero():
                    raise ModuleError("kernel is not action-stable; source map is not a module map")
                continue
            coords = incl[d + 1].solve_multi(img)
            if coords is None:
                raise ModuleError("kernel basis does not absorb the action; internal fault")
            act[i][d] = coords
    K = GradedModule(A, dims, act)
    return K, ModuleMap(K, src, incl)


def syzygy(M: GradedModule) -> tuple[GradedModule, ModuleMap]:
    """First syzygy: kernel of the minimal free cover, with inclusion."""
    F, phi, _ = minimal_cover(M)
    return kernel_of(phi)


# -- duals ---------------------------------------------------------------


@dataclass
class DualData:
    """Hom_A(M, A) together with the solution bases realizing it.

    An element of (M^*)_e is a flat vector over the blocks f_d
    (matrices M_d -> A_{d+e}, row-major), one block per degree d of M
    with A_{d+e} nonzero.  `basis[e]` holds the chosen solution basis
    of the equivariance system as columns.
    """

    base: GradedModule
    module: GradedModule
    basis: dict[int, Mat]
    layout: dict[int, list[tuple[int, int, int, int]]]  # e -> [(d, offset, rowsA, colsM)]

    def block(self, e: int, flat: np.ndarray, d: int) -> Mat:
        for dd, off, r, c in self.layout[e]:
            if dd == d:
                return Mat(self.base.A.p, flat[off:off + r * c].reshape(r, c))
        return Mat.zeros(self.base.A.p, self.base.A.dim(d + e), self.base.dim(d))


def dual_data(M: GradedModule) -> DualData:
    A = M.A
    p = A.p
    if M.is_zero():
        return DualData(M, zero_module(A), {}, {})
    shifts = range(-M.hi(), A.top - M.lo() + 1)
    layouts: dict[int, list[tuple[int, int, int, int]]] = {}
    bases: dict[int, Mat] = {}
    dims: dict[int, int] = {}
    for e in shifts:
        layout = []
        off = 0
        for d in M.degrees():
            r = A.dim(d + e)
            c = M.dim(d)
            if r:
                layout.append((d, off, r, c))
                off += r * c
        nunk = off
        if nunk == 0:
            continue
        pos = {d: (o, r, c) for d, o, r, c in layout}
        rows = []
        for d in M.degrees():
            for i in range(A.nvars):
                nr = A.dim(d + e + 1) * M.dim(d)
                if nr == 0:
                    continue
                row = np.zeros((nr, nunk), dtype=np.int64)
                # f_{d+1} ∘ x_i  contributes kron(I, actM^T)
                if (d + 1) in pos:
                    o, r, c = pos[d + 1]
                    actM = M.act_mat(i, d)
                    row[:, o:o + r * c] = np.kron(np.eye(A.dim(d + e + 1), dtype=np.int64), actM.a.T)
                # x_i ∘ f_d  contributes kron(actA, I); d in pos means 0 <= d+e <= top
                if d in pos:
                    o, r, c = pos[d]
                    block = np.kron(A.act[i][d + e].a, np.eye(M.dim(d), dtype=np.int64))
                    row[:, o:o + r * c] = (row[:, o:o + r * c] - block) % p
                rows.append(row)
        if rows:
            system = Mat(p, np.vstack(rows) % p)
        else:
            system = Mat.zeros(p, 0, nunk)
        K = system.kernel_basis()
        layouts[e] = layout
        if K.ncols:
            bases[e] = K
            dims[e] = K.ncols
    # action on the dual: (x_i f)_d = x_i ∘ f_d
    act = [dict() for _ in range(A.nvars)]
    for e in sorted(dims):
        K = bases[e]
        for i in range(A.nvars):
            cols = []
            for l in range(K.ncols):
                flat = K.col(l)
                out = np.zeros(sum(r * c for _, _, r, c in layouts.get(e + 1, [])), dtype=np.int64)
                for d, off, r, c in layouts.get(e + 1, []):
                    # block at degree d of x_i·f = actA[d+e] @ f_d (zero when f_d absent)
                    fd = None
                    for dd, o2, r2, c2 in layouts[e]:
                        if dd == d:
                            fd = flat[o2:o2 + r2 * c2].reshape(r2, c2)
                            break
                    if fd is not None and 0 <= d + e <= A.top:
                        blk = (A.act[i][d + e].a @ fd) % p
                        out[off:off + r * c] = blk.reshape(-1)
                cols.append(out)
            if dims.get(e + 1, 0) == 0:
                if any(v.any() for v in cols):
                    raise ModuleError("dual action leaves the computed dual; internal fault")
                continue
            target = bases[e + 1]
            coords = target.solve_multi(Mat.from_columns(p, target.nrows, cols))
            if coords is None:
                raise ModuleError("dual action is not expressible in the dual basis; internal fault")
            if coords.a.size:
                act[i][e] = coords
    Mstar = GradedModule(A, dims, act)
    return DualData(M, Mstar, bases, layouts)


def dual(M: GradedModule) -> GradedModule:
    """Hom_A(M, A) with its natural graded action."""
    return dual_data(M).module


def biduality_map(M: GradedModule) -> ModuleMap:
    """The evaluation map M -> M**, m |-> (f |-> f(m))."""
    dd1 = dual_data(M)
    Mstar = dd1.module
    dd2 = dual_data(Mstar)
    Mss = dd2.module
    p = M.A.p
    comp = {}
    for d in M.degrees():
        if d not in dd2.layout:
            continue
        size = sum(r * c for _, _, r, c in dd2.layout[d])
        cols = []
        for v in range(M.dim(d)):
            raw = np.zeros(size, dtype=np.int64)
            for e, off, r, c in dd2.layout[d]:
                # block g_e: (M*)_e -> A_{e+d}; column l is f^(l)'s block at d applied to e_v
                g = np.zeros((r, c), dtype=np.int64)
                for l in range(Mstar.dim(e)):
                    fl = dd1.block(e, dd1.basis[e].col(l), d)
                    g[:, l] = fl.a[:, v]
                raw[off:off + r * c] = g.reshape(-1)
            cols.append(raw)
        if Mss.dim(d) == 0:
            if any(v.any() for v in cols):
                raise ModuleError("evaluation lands outside the computed double dual; internal fault")
            continue
        target = dd2.basis[d]
        coords = target.solve_multi(Mat.from_columns(p, target.nrows, cols))
        if coords is None:
            raise ModuleError("evaluation is not expressible in the double dual basis; internal fault")
        comp[d] = coords
    return ModuleMap(M, Mss, comp)


# -- presentations, quotients, pushouts ----------------------------------------


def from_presentation(A: GradedAlgebra, row_twists, col_twists, entries: PolyMatrix) -> GradedModule:
    """Cokernel of the presentation F_1 -> F_0 given by a polynomial matrix.

    Entry (i, j) must be homogeneous of degree col_twists[j] -
    row_twists[i] (or zero); rows index F_0 generators.
    """
    F0 = FreeModule(A, tuple(row_twists))
    F1 = FreeModule(A, tuple(col_twists))
    for i in range(entries.nrows):
        for j in range(entries.ncols):
            q = entries.entry(i, j)
            want = F1.twists[j] - F0.twists[i]
            if not q.is_zero() and (not q.is_homogeneous() or q.degree() != want):
                raise ModuleError(
                    f"presentation entry ({i},{j}) must be homogeneous of degree {want}"
                )
    comp = F1.polymap_components(F0, entries)
    M0 = F0.as_module()
    spans = {d: comp[d] for d in comp if d in M0.dims}
    Q, _ = quotient_module(M0, spans)
    Q.provenance = (tuple(row_twists), tuple(col_twists), entries)
    return Q


def quotient_module(M: GradedModule, spans: dict[int, Mat]) -> tuple[GradedModule, ModuleMap]:
    """Quotient of M by the submodule spanned degreewise by `spans` columns.

    The span must be action-stable (it is whenever it comes from a
    module map); this is asserted degreewise.
    """
    A = M.A
    p = A.p
    projs, sects = {}, {}
    dims = {}
    for d in M.degrees():
        S = spans.get(d, Mat.zeros(p, M.dim(d), 0))
        proj, sect, _ = complement_projection(p, S)
        projs[d], sects[d] = proj, sect
        if proj.nrows:
            dims[d] = proj.nrows
    act = [dict() for _ in range(A.nvars)]
    for d in dims:
        for i in range(A.nvars):
            if d in spans and spans[d].ncols and (d + 1) in projs:
                pushed = projs[d + 1] @ (M.act_mat(i, d) @ spans[d])
                if not pushed.is_zero():
                    raise ModuleError("quotient span is not action-stable; internal fault")
            if dims.get(d + 1, 0):
                act[i][d] = projs[d + 1] @ M.act_mat(i, d) @ sects[d]
    Q = GradedModule(A, dims, act)
    return Q, ModuleMap(M, Q, projs)


def pushout(f: ModuleMap, g: ModuleMap) -> GradedModule:
    """Pushout (M ⊕ N) / {(f(l), -g(l))} of maps with a shared source."""
    if f.source is not g.source and f.source.dims != g.source.dims:
        raise ModuleError("pushout maps must share their source")
    M, N = f.target, g.target
    S = direct_sum(M, N)
    spans = {}
    for d in f.source.degrees():
        top = f.at(d).a
        bot = (-g.at(d).a) % g.source.A.p
        spans[d] = Mat(M.A.p, np.vstack([top, bot]))
    Q, _ = quotient_module(S, spans)
    return Q


# -- tensor extension (the construction over A1 ⊗ A2) -------------------------


def tensor_extend(M1: GradedModule, A2: GradedAlgebra, T: GradedAlgebra) -> GradedModule:
    """M1 ⊗_k A2 as a module over the tensor algebra T = A1 ⊗ A2.

    Pieces are (M)_d = ⊕_{a+b=d} (M1)_a ⊗ (A2)_b, with A1-variables
    acting on the first factor and A2-variables on the second.
    """
    A1 = M1.A
    if A1.p != A2.p:
        raise ModuleError("modulus mismatch in tensor extension")
    n1 = A1.nvars
    if T.nvars != n1 + A2.nvars:
        raise ModuleError("tensor algebra does not match the factors")
    p = T.p

    def blocks(d):
        out = []
        off = 0
        for a in M1.degrees():
            b = d - a
            k = M1.dim(a) * A2.dim(b)
            if k:
                out.append((a, b, off, k))
                off += k
        return out, off

    dims = {}
    support = range(M1.lo(), M1.hi() + A2.top + 1)
    for d in support:
        _, size = blocks(d)
        if size:
            dims[d] = size
    act = [dict() for _ in range(T.nvars)]
    for d in dims:
        src, ssize = blocks(d)
        tgt, tsize = blocks(d + 1)
        tpos = {(a, b): off for a, b, off, _ in tgt}
        for i in range(T.nvars):
            m = np.zeros((tsize, ssize), dtype=np.int64)
            for a, b, off, k in src:
                if i < n1:
                    key = (a + 1, b)
                    if key in tpos and M1.dim(a + 1):
                        blk = np.kron(M1.act_mat(i, a).a, np.eye(A2.dim(b), dtype=np.int64)) % p
                        m[tpos[key]:tpos[key] + M1.dim(a + 1) * A2.dim(b), off:off + k] = blk
                else:
                    key = (a, b + 1)
                    if key in tpos and A2.dim(b + 1):
                        blk = np.kron(np.eye(M1.dim(a), dtype=np.int64), A2.act[i - n1][b].a) % p
                        m[tpos[key]:tpos[key] + M1.dim(a) * A2.dim(b + 1), off:off + k] = blk
            if m.size:
                act[i][d] = Mat(p, m)
    return GradedModule(T, dims, act)
