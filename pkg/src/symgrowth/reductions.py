"""The inductive reduction behind the symmetric-growth theorem.

One reduction step realizes a degree-2 cohomology element eta as a map
f_eta: Omega^2 M -> M (twisted so the map has degree zero), forms the
extension

    0 -> M(twist) -> K -> Omega^1 M -> 0

as a pushout along the syzygy inclusion, and verifies the Betti-number
and Poincare-series identities that drop both complexities by exactly
one.  Iterating until complexity zero gives the full ladder.

Betti identities used (from the two short exact sequences of Tate
cohomology once the connecting maps are injective/surjective):

    beta_{n+1}(K) = beta_{n+2}(M) - beta_n(M)
    beta_{-n}(K)  = beta_{-n}(M)  - beta_{2-n}(M)

The negative-side identity is oriented so both sides are nonnegative;
this is the orientation forced by the exact sequence.
"""

from __future__ import annotations

from dataclasses import dataclass

from .complexes import CompleteResolution, complete_resolution
from .growth import GrowthReport, _poly_divmod, _poly_mul, _poly_sub, fit_rational, symmetric_growth_verdict
from .linalg import Mat
from .modules import GradedModule, ModuleMap, pushout, twist
from .operators import InjectivityVerdict, OperatorSet, eventual_injectivity, lift_and_decompose


class ReductionError(RuntimeError):
    pass


class ReductionRefused(ReductionError):
    """Preconditions for a reduction step are not met."""


ETA_HOMOLOGICAL_DEGREE = 2


def eta_map(ops: OperatorSet, coeffs) -> tuple[ModuleMap, int]:
    """The cocycle f_eta: Omega^2 M -> twist(M, s) read off the operators.

    s is the shared internal degree of the active relations; mixing
    relations of different degrees cannot give a homogeneous map and is
    rejected.
    """
    cr = ops.cr
    if cr is None:
        raise ReductionError("eta_map needs operators built on a complete resolution")
    active = [i for i, c in enumerate(coeffs) if c % cr.M.A.p]
    if not active:
        raise ReductionRefused("eta = 0 does not induce a reduction")
    degs = {ops.ci.degrees[i] for i in active}
    if len(degs) != 1:
        raise ReductionError(f"active operators have mixed internal degrees {sorted(degs)}")
    s = degs.pop()
    res = cr.res_M
    om2 = res.syz[2]
    incl2 = res.incls[2]
    cover2 = res.covers[2]
    pi0 = res.covers[0]
    tau = ops.combination(coeffs, 2)
    C = ops.complex
    tau_comps = C.free(2).polymap_components(C.free(0), tau, shift=s)
    Mtw = twist(cr.M, s)
    comp = {}
    for d in om2.degrees():
        right_inv = cover2.at(d).solve_multi(Mat.identity(cr.M.A.p, om2.dim(d)))
        if right_inv is None:
            raise ReductionError("minimal cover is not surjective; internal fault")
        T = tau_comps.get(d, Mat.zeros(cr.M.A.p, cr.M.dim(d - s), C.free(2).dim(d)))
        comp[d] = pi0.at(d - s) @ T @ right_inv
    f = ModuleMap(om2, Mtw, comp)
    return f, s


@dataclass
class IdentityRecord:
    n: int
    lhs: int
    rhs: int

    @property
    def ok(self) -> bool:
        return self.lhs == self.rhs


@dataclass
class PoincareRelation:
    pos_residual_polynomial: bool
    neg_residual_polynomial: bool
    pole_plus_M: int
    pole_plus_K: int
    pole_minus_M: int
    pole_minus_K: int

    @property
    def pole_drop_ok(self) -> bool:
        return (
            self.pole_plus_K == max(self.pole_plus_M - 1, 0)
            and self.pole_minus_K == max(self.pole_minus_M - 1, 0)
        )

    @property
    def passed(self) -> bool:
        return self.pos_residual_polynomial and self.neg_residual_polynomial and self.pole_drop_ok


@dataclass
class ReductionStep:
    coeffs: tuple[int, ...]
    internal_degree: int
    n0: int
    K: GradedModule
    cr_M: CompleteResolution
    cr_K: CompleteResolution
    injectivity: InjectivityVerdict
    pos_identities: list[IdentityRecord]
    neg_identities: list[IdentityRecord]
    poincare: PoincareRelation | None

    @property
    def identities_ok(self) -> bool:
        return all(r.ok for r in self.pos_identities + self.neg_identities)


def build_extension(
    ops: OperatorSet, coeffs, steps: int | None = None, tail_len: int = 4, guard: int = 3
) -> ReductionStep:
    """One reduction step for eta = sum c_i chi_i on the module of ops.

    Refuses when the module is already at complexity zero (bounded
    resolution: nothing to reduce) or when eta fails the two-sided
    injectivity precondition with exactly the supplied coefficients.
    """
    cr = ops.cr
    if cr is None:
        raise ReductionError("build_extension needs operators built on a complete resolution")
    M = cr.M
    if cr.res_M.complex.rank(1) == 0:
        raise ReductionRefused("module has a bounded resolution (complexity 0); nothing to reduce")
    inj = eventual_injectivity(ops, coeffs, tail_len=tail_len, attempts=0)
    if not inj.passed:
        raise ReductionRefused(
            "eta does not induce injective Ext maps on the window tail for both M and M*"
        )
    f_eta, s = eta_map(ops, coeffs)
    K = pushout(cr.res_M.incls[2], f_eta)
    if steps is None:
        steps = cr.complex.hi
    cr_K = complete_resolution(K, steps)
    bM = cr.betti()
    bK = cr_K.betti()
    n0 = inj.n0 if inj.n0 is not None else 0
    minimal_both = not (cr.has_free_summand or cr_K.has_free_summand)
    # positive identity at n uses the connecting maps at n and n+1, both
    # controlled by the eta-action on Ext(M, k) from n0_M on
    pos_start = max(inj.n0_M or 0, 0 if minimal_both else 1)
    # negative identity at m uses the connecting maps at -m and -m+1,
    # controlled by the dual-side chain maps g_{m-3}, g_{m-4}
    neg_start = max((inj.n0_Mstar or 0) + 4, 2 if minimal_both else 4)
    pos = []
    for n in range(pos_start, min(cr.complex.hi - 2, cr_K.complex.hi - 1) + 1):
        pos.append(IdentityRecord(n, bK[n + 1], bM[n + 2] - bM[n]))
    neg = []
    for n in range(neg_start, min(cr_K.complex.hi, cr.complex.hi) + 1):
        neg.append(IdentityRecord(n, bK[-n], bM[-n] - bM[2 - n]))
    bad = [r for r in pos + neg if not r.ok]
    if bad:
        raise ReductionError(
            f"Betti identity violated at guaranteed index {bad[0].n}: {bad[0].lhs} != {bad[0].rhs}"
        )
    poincare = _poincare_relation(bM, bK, guard)
    return ReductionStep(
        coeffs=tuple(int(c) for c in coeffs),
        internal_degree=s,
        n0=n0,
        K=K,
        cr_M=cr,
        cr_K=cr_K,
        injectivity=inj,
        pos_identities=pos,
        neg_identities=neg,
        poincare=poincare,
    )


def _is_polynomial(num_a, den_a, num_b, den_b) -> bool:
    """Whether num_a/den_a - num_b/den_b is a polynomial (exact division)."""
    num = _poly_sub(_poly_mul(list(num_a), list(den_b)), _poly_mul(list(num_b), list(den_a)))
    den = _poly_mul(list(den_a), list(den_b))
    if not num:
        return True
    _, rem = _poly_divmod(num, den)
    return not rem


def _poincare_relation(bM, bK, guard: int) -> PoincareRelation | None:
    posM, negM = bM.positive(), bM.negative()
    posK, negK = bK.positive(), bK.negative()
    shortest = min(map(len, (posM, negM, posK, negK)))
    g = max(1, min(guard, (shortest - 4) // 2))
    L = shortest  # compare on a common window
    sM = fit_rational(posM[:L], g)
    sK = fit_rational(posK[:L], g)
    tM = fit_rational(negM[:L], g)
    tK = fit_rational(negK[:L], g)
    if None in (sM, sK, tM, tK):
        return None
    e = ETA_HOMOLOGICAL_DEGREE
    one_minus_te = [1] + [0] * (e - 1) + [-1]
    # (1 - t^e) P+(M) - t^(e-1) P+(K) is a polynomial
    pos_ok = _is_polynomial(
        _poly_mul(one_minus_te, list(sM.num)), list(sM.den),
        [0] * (e - 1) + list(sK.num), list(sK.den),
    )
    # P-(K) - (1 - t^e) P-(M) is a polynomial
    neg_ok = _is_polynomial(
        list(tK.num), list(tK.den),
        _poly_mul(one_minus_te, list(tM.num)), list(tM.den),
    )
    return PoincareRelation(
        pos_residual_polynomial=pos_ok,
        neg_residual_polynomial=neg_ok,
        pole_plus_M=sM.pole_order_at_one(),
        pole_plus_K=sK.pole_order_at_one(),
        pole_minus_M=tM.pole_order_at_one(),
        pole_minus_K=tK.pole_order_at_one(),
    )


def verify_poincare_relation(step: ReductionStep, guard: int = 3) -> PoincareRelation:
    """Re-derive the series relation for a completed step (must fit)."""
    rel = _poincare_relation(step.cr_M.betti(), step.cr_K.betti(), guard)
    if rel is None:
        raise ReductionError("rational fits unavailable on this window")
    return rel


@dataclass
class InductionLadder:
    rungs: list[ReductionStep]
    reports: list[GrowthReport]
    cx_sequence: list[int]

    @property
    def length(self) -> int:
        return len(self.rungs)

    @property
    def all_symmetric(self) -> bool:
        return all(r.symmetric is True for r in self.reports)


def full_induction(
    M: GradedModule, steps: int = 10, tail_len: int = 4, seed: int = 0, guard: int = 3
) -> InductionLadder:
    """Iterate reduction steps until complexity zero.

    At each rung the complete resolution and growth verdict are
    recomputed, eta is searched (seeded) among coefficient vectors
    passing the two-sided injectivity check, and the extension is built.
    The ladder cannot be longer than the number of operators.
    """
    rungs: list[ReductionStep] = []
    reports: list[GrowthReport] = []
    cxs: list[int] = []
    current = M
    bound = None
    while True:
        cr = complete_resolution(current, steps)
        rep = symmetric_growth_verdict(cr, guard)
        reports.append(rep)
        if not isinstance(rep.cx_plus, int):
            raise ReductionError(f"complexity not determined on this window: {rep.cx_plus}")
        cxs.append(rep.cx_plus)
        if rep.cx_plus == 0:
            break
        ops = lift_and_decompose(cr)
        if bound is None:
            bound = ops.count
        if len(rungs) >= bound:
            raise ReductionError(
                f"ladder exceeded the operator-count bound {bound}; internal fault"
            )
        witness = eventual_injectivity(ops, (1,) * ops.count, tail_len=tail_len, seed=seed)
        if not witness.passed:
            raise ReductionError("no eta witness found for the reduction step")
        step = build_extension(ops, witness.coeffs, steps=steps, tail_len=tail_len, guard=guard)
        rungs.append(step)
        current = step.K
    return InductionLadder(rungs, reports, cxs)
