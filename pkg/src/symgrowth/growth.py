"""Growth measures for Betti tables: Poincare series and complexity.

All series arithmetic is exact: recurrences are fitted over the
rationals, numerators/denominators are normalized to integer
polynomials with denominator constant term 1, and the fitted series is
required to reproduce the input window exactly.

Complexity resolution order: when a validated rational fit exists, the
answer is exact (order of the pole at t = 1; a nonzero tail with no
pole at 1 forces radius of convergence < 1, i.e. exponential growth).
Without a fit, ratio and finite-difference heuristics are used and
flagged as such.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .complexes import CompleteResolution, minimal_resolution
from .modules import dual


class FitError(RuntimeError):
    pass


# -- exact polynomial helpers (coefficient lists, lowest degree first) --------


def _trim(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _poly_sub(a: list, b: list) -> list:
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    return _trim(out)


def _poly_divmod(a: list, b: list) -> tuple[list, list]:
    a = [Fraction(x) for x in a]
    b = [Fraction(x) for x in b]
    _trim(a), _trim(b)
    if not b:
        raise ZeroDivisionError
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    while len(a) >= len(b) and a:
        k = len(a) - len(b)
        c = a[-1] / b[-1]
        q[k] = c
        for i in range(len(b)):
            a[k + i] -= c * b[i]
        _trim(a)
    return _trim(q), a


def _poly_gcd(a: list, b: list) -> list:
    a = _trim([Fraction(x) for x in a])
    b = _trim([Fraction(x) for x in b])
    while b:
        _, r = _poly_divmod(a, b)
        a, b = b, r
    if a:
        lead = a[-1]
        a = [x / lead for x in a]
    return a


@dataclass(frozen=True)
class RationalSeries:
    """num/den with integer coefficients, den[0] == 1, lowest degree first."""

    num: tuple[int, ...]
    den: tuple[int, ...]

    def expand(self, length: int) -> list[int]:
        out = []
        for m in range(length):
            v = self.num[m] if m < len(self.num) else 0
            for i in range(1, min(m, len(self.den) - 1) + 1):
                v -= self.den[i] * out[m - i]
            out.append(v)
        return out

    def pole_order_at_one(self) -> int:
        return max(0, _one_multiplicity(self.den) - _one_multiplicity(self.num))

    def as_json(self) -> dict:
        return {"num": list(self.num), "den": list(self.den)}

    def __str__(self) -> str:
        def fmt(c):
            return "+".join(f"{v}t^{i}" if i else str(v) for i, v in enumerate(c) if v) or "0"

        return f"({fmt(self.num)}) / ({fmt(self.den)})"


def _one_multiplicity(poly) -> int:
    """Multiplicity of (1 - t) as a factor of an integer polynomial."""
    p = _trim(list(poly))
    k = 0
    while p and sum(p) == 0:
        # p = (1 - t) q, so q_m = p_m + q_{m-1}
        q = []
        for m in range(len(p) - 1):
            q.append(p[m] + (q[m - 1] if m else 0))
        p = _trim(q)
        k += 1
    return k


def pole_order_at_one(s: RationalSeries) -> int:
    return s.pole_order_at_one()


# -- recurrence fitting --------------------------------------------------------


def _solve_exact(rows: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction] | None:
    """One exact solution with free variables zero, or None."""
    m = len(rows)
    n = len(rows[0]) if rows else 0
    aug = [row[:] + [rhs[i]] for i, row in enumerate(rows)]
    piv_cols = []
    r = 0
    for c in range(n):
        pr = next((i for i in range(r, m) if aug[i][c]), None)
        if pr is None:
            continue
        aug[r], aug[pr] = aug[pr], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [v * inv for v in aug[r]]
        for i in range(m):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [v - f * w for v, w in zip(aug[i], aug[r])]
        piv_cols.append(c)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if aug[i][n]:
            return None
    x = [Fraction(0)] * n
    for i, c in enumerate(piv_cols):
        x[c] = aug[i][n]
    return x


def fit_rational(seq, guard: int = 3) -> RationalSeries | None:
    """Fit the minimal validated linear recurrence to an integer sequence.

    The recurrence order r is minimized first, then the transient length
    s (the generating function numerator may have degree up to s+r-1).
    Coefficients are fitted on everything except the last `guard` terms
    and must validate there; no recurrence of order <= len/2 - guard
    fitting this way yields None.  The returned series reproduces the
    entire input exactly.
    """
    seq = [int(v) for v in seq]
    L = len(seq)
    if L < 2 * guard + 4:
        raise ValueError(f"need at least {2 * guard + 4} terms for guard {guard}")
    rmax = L // 2 - guard
    for r in range(rmax + 1):
        smax = max(0, L - guard - 2 * r - 2)
        for s in range(smax + 1):
            series = _try_fit(seq, r, s, guard)
            if series is not None:
                return series
    return None


def _try_fit(seq: list[int], r: int, s: int, guard: int) -> RationalSeries | None:
    L = len(seq)
    start = r + s
    fit_ms = range(start, L - guard)
    if len(fit_ms) < max(r, 1) + 1:
        return None
    if r == 0:
        coeffs: list[Fraction] = []
    else:
        rows = [[Fraction(seq[m - i]) for i in range(1, r + 1)] for m in fit_ms]
        rhs = [Fraction(seq[m]) for m in fit_ms]
        coeffs = _solve_exact(rows, rhs)
        if coeffs is None:
            return None
    # validate the recurrence on every index from `start` on (guard included)
    for m in range(start, L):
        pred = sum(coeffs[i - 1] * seq[m - i] for i in range(1, r + 1))
        if Fraction(seq[m]) != pred:
            return None
    den = [Fraction(1)] + [-c for c in coeffs]
    conv = []
    for m in range(L):
        v = Fraction(0)
        for i in range(min(m, r) + 1):
            v += den[i] * seq[m - i]
        conv.append(v)
    if any(conv[m] for m in range(start, L)):
        return None
    num = _trim(conv[:start] if start else [])
    return _normalize(num, den, seq)


def _normalize(num: list[Fraction], den: list[Fraction], seq: list[int]) -> RationalSeries:
    g = _poly_gcd(num, den)
    if len(g) > 1:
        num, _ = _poly_divmod(num, g)
        den, _ = _poly_divmod(den, g)
    if not den or den[0] == 0:
        raise FitError("denominator lost its constant term during reduction")
    c0 = den[0]
    num = [v / c0 for v in num]
    den = [v / c0 for v in den]
    lam = 1
    for v in num + den:
        lam = lam * v.denominator // gcd(lam, v.denominator)
    inum = [int(v * lam) for v in num]
    iden = [int(v * lam) for v in den]
    content = 0
    for v in inum + iden:
        content = gcd(content, abs(v))
    if content > 1:
        inum = [v // content for v in inum]
        iden = [v // content for v in iden]
    if iden[0] != 1:
        raise FitError("integer normalization with unit constant term failed")
    series = RationalSeries(tuple(inum), tuple(iden))
    if series.expand(len(seq)) != seq:
        raise FitError("fitted series does not reproduce the input window")
    return series


# -- complexity ---------------------------------------------------------------

EXPONENTIAL = "exponential"
INCONCLUSIVE = "inconclusive"

# ratio test: > 1 + 1/10 on at least 5 consecutive ratios
_RATIO_NUM, _RATIO_DEN, _RATIO_RUN = 11, 10, 5


@dataclass
class ComplexityResult:
    value: int | str
    route: str
    heuristic: bool
    series: RationalSeries | None = None

    @property
    def pole_order(self) -> int | None:
        return self.series.pole_order_at_one() if self.series else None


def complexity(seq, guard: int = 3) -> ComplexityResult:
    """Polynomial growth degree of a Betti tail, or the exponential marker.

    With a validated rational fit the answer is exact; otherwise the
    ratio / finite difference fallbacks are flagged heuristic.
    """
    seq = [int(v) for v in seq]
    if len(seq) < 6:
        raise ValueError("complexity needs a tail of length >= 6")
    series = fit_rational(seq, guard) if len(seq) >= 2 * guard + 4 else None
    if series is not None:
        if len(series.den) == 1:
            # polynomial generating function: tail is eventually zero
            return ComplexityResult(0, "rational", False, series)
        po = series.pole_order_at_one()
        if po >= 1:
            return ComplexityResult(po, "rational", False, series)
        # rational, nonzero tail, no pole at 1: radius < 1, so exponential
        return ComplexityResult(EXPONENTIAL, "rational", False, series)
    if _ratios_exponential(seq):
        return ComplexityResult(EXPONENTIAL, "ratio-heuristic", True)
    return ComplexityResult(_difference_heuristic(seq), "difference-heuristic", True)


def _ratios_exponential(seq) -> bool:
    run = 0
    for a, b in zip(seq, seq[1:]):
        if a > 0 and b * _RATIO_DEN > a * _RATIO_NUM:
            run += 1
            if run >= _RATIO_RUN:
                return True
        else:
            run = 0
    return False


def _difference_heuristic(seq) -> int:
    # beta ~ n^(t-1) has vanishing t-fold differences, so report the
    # smallest t whose iterated difference is nonpositive on its tail
    cur = list(seq)
    for t in range(len(seq)):
        half = cur[len(cur) // 2:]
        if not half or all(v <= 0 for v in half):
            return t
        cur = [b - a for a, b in zip(cur, cur[1:])]
    return len(seq)


# -- symmetric growth verdict ---------------------------------------------------


@dataclass
class GrowthReport:
    cx_plus: int | str
    cx_minus: int | str
    pole_plus: int | None
    pole_minus: int | None
    series_plus: RationalSeries | None
    series_minus: RationalSeries | None
    symmetric: bool | str
    window: tuple[int, int]
    guard: int
    four_way: dict | None = None

    @property
    def conclusive(self) -> bool:
        return self.symmetric is True or self.symmetric is False


def _effective_guard(lengths, guard: int) -> int:
    shortest = min(lengths)
    return max(1, min(guard, (shortest - 4) // 2))


def _cx_value(res: ComplexityResult) -> int | str:
    if res.heuristic:
        return INCONCLUSIVE
    return res.value


def symmetric_growth_verdict(cr: CompleteResolution, guard: int = 3) -> GrowthReport:
    """Compare left and right growth of a complete resolution window.

    Reports cx+ and cx- with their Poincare series, the symmetric
    verdict (a boolean only when both sides carry validated rational
    fits), and the four-way complexity record obtained by additionally
    resolving M^* and M^**.
    """
    table = cr.betti()
    pos = table.positive()
    neg = table.negative()
    g = _effective_guard([len(pos), len(neg)], guard)
    cp = complexity(pos, g)
    cm = complexity(neg, g)
    vp, vm = _cx_value(cp), _cx_value(cm)
    if isinstance(vp, int) and isinstance(vm, int):
        symmetric: bool | str = vp == vm
    elif vp == EXPONENTIAL and vm == EXPONENTIAL:
        symmetric = INCONCLUSIVE
    elif INCONCLUSIVE in (vp, vm):
        symmetric = INCONCLUSIVE
    else:
        # one validated exponential side against a validated polynomial side
        symmetric = False
    steps = cr.complex.hi
    four_way = None
    if isinstance(vp, int) and isinstance(vm, int):
        # cx+(M^*): the fresh resolution of M^* built for the splice
        dual_pos = [cr.res_Mstar.complex.rank(n) for n in range(steps + 1)]
        # cx-(M^*): beta_{-n}(M^*) = beta_{n-1}(M^**), resolving M^** afresh
        mss = dual(cr.dualM.module)
        res_ss = minimal_resolution(mss, steps - 1)
        dual_neg = [dual_pos[0]] + [res_ss.complex.rank(n) for n in range(steps)]
        gd = _effective_guard([len(dual_pos), len(dual_neg)], guard)
        cdp = complexity(dual_pos, gd)
        cdm = complexity(dual_neg, gd)
        values = {
            "cx_plus_M": vp,
            "cx_minus_M": vm,
            "cx_plus_Mdual": _cx_value(cdp),
            "cx_minus_Mdual": _cx_value(cdm),
        }
        distinct = set(values.values())
        four_way = dict(values, equal=(len(distinct) == 1))
    return GrowthReport(
        cx_plus=vp,
        cx_minus=vm,
        pole_plus=cp.pole_order,
        pole_minus=cm.pole_order,
        series_plus=cp.series,
        series_minus=cm.series,
        symmetric=symmetric,
        window=(cr.complex.lo, cr.complex.hi),
        guard=g,
        four_way=four_way,
    )
