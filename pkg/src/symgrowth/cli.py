"""Batch command line front end.

Commands map one-to-one onto engine operations (resolve, complete,
betti, poincare, cx, symgrowth, gdim, operators, duality-check, reduce,
construct).  Output is a human-readable table on stdout plus a JSON
report with frozen field names:

    {"betti_plus": [int] | null,
     "betti_minus": [int] | null,          # beta_-1, beta_-2, ...
     "poincare_plus": {"num": [int], "den": [int]} | null,
     "poincare_minus": {...} | null,
     "cx_plus": int | "exponential" | "inconclusive" | null,
     "cx_minus": ...,
     "symmetric": bool | "inconclusive" | null,
     "checks": [{"name": str, "verdict": str, "witness": ...}]}

Exit status 0 when the requested computation ran and produced verdicts
(failing verdicts included); 1 for user errors and refused
preconditions (structured error JSON); 2 for internal faults.
"""

from __future__ import annotations

import argparse
import json
import sys

from .algebra import verify_ci
from .complexes import (
    GdimError,
    complete_resolution,
    gdim_zero_check,
    minimal_resolution,
    negative_betti_via_dual,
)
from .fixtures import construction_instance, fixture_names
from .growth import complexity, symmetric_growth_verdict
from .jobs import JobError, JobSpec, materialize, parse_job
from .operators import (
    OperatorError,
    chain_map_defects,
    commutator_homotopies,
    duality_commutation_check,
    eventual_injectivity,
    eventual_surjectivity_of_chainmap,
    finite_generation_check,
    lift_and_decompose,
    reconstruction_defects,
)
from .reductions import ReductionRefused, build_extension, full_induction


class UserError(RuntimeError):
    pass


def _report() -> dict:
    return {
        "betti_plus": None,
        "betti_minus": None,
        "poincare_plus": None,
        "poincare_minus": None,
        "cx_plus": None,
        "cx_minus": None,
        "symmetric": None,
        "checks": [],
    }


def _check(report, name, ok, witness=None):
    verdict = ok if isinstance(ok, str) else ("pass" if ok else "fail")
    report["checks"].append({"name": name, "verdict": verdict, "witness": witness})


def _betti_fields(report, cr):
    t = cr.betti()
    report["betti_plus"] = t.positive()
    report["betti_minus"] = [t[-n] for n in range(1, -cr.complex.lo + 1)]


def _series_fields(report, rep):
    if rep.series_plus is not None:
        report["poincare_plus"] = rep.series_plus.as_json()
    if rep.series_minus is not None:
        report["poincare_minus"] = rep.series_minus.as_json()
    report["cx_plus"] = rep.cx_plus
    report["cx_minus"] = rep.cx_minus
    report["symmetric"] = rep.symmetric


def _structure_checks(report, C, label=""):
    pre = label + "-" if label else ""
    _check(report, pre + "d.d=0", C.dd_is_zero())
    interior_ok = all(C.exact_at(n) for n in C.interior())
    _check(report, pre + "exact-at-interior", interior_ok)


def run(job: JobSpec) -> dict:
    """Execute a job; returns the JSON report (schema above)."""
    mat = materialize(job)
    A, M = mat.algebra, mat.module
    report = _report()
    cmd = job.command

    if cmd == "resolve":
        res = minimal_resolution(M, job.steps)
        report["betti_plus"] = res.betti_numbers()
        _check(report, "minimal", res.complex.is_minimal())
        _structure_checks(report, res.complex)
        return report

    if cmd == "gdim":
        cert = gdim_zero_check(M, max(1, job.steps))
        _check(report, "reflexive", cert.reflexive)
        _check(report, "ext-M-vanishes", cert.ext_M_vanishes, witness=cert.ext_M)
        _check(report, "ext-Mdual-vanishes", cert.ext_Mdual_vanishes, witness=cert.ext_Mdual)
        _check(report, "gdim-zero-window", cert.passed, witness=cert.window)
        return report

    if cmd == "cx":
        res = minimal_resolution(M, job.steps)
        report["betti_plus"] = res.betti_numbers()
        cx = complexity(report["betti_plus"], guard=_guard_for(job.steps + 1))
        report["cx_plus"] = cx.value
        if cx.series:
            report["poincare_plus"] = cx.series.as_json()
        _check(report, "cx-plus-route", "pass" if not cx.heuristic else "inconclusive", witness=cx.route)
        cert = gdim_zero_check(M, max(1, job.steps))
        if cert.passed:
            cr = complete_resolution(M, job.steps)
            rep = symmetric_growth_verdict(cr)
            report["cx_minus"] = rep.cx_minus
            if rep.series_minus:
                report["poincare_minus"] = rep.series_minus.as_json()
        else:
            _check(report, "negative-side-available", "inconclusive", witness=cert.failures())
        return report

    if cmd == "construct":
        if mat.fixture is not None and mat.fixture.factors:
            A1, M1, A2 = mat.fixture.factors
        else:
            A1, M1, A2 = A, M, mat.algebra2
        if A2 is None:
            raise UserError("cmd=construct needs a ring2 block or a construction fixture")
        fx = construction_instance(A1, M1, A2)
        _check(report, "first-factor-gdim-zero", True)
        _check(report, "dual-commutes-dimensionwise", True)
        _check(report, "tensor-ring-ci", "pass" if verify_ci(fx.algebra) is None else "fail",
               witness="certified CI" if verify_ci(fx.algebra) else "not certified CI")
        ext = minimal_resolution(fx.module, job.steps).betti_numbers()
        base = minimal_resolution(M1, job.steps).betti_numbers()
        _check(report, "flat-extension-betti-match", ext == base, witness={"extended": ext, "base": base})
        cr = complete_resolution(fx.module, job.steps)
        _betti_fields(report, cr)
        rep = symmetric_growth_verdict(cr)
        _series_fields(report, rep)
        return report

    # all remaining commands need a complete resolution
    cr = complete_resolution(M, job.steps)

    if cmd == "complete":
        _betti_fields(report, cr)
        _structure_checks(report, cr.complex)
        D = cr.complex.dualize()
        _structure_checks(report, D, label="dual")
        _check(report, "splice-minimal", not cr.has_free_summand,
               witness="free summand detected" if cr.has_free_summand else None)
        return report

    if cmd == "betti":
        _betti_fields(report, cr)
        via_dual = negative_betti_via_dual(M, job.steps)
        _check(report, "negative-betti-paths-agree", report["betti_minus"] == via_dual,
               witness={"spliced": report["betti_minus"], "via_dual": via_dual})
        return report

    if cmd == "poincare":
        _betti_fields(report, cr)
        rep = symmetric_growth_verdict(cr)
        _series_fields(report, rep)
        _check(report, "fit-plus", report["poincare_plus"] is not None)
        _check(report, "fit-minus", report["poincare_minus"] is not None)
        return report

    if cmd == "symgrowth":
        _betti_fields(report, cr)
        rep = symmetric_growth_verdict(cr)
        _series_fields(report, rep)
        verdict = "pass" if rep.symmetric is True else ("fail" if rep.symmetric is False else "inconclusive")
        _check(report, "symmetric-growth", verdict)
        if rep.four_way is not None:
            _check(report, "four-way-complexity-equal", rep.four_way["equal"], witness=rep.four_way)
        return report

    # operator-based commands need a certified CI ring
    ops = lift_and_decompose(cr)

    if cmd == "operators":
        _betti_fields(report, cr)
        _check(report, "decomposition-reconstructs-d2", not reconstruction_defects(ops))
        _check(report, "chain-map-identity", not chain_map_defects(ops))
        comm = commutator_homotopies(ops)
        _check(report, "commutators-null-homotopic",
               all(ok for ok, _ in comm.values()) if comm else True,
               witness={f"{i},{j}": ok for (i, j), (ok, _) in comm.items()} or None)
        eta = job.eta or (1,) * ops.count
        inj = eventual_injectivity(ops, eta, tail_len=job.tail, seed=job.seed)
        _check(report, "eventual-injectivity", inj.passed, witness=inj.as_json())
        if inj.passed:
            surj = eventual_surjectivity_of_chainmap(ops, inj.coeffs, tail_len=job.tail)
            _check(report, "eventual-surjectivity", surj.passed, witness=surj.as_json())
            _check(report, "injectivity-implies-surjectivity", surj.linkage_ok)
        gen = finite_generation_check(ops, tail_len=job.tail)
        _check(report, "finite-generation", gen.passed, witness=gen.as_json())
        names = A.names
        report["operators"] = {
            f"t{i + 1}": {str(n): pm.render(names) for n, pm in sorted(ops.t[i].items())}
            for i in range(ops.count)
        }
        return report

    if cmd == "duality-check":
        v = duality_commutation_check(ops)
        _check(report, "duality-commutation", v.passed, witness=v.as_json())
        return report

    if cmd == "reduce":
        eta = job.eta
        if eta is None:
            found = eventual_injectivity(ops, (1,) * ops.count, tail_len=job.tail, seed=job.seed)
            if not found.passed:
                raise UserError("no eta witness found; supply --eta or a different seed")
            eta = found.coeffs
        try:
            step = build_extension(ops, eta, steps=job.steps, tail_len=job.tail)
        except ReductionRefused as exc:
            raise UserError(str(exc)) from exc
        _betti_fields(report, step.cr_K)
        _check(report, "eta-injectivity-precondition", True, witness=list(step.coeffs))
        _check(report, "K-gdim-zero", True)
        _check(report, "betti-identities", step.identities_ok,
               witness={"n0": step.n0,
                        "positive": [[r.n, r.lhs, r.rhs] for r in step.pos_identities],
                        "negative": [[r.n, r.lhs, r.rhs] for r in step.neg_identities]})
        if step.poincare is not None:
            _check(report, "poincare-relation", step.poincare.passed,
                   witness={"pole_plus": [step.poincare.pole_plus_M, step.poincare.pole_plus_K],
                            "pole_minus": [step.poincare.pole_minus_M, step.poincare.pole_minus_K]})
        if job.ladder:
            ladder = full_induction(M, steps=job.steps, tail_len=job.tail, seed=job.seed)
            rungs = []
            for rung in ladder.rungs:
                t = rung.cr_K.betti()
                rungs.append({
                    "coeffs": list(rung.coeffs),
                    "n0": rung.n0,
                    "betti_plus": t.positive(),
                    "betti_minus": [t[-n] for n in range(1, -rung.cr_K.complex.lo + 1)],
                    "identities_ok": rung.identities_ok,
                    "positive_identities": [[r.n, r.lhs, r.rhs] for r in rung.pos_identities],
                    "negative_identities": [[r.n, r.lhs, r.rhs] for r in rung.neg_identities],
                    "poincare_ok": rung.poincare.passed if rung.poincare else None,
                })
            _check(report, "induction-ladder-symmetric", ladder.all_symmetric,
                   witness={"cx_sequence": ladder.cx_sequence, "length": ladder.length,
                            "rungs": rungs})
        return report

    raise UserError(f"unhandled command {cmd!r}")


# -- rendering -----------------------------------------------------------------


def render_text(job: JobSpec, report: dict) -> str:
    lines = [f"command   {job.command}"]
    if job.fixture:
        lines.append(f"fixture   {job.fixture}")
    for key in ("betti_plus", "betti_minus"):
        if report.get(key) is not None:
            lines.append(f"{key:<9} {' '.join(map(str, report[key]))}")
    for key in ("poincare_plus", "poincare_minus"):
        if report.get(key) is not None:
            s = report[key]
            lines.append(f"{key:<9} num={s['num']} den={s['den']}")
    for key in ("cx_plus", "cx_minus", "symmetric"):
        if report.get(key) is not None:
            lines.append(f"{key:<9} {report[key]}")
    if report["checks"]:
        lines.append("checks")
        for c in report["checks"]:
            lines.append(f"  {c['name']:<34} {c['verdict']}")
    return "\n".join(lines) + "\n"


def _guard_for(length: int) -> int:
    return max(1, min(3, (length - 4) // 2))


def _json_dump(data: dict) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def _error_json(kind: str, message: str) -> str:
    return _json_dump({"error": {"kind": kind, "message": message}})


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="symgrowth",
        description="Exact growth analysis of complete resolutions over Artinian graded algebras.",
    )
    parser.add_argument("command", nargs="?", help="overrides cmd= from the job file")
    parser.add_argument("jobfile", nargs="?", help="path to a job description file")
    parser.add_argument("--fixture", help=f"named fixture ({', '.join(fixture_names())})")
    parser.add_argument("--steps", type=int, default=None, help="window half-width (default 8)")
    parser.add_argument("--tail", type=int, default=None, help="tail length for operator checks (default 4)")
    parser.add_argument("--eta", help="comma-separated operator coefficients")
    parser.add_argument("--seed", type=int, default=None, help="seed for coefficient search (default 0)")
    parser.add_argument("--ladder", action="store_true", help="run the full reduction ladder (cmd=reduce)")
    parser.add_argument("--json", dest="json_path", help="write the JSON report here ('-' for stdout)")
    parser.add_argument("--all-fixtures", action="store_true", help="run the command on every fixture")
    args = parser.parse_args(argv)

    try:
        jobs = _assemble_jobs(args)
    except (JobError, UserError, OSError) as exc:
        sys.stdout.write(_error_json("user-error", str(exc)))
        return 1

    reports = {}
    texts = []
    for label, job in jobs:
        try:
            report = run(job)
        except (JobError, UserError, GdimError, OperatorError) as exc:
            kind = "refused" if isinstance(exc, GdimError) else "user-error"
            if len(jobs) > 1:
                # a refusal on one fixture is that fixture's outcome, not a crash
                reports[label] = {"error": {"kind": kind, "message": str(exc)}}
                texts.append(f"command   {job.command}\nfixture   {label}\nrefused   {exc}\n")
                continue
            sys.stdout.write(_error_json(kind, str(exc)))
            return 1
        except Exception as exc:  # internal fault: nonzero, structured
            sys.stdout.write(_error_json("internal-fault", f"{type(exc).__name__}: {exc}"))
            return 2
        reports[label] = report
        texts.append(render_text(job, report))

    payload = reports[jobs[0][0]] if len(jobs) == 1 else {"fixtures": reports}
    out = _json_dump(payload)
    if args.json_path == "-":
        sys.stdout.write(out)
    else:
        sys.stdout.write("".join(texts))
        if args.json_path:
            with open(args.json_path, "w") as fh:
                fh.write(out)
    return 0


def _assemble_jobs(args) -> list[tuple[str, JobSpec]]:
    import os
    from dataclasses import replace

    from .jobs import COMMANDS

    # allow `symgrowth jobfile` when the file itself carries cmd=
    if args.command and args.command not in COMMANDS and args.jobfile is None and os.path.exists(args.command):
        args.jobfile = args.command
        args.command = None

    if args.jobfile:
        with open(args.jobfile) as fh:
            job = parse_job(fh.read())
    else:
        if not (args.fixture or args.all_fixtures):
            raise UserError("need a job file, --fixture, or --all-fixtures")
        if args.command is None:
            raise UserError("need a command when no job file is given")
        job = JobSpec(command=args.command, fixture=args.fixture or "R1")

    def override(job: JobSpec) -> JobSpec:
        if args.command:
            job = replace(job, command=args.command)
        if args.steps is not None:
            job = replace(job, steps=args.steps)
        if args.tail is not None:
            job = replace(job, tail=args.tail)
        if args.seed is not None:
            job = replace(job, seed=args.seed)
        if args.eta:
            job = replace(job, eta=tuple(int(x) for x in args.eta.split(",")))
        if args.ladder:
            job = replace(job, ladder=True)
        return job

    if args.all_fixtures:
        names = fixture_names()
        return [(nm, override(replace(job, fixture=nm))) for nm in names]
    job = override(job)
    return [(job.fixture or "job", job)]


if __name__ == "__main__":
    sys.exit(main())
