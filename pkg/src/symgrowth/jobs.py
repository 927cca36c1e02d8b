"""Job descriptions: the batch input format of the command line tool.

A job is a whitespace-separated sequence of blocks and key=value pairs:

    ring{p=32003; vars=x,y; rels=x^2,y^2}
    module{rows=[0]; cols=[1,1]; mat=[[x,y]]}
    cmd=symgrowth steps=10 seed=0

Blocks: `ring` (required unless `fixture=` is given), optional `ring2`
(for cmd=construct, the second tensor factor), optional `module`
(presentation of the module over `ring`: row twists, column twists and
the matrix of homogeneous polynomial entries; empty cols means a free
module on the row twists).  Top-level keys: cmd, steps, tail, eta,
seed, ladder, fixture.

Parsing is eager: the ring and module are built immediately so that
non-prime moduli, inhomogeneous relations and degree mismatches are
reported with the position of the offending block.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .algebra import AlgebraError, GradedAlgebra, build_algebra
from .fixtures import Fixture, FixtureError, get_fixture
from .modules import GradedModule, ModuleError, from_presentation
from .poly import Poly, PolyError, PolyMatrix, parse_poly

COMMANDS = (
    "resolve",
    "complete",
    "betti",
    "poincare",
    "cx",
    "symgrowth",
    "gdim",
    "operators",
    "duality-check",
    "reduce",
    "construct",
)

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


class JobError(ValueError):
    def __init__(self, message: str, text: str = "", pos: int | None = None):
        if pos is not None:
            line = text.count("\n", 0, pos) + 1
            col = pos - (text.rfind("\n", 0, pos) + 1) + 1
            message = f"line {line}, column {col}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class RingBlock:
    p: int
    vars: tuple[str, ...]
    rels: tuple[str, ...]


@dataclass(frozen=True)
class ModuleBlock:
    rows: tuple[int, ...]
    cols: tuple[int, ...]
    mat: tuple[tuple[str, ...], ...]


@dataclass(frozen=True)
class JobSpec:
    command: str
    ring: RingBlock | None = None
    ring2: RingBlock | None = None
    module: ModuleBlock | None = None
    fixture: str | None = None
    steps: int = 8
    tail: int = 4
    eta: tuple[int, ...] | None = None
    seed: int = 0
    ladder: bool = False


@dataclass
class MaterializedJob:
    job: JobSpec
    algebra: GradedAlgebra
    module: GradedModule
    algebra2: GradedAlgebra | None = None
    fixture: Fixture | None = None


def _split_top(value: str, sep: str) -> list[str]:
    parts = []
    depth = 0
    cur = []
    for ch in value:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    tail = "".join(cur).strip()
    if tail or parts:
        parts.append(tail)
    return parts


def _parse_int_list(value: str, text: str, pos: int) -> tuple[int, ...]:
    v = value.strip()
    if not (v.startswith("[") and v.endswith("]")):
        raise JobError(f"expected a bracketed integer list, got {value!r}", text, pos)
    inner = v[1:-1].strip()
    if not inner:
        return ()
    try:
        return tuple(int(x.strip()) for x in inner.split(","))
    except ValueError:
        raise JobError(f"bad integer list {value!r}", text, pos) from None


def _parse_matrix(value: str, text: str, pos: int) -> tuple[tuple[str, ...], ...]:
    v = value.strip()
    if not (v.startswith("[") and v.endswith("]")):
        raise JobError(f"expected a bracketed matrix, got {value!r}", text, pos)
    inner = v[1:-1].strip()
    if not inner:
        return ()
    rows = []
    for rowtxt in _split_top(inner, ","):
        if not (rowtxt.startswith("[") and rowtxt.endswith("]")):
            raise JobError(f"expected a bracketed matrix row, got {rowtxt!r}", text, pos)
        cells = rowtxt[1:-1].strip()
        rows.append(tuple(x.strip() for x in cells.split(",")) if cells else ())
    return tuple(rows)


def _block_items(body: str, text: str, pos: int) -> dict[str, str]:
    items = {}
    for piece in _split_top(body, ";"):
        if not piece:
            continue
        if "=" not in piece:
            raise JobError(f"expected key=value inside block, got {piece!r}", text, pos)
        key, value = piece.split("=", 1)
        items[key.strip()] = value.strip()
    return items


def _parse_ring_block(body: str, text: str, pos: int) -> RingBlock:
    items = _block_items(body, text, pos)
    unknown = set(items) - {"p", "vars", "rels"}
    if unknown:
        raise JobError(f"unknown ring keys {sorted(unknown)}", text, pos)
    if "p" not in items:
        raise JobError("ring block needs p=<prime>", text, pos)
    try:
        p = int(items["p"])
    except ValueError:
        raise JobError(f"bad modulus {items['p']!r}", text, pos) from None
    vars_txt = items.get("vars", "").strip()
    names = tuple(v.strip() for v in vars_txt.split(",") if v.strip()) if vars_txt else ()
    for nm in names:
        if not _IDENT.fullmatch(nm):
            raise JobError(f"bad variable name {nm!r}", text, pos)
    rels_txt = items.get("rels", "").strip()
    rels = tuple(r.strip() for r in rels_txt.split(",") if r.strip()) if rels_txt else ()
    return RingBlock(p, names, rels)


def _parse_module_block(body: str, text: str, pos: int) -> ModuleBlock:
    items = _block_items(body, text, pos)
    unknown = set(items) - {"rows", "cols", "mat"}
    if unknown:
        raise JobError(f"unknown module keys {sorted(unknown)}", text, pos)
    if "rows" not in items:
        raise JobError("module block needs rows=[...]", text, pos)
    rows = _parse_int_list(items["rows"], text, pos)
    cols = _parse_int_list(items.get("cols", "[]"), text, pos)
    mat = _parse_matrix(items.get("mat", "[]"), text, pos)
    if cols and not mat:
        raise JobError("module block with nonempty cols needs mat=[[...]]", text, pos)
    if mat and (len(mat) != len(rows) or any(len(r) != len(cols) for r in mat)):
        raise JobError(
            f"mat must be {len(rows)}x{len(cols)} to match rows x cols", text, pos
        )
    return ModuleBlock(rows, cols, mat)


def parse_job(text: str) -> JobSpec:
    """Parse and eagerly validate a job description."""
    pos = 0
    n = len(text)
    blocks: dict[str, tuple[str, int]] = {}
    scalars: dict[str, tuple[str, int]] = {}
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _IDENT.match(text, pos)
        if not m:
            raise JobError(f"unexpected character {text[pos]!r}", text, pos)
        name = m.group(0)
        start = pos
        pos = m.end()
        while pos < n and text[pos].isspace():
            pos += 1
        if pos < n and text[pos] == "{":
            end = text.find("}", pos)
            if end < 0:
                raise JobError(f"unclosed block {name!r}", text, start)
            if name not in ("ring", "ring2", "module"):
                raise JobError(f"unknown block {name!r}", text, start)
            if name in blocks:
                raise JobError(f"duplicate block {name!r}", text, start)
            blocks[name] = (text[pos + 1:end], start)
            pos = end + 1
        elif pos < n and text[pos] == "=":
            pos += 1
            vstart = pos
            while pos < n and not text[pos].isspace():
                pos += 1
            scalars[name] = (text[vstart:pos], start)
        else:
            raise JobError(f"expected '{{' or '=' after {name!r}", text, start)

    ring = ring2 = None
    module = None
    if "ring" in blocks:
        ring = _parse_ring_block(*_with_ctx(blocks["ring"], text))
    if "ring2" in blocks:
        ring2 = _parse_ring_block(*_with_ctx(blocks["ring2"], text))
    if "module" in blocks:
        module = _parse_module_block(*_with_ctx(blocks["module"], text))

    def scalar(name, default=None):
        return scalars.get(name, (default, None))[0]

    command = scalar("cmd")
    if command is None:
        raise JobError("missing cmd=<command>", text, None)
    if command not in COMMANDS:
        raise JobError(
            f"unknown command {command!r}; expected one of {', '.join(COMMANDS)}",
            text,
            scalars["cmd"][1],
        )

    def int_scalar(name, default):
        raw = scalar(name)
        if raw is None:
            return default
        try:
            return int(raw)
        except ValueError:
            raise JobError(f"bad integer for {name}: {raw!r}", text, scalars[name][1]) from None

    eta_raw = scalar("eta")
    eta = None
    if eta_raw is not None:
        try:
            eta = tuple(int(x) for x in eta_raw.split(","))
        except ValueError:
            raise JobError(f"bad eta {eta_raw!r}", text, scalars["eta"][1]) from None
    ladder_raw = scalar("ladder", "false")
    if ladder_raw not in ("true", "false"):
        raise JobError(f"ladder must be true or false, got {ladder_raw!r}", text, None)
    job = JobSpec(
        command=command,
        ring=ring,
        ring2=ring2,
        module=module,
        fixture=scalar("fixture"),
        steps=int_scalar("steps", 8),
        tail=int_scalar("tail", 4),
        eta=eta,
        seed=int_scalar("seed", 0),
        ladder=ladder_raw == "true",
    )
    _validate(job, text, blocks)
    return job


def _with_ctx(entry, text):
    body, pos = entry
    return body, text, pos


def _validate(job: JobSpec, text: str, blocks) -> None:
    if job.steps < 0 or job.tail < 1:
        raise JobError("steps must be >= 0 and tail >= 1", text, None)
    if job.fixture is None:
        if job.ring is None:
            raise JobError("job needs a ring block or fixture=<name>", text, None)
        if job.module is None:
            raise JobError("job needs a module block or fixture=<name>", text, None)
    if job.command == "construct" and job.fixture is None and job.ring2 is None:
        raise JobError("cmd=construct needs a ring2 block (the second tensor factor)", text, None)
    try:
        materialize(job)
    except (AlgebraError, ModuleError, PolyError, FixtureError) as exc:
        pos = blocks.get("ring", (None, None))[1] if blocks else None
        raise JobError(str(exc), text, pos) from exc


def _build_ring(block: RingBlock) -> GradedAlgebra:
    rels = [parse_poly(r, block.vars, block.p) for r in block.rels]
    return build_algebra(block.p, block.vars, rels)


def materialize(job: JobSpec) -> MaterializedJob:
    """Build the algebra and module a job refers to."""
    if job.fixture is not None:
        f = get_fixture(job.fixture)
        return MaterializedJob(job, f.algebra, f.module, fixture=f)
    A = _build_ring(job.ring)
    mb = job.module
    if mb.cols:
        entries = [
            [
                parse_poly(cell, A.names, A.p) if cell.strip() not in ("0", "") else Poly.zero(A.nvars, A.p)
                for cell in row
            ]
            for row in mb.mat
        ]
        pm = PolyMatrix(A.nvars, A.p, entries, len(mb.rows), len(mb.cols))
    else:
        pm = PolyMatrix.zero(A.nvars, A.p, len(mb.rows), 0)
    M = from_presentation(A, mb.rows, mb.cols, pm)
    A2 = _build_ring(job.ring2) if job.ring2 is not None else None
    return MaterializedJob(job, A, M, algebra2=A2)


def canonical_text(job: JobSpec) -> str:
    """Canonical rendering; parse(canonical_text(parse(t))) == parse(t)."""
    parts = []
    for label, block in (("ring", job.ring), ("ring2", job.ring2)):
        if block is not None:
            parts.append(
                f"{label}{{p={block.p}; vars={','.join(block.vars)}; rels={','.join(block.rels)}}}"
            )
    if job.module is not None:
        rows = f"[{','.join(map(str, job.module.rows))}]"
        cols = f"[{','.join(map(str, job.module.cols))}]"
        piece = f"module{{rows={rows}; cols={cols}"
        if job.module.mat:
            mat = ",".join("[" + ",".join(r) + "]" for r in job.module.mat)
            piece += f"; mat=[{mat}]"
        parts.append(piece + "}")
    if job.fixture:
        parts.append(f"fixture={job.fixture}")
    parts.append(f"cmd={job.command}")
    parts.append(f"steps={job.steps}")
    parts.append(f"tail={job.tail}")
    if job.eta is not None:
        parts.append(f"eta={','.join(map(str, job.eta))}")
    parts.append(f"seed={job.seed}")
    if job.ladder:
        parts.append("ladder=true")
    return "\n".join(parts) + "\n"
