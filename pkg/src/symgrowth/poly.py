"""Multivariate polynomials over GF(p) and polynomial matrices.

Polynomials are stored as sparse maps from exponent tuples to nonzero
residues.  The ambient polynomial ring B = k[x_1..x_n] is implicit:
every polynomial carries its variable count and modulus.  Monomial
enumeration is in descending graded lexicographic order, which fixes
the basis choices made everywhere downstream.
"""

from __future__ import annotations

from functools import lru_cache

from .linalg import Mat

Exponents = tuple[int, ...]


@lru_cache(maxsize=None)
def monomials(nvars: int, degree: int) -> tuple[Exponents, ...]:
    """All exponent tuples of the given total degree, descending grlex."""
    if degree < 0:
        return ()
    if nvars == 0:
        return ((),) if degree == 0 else ()
    out = []
    for e in range(degree, -1, -1):
        for rest in monomials(nvars - 1, degree - e):
            out.append((e,) + rest)
    return tuple(out)


def monomial_index(nvars: int, exps: Exponents) -> int:
    return monomials(nvars, sum(exps)).index(exps)


class PolyError(ValueError):
    pass


class Poly:
    """Element of k[x_1..x_n] with coefficients in GF(p)."""

    __slots__ = ("nvars", "p", "terms")

    def __init__(self, nvars: int, p: int, terms: dict[Exponents, int] | None = None):
        self.nvars = nvars
        self.p = p
        clean: dict[Exponents, int] = {}
        if terms:
            for e, c in terms.items():
                c %= p
                if c:
                    if len(e) != nvars:
                        raise PolyError(f"exponent tuple {e} has wrong length")
                    clean[e] = c
        self.terms = clean

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, nvars: int, p: int) -> "Poly":
        return cls(nvars, p)

    @classmethod
    def one(cls, nvars: int, p: int) -> "Poly":
        return cls(nvars, p, {(0,) * nvars: 1})

    @classmethod
    def constant(cls, nvars: int, p: int, c: int) -> "Poly":
        return cls(nvars, p, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars: int, p: int, i: int) -> "Poly":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, p, {tuple(e): 1})

    @classmethod
    def monomial(cls, nvars: int, p: int, exps: Exponents, c: int = 1) -> "Poly":
        return cls(nvars, p, {tuple(exps): c})

    # -- queries ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def homogeneous_part(self, d: int) -> "Poly":
        return Poly(self.nvars, self.p, {e: c for e, c in self.terms.items() if sum(e) == d})

    def constant_coeff(self) -> int:
        return self.terms.get((0,) * self.nvars, 0)

    def coeff(self, exps: Exponents) -> int:
        return self.terms.get(tuple(exps), 0)

    # -- arithmetic -------------------------------------------------------

    def _check(self, other: "Poly"):
        if self.nvars != other.nvars or self.p != other.p:
            raise PolyError("polynomials from different rings")

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            t[e] = t.get(e, 0) + c
        return Poly(self.nvars, self.p, t)

    def __sub__(self, other: "Poly") -> "Poly":
        self._check(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            t[e] = t.get(e, 0) - c
        return Poly(self.nvars, self.p, t)

    def __neg__(self) -> "Poly":
        return Poly(self.nvars, self.p, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other: "Poly") -> "Poly":
        self._check(other)
        t: dict[Exponents, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t.get(e, 0) + c1 * c2
        return Poly(self.nvars, self.p, t)

    def scale(self, c: int) -> "Poly":
        return Poly(self.nvars, self.p, {e: k * c for e, k in self.terms.items()})

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Poly)
            and self.nvars == other.nvars
            and self.p == other.p
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.nvars, self.p, frozenset(self.terms.items())))

    # -- rendering --------------------------------------------------------

    def render(self, names: tuple[str, ...] | None = None) -> str:
        if not self.terms:
            return "0"
        if names is None:
            names = tuple(f"x{i}" for i in range(self.nvars))
        parts = []
        for e in sorted(self.terms, key=lambda e: (-sum(e), tuple(-x for x in e))):
            c = self.terms[e]
            mono = "".join(
                nm if k == 1 else f"{nm}^{k}" for nm, k in zip(names, e) if k
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{c}{mono}")
        return "+".join(parts).replace("+-", "-")

    def __repr__(self) -> str:
        return f"Poly({self.render()})"


# -- parsing ---------------------------------------------------------------


def parse_poly(text: str, names: tuple[str, ...], p: int) -> Poly:
    """Parse `text` into a polynomial in the named variables over GF(p).

    Syntax: integer coefficients, `+`, `-`, `^` powers, juxtaposition or
    `*` for products.  Whitespace-insensitive.  Raises PolyError with a
    character position on bad input.
    """
    nvars = len(names)
    by_length = sorted(range(nvars), key=lambda i: -len(names[i]))
    pos = 0
    n = len(text)

    def skip_ws():
        nonlocal pos
        while pos < n and text[pos].isspace():
            pos += 1

    def fail(msg: str):
        raise PolyError(f"{msg} at position {pos} in {text!r}")

    def parse_int() -> int:
        nonlocal pos
        start = pos
        while pos < n and text[pos].isdigit():
            pos += 1
        if start == pos:
            fail("expected integer")
        return int(text[start:pos])

    def try_var() -> int | None:
        nonlocal pos
        for i in by_length:
            nm = names[i]
            if text.startswith(nm, pos):
                pos += len(nm)
                return i
        return None

    def parse_term(sign: int) -> Poly:
        # product of integer and variable-power factors
        nonlocal pos
        result = Poly.constant(nvars, p, sign)
        saw_factor = False
        while True:
            skip_ws()
            if pos < n and text[pos] == "*":
                pos += 1
                skip_ws()
            if pos >= n or text[pos] in "+-":
                break
            if text[pos].isdigit():
                result = result.scale(parse_int())
                saw_factor = True
                continue
            vi = try_var()
            if vi is None:
                fail("unexpected character")
            e = 1
            skip_ws()
            if pos < n and text[pos] == "^":
                pos += 1
                skip_ws()
                e = parse_int()
            exps = [0] * nvars
            exps[vi] = e
            result = result * Poly.monomial(nvars, p, tuple(exps))
            saw_factor = True
        if not saw_factor:
            fail("empty term")
        return result

    total = Poly.zero(nvars, p)
    skip_ws()
    if pos == n:
        fail("empty polynomial")
    first = True
    while pos < n:
        skip_ws()
        if pos == n:
            break
        sign = 1
        if text[pos] == "+":
            pos += 1
        elif text[pos] == "-":
            sign = -1
            pos += 1
        elif not first:
            fail("expected + or -")
        first = False
        total = total + parse_term(sign)
        skip_ws()
    return total


# -- polynomial matrices ----------------------------------------------------


class PolyMatrix:
    """Rectangular matrix with Poly entries (a map between free modules).

    Carries the ambient ring data (nvars, p) so degenerate shapes keep
    working; shape is explicit rather than inferred.
    """

    __slots__ = ("nvars", "p", "nrows", "ncols", "entries")

    def __init__(self, nvars: int, p: int, entries, nrows: int | None = None, ncols: int | None = None):
        rows = [tuple(r) for r in entries]
        self.nvars = nvars
        self.p = p
        self.nrows = len(rows) if nrows is None else nrows
        self.ncols = (len(rows[0]) if rows else 0) if ncols is None else ncols
        if len(rows) != self.nrows or any(len(r) != self.ncols for r in rows):
            raise PolyError("polynomial matrix shape mismatch")
        self.entries = tuple(rows)

    @classmethod
    def zero(cls, nvars: int, p: int, nrows: int, ncols: int) -> "PolyMatrix":
        z = Poly.zero(nvars, p)
        return cls(nvars, p, [[z] * ncols for _ in range(nrows)], nrows, ncols)

    def entry(self, i: int, j: int) -> Poly:
        return self.entries[i][j]

    def transpose(self) -> "PolyMatrix":
        ent = [[self.entries[i][j] for i in range(self.nrows)] for j in range(self.ncols)]
        return PolyMatrix(self.nvars, self.p, ent, self.ncols, self.nrows)

    def __mul__(self, other: "PolyMatrix") -> "PolyMatrix":
        """Product in the ambient polynomial ring (no quotient reduction)."""
        if self.ncols != other.nrows:
            raise PolyError(f"shape mismatch {self.nrows}x{self.ncols} * {other.nrows}x{other.ncols}")
        z = Poly.zero(self.nvars, self.p)
        out = []
        for i in range(self.nrows):
            row = []
            for j in range(other.ncols):
                acc = z
                for k in range(self.ncols):
                    a = self.entries[i][k]
                    b = other.entries[k][j]
                    if a.terms and b.terms:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return PolyMatrix(self.nvars, self.p, out, self.nrows, other.ncols)

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        ent = [[self.entries[i][j] + other.entries[i][j] for j in range(self.ncols)] for i in range(self.nrows)]
        return PolyMatrix(self.nvars, self.p, ent, self.nrows, self.ncols)

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        ent = [[self.entries[i][j] - other.entries[i][j] for j in range(self.ncols)] for i in range(self.nrows)]
        return PolyMatrix(self.nvars, self.p, ent, self.nrows, self.ncols)

    def scale_poly(self, q: Poly) -> "PolyMatrix":
        return self.map_entries(lambda v: q * v)

    def map_entries(self, f) -> "PolyMatrix":
        ent = [[f(v) for v in row] for row in self.entries]
        return PolyMatrix(self.nvars, self.p, ent, self.nrows, self.ncols)

    def is_zero(self) -> bool:
        return all(v.is_zero() for row in self.entries for v in row)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PolyMatrix)
            and self.nrows == other.nrows
            and self.ncols == other.ncols
            and self.entries == other.entries
        )

    __hash__ = None

    def constant_matrix(self) -> Mat:
        """Entrywise constant terms, as a numeric matrix over GF(p)."""
        if self.nrows == 0 or self.ncols == 0:
            return Mat.zeros(self.p, self.nrows, self.ncols)
        return Mat(self.p, [[v.constant_coeff() for v in row] for row in self.entries])

    def has_constant_terms(self) -> bool:
        return any(v.constant_coeff() for row in self.entries for v in row)

    def render(self, names=None) -> list[list[str]]:
        return [[v.render(names) for v in row] for row in self.entries]

    def __repr__(self) -> str:
        return f"PolyMatrix({self.nrows}x{self.ncols})"
