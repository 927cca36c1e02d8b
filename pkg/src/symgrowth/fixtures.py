"""Curated example rings and modules, wired as reusable fixtures.

Every expected value carries the oracle that produced it, and nothing
here is trusted: the test suite recomputes each expectation through the
engine and compares.  R4 is the tensor construction producing a module
of CI-dimension zero over a ring that is not a complete intersection.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import DEFAULT_P, GradedAlgebra, build_algebra, tensor_algebra, verify_ci
from .complexes import gdim_zero_check
from .modules import GradedModule, dual, residue_field, tensor_extend
from .poly import parse_poly


class FixtureError(ValueError):
    pass


@dataclass
class Fixture:
    name: str
    description: str
    algebra: GradedAlgebra
    module: GradedModule
    module_label: str
    expected: dict = field(default_factory=dict)
    oracles: dict = field(default_factory=dict)
    factors: tuple | None = None  # (A1, M1, A2) for construction instances


def _ring(p, names, rels):
    return build_algebra(p, tuple(names), [parse_poly(s, tuple(names), p) for s in rels])


def construction_instance(
    A1: GradedAlgebra, M1: GradedModule, A2: GradedAlgebra, name: str = "construction", window: int = 4
) -> Fixture:
    """The tensor construction A = A1 (x) A2, M = M1 (x) A2.

    M1 must certify G-dimension zero over the complete intersection A1
    (window-checked); duals are then compatible dimensionwise with
    extension, which is asserted here.
    """
    if verify_ci(A1) is None:
        raise FixtureError("construction needs a certified complete intersection first factor")
    cert = gdim_zero_check(M1, window)
    if not cert.passed:
        raise FixtureError(
            "construction needs a first-factor module of G-dimension zero: "
            + "; ".join(cert.failures())
        )
    T = tensor_algebra(A1, A2)
    M = tensor_extend(M1, A2, T)
    lhs = tensor_extend(dual(M1), A2, T)
    rhs = dual(M)
    if lhs.dims != rhs.dims:
        raise FixtureError("dualizing does not commute with the tensor extension dimensionwise")
    return Fixture(
        name=name,
        description=f"({A1!r}) tensor ({A2!r}) with extended module",
        algebra=T,
        module=M,
        module_label="M1 (x) A2",
        expected={"gdim_zero": True, "symmetric": True},
        oracles={
            "gdim_zero": "CI-dimension zero is preserved by the construction",
            "symmetric": "flat extension preserves minimal resolutions",
        },
        factors=(A1, M1, A2),
    )


def standard_fixtures(p: int = DEFAULT_P) -> list[Fixture]:
    out = []

    r1 = _ring(p, ("x",), ["x^2"])
    out.append(
        Fixture(
            name="R1",
            description="k[x]/(x^2) with the residue field",
            algebra=r1,
            module=residue_field(r1),
            module_label="k",
            expected={
                "gdim_zero": True,
                "ci": True,
                "cx_plus": 1,
                "cx_minus": 1,
                "symmetric": True,
                "betti_all_one": True,
            },
            oracles={
                "betti_all_one": "multiplication-by-x periodic complex",
                "cx_plus": "constant Betti table has pole order 1",
            },
        )
    )

    r2 = _ring(p, ("x", "y"), ["x^2", "y^2"])
    out.append(
        Fixture(
            name="R2",
            description="k[x,y]/(x^2,y^2) with the residue field",
            algebra=r2,
            module=residue_field(r2),
            module_label="k",
            expected={
                "gdim_zero": True,
                "ci": True,
                "cx_plus": 2,
                "cx_minus": 2,
                "symmetric": True,
                "betti_plus": "n+1",
                "betti_minus": "n",
            },
            oracles={
                "betti_plus": "tensor of two periodic resolutions",
                "betti_minus": "beta_-(n+1)(M) = beta_n(M^*), M^* = k(-2)",
            },
        )
    )

    from .modules import syzygy

    om, _ = syzygy(residue_field(r2))
    out.append(
        Fixture(
            name="R2s",
            description="k[x,y]/(x^2,y^2) with the first syzygy of k",
            algebra=r2,
            module=om,
            module_label="syzygy(k)",
            expected={"gdim_zero": True, "ci": True, "cx_plus": 2, "cx_minus": 2, "symmetric": True},
            oracles={"cx_plus": "syzygies share the complexity of k"},
        )
    )

    r3 = _ring(p, ("x", "y"), ["x^2", "x y", "y^2"])
    out.append(
        Fixture(
            name="R3",
            description="k[x,y]/(x^2,xy,y^2): m^2 = 0, negative control",
            algebra=r3,
            module=residue_field(r3),
            module_label="k",
            expected={
                "gdim_zero": False,
                "ci": False,
                "betti_doubling": True,
                "growth": "exponential",
            },
            oracles={
                "betti_doubling": "m^2 = 0 forces beta_{n+1} = 2 beta_n",
                "gdim_zero": "socle dimension 2 obstructs reflexivity and Ext-vanishing",
            },
        )
    )

    a1 = _ring(p, ("x",), ["x^2"])
    a2 = _ring(p, ("y", "z"), ["y^2", "y z", "z^2"])
    r4 = construction_instance(a1, residue_field(a1), a2, name="R4")
    r4.description = "k[x]/(x^2) (x) k[y,z]/(y^2,yz,z^2): CI-dim-zero module over a non-CI ring"
    r4.expected.update({"ci": False, "cx_plus": 1, "cx_minus": 1, "betti_all_one": True})
    r4.oracles.update(
        {
            "ci": "4 relations on 3 variables cannot be certified",
            "betti_all_one": "annihilator periodicity: ann(x) = (x)",
        }
    )
    out.append(r4)

    x3 = _ring(p, ("x",), ["x^3"])
    out.append(
        Fixture(
            name="X3",
            description="k[x]/(x^3) with the residue field",
            algebra=x3,
            module=residue_field(x3),
            module_label="k",
            expected={"gdim_zero": True, "ci": True, "cx_plus": 1, "cx_minus": 1, "symmetric": True},
            oracles={"cx_plus": "resolution alternates x and x^2, Betti constant 1"},
        )
    )
    return out


def fixture_names(p: int = DEFAULT_P) -> list[str]:
    return [f.name for f in standard_fixtures(p)]


def get_fixture(name: str, p: int = DEFAULT_P) -> Fixture:
    for f in standard_fixtures(p):
        if f.name == name:
            return f
    raise FixtureError(f"unknown fixture {name!r}; available: {', '.join(fixture_names(p))}")
