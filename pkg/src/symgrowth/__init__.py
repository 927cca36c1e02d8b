"""Exact computation of growth in totally acyclic complexes.

The package builds minimal free and complete resolutions of graded
modules over Artinian standard-graded quotient algebras over GF(p),
measures left/right Betti growth (complexities and Poincare series),
constructs cohomology operators over complete intersections, and runs
the symmetric-growth reduction mechanism.  Everything is exact integer
arithmetic; no floating point is used anywhere.
"""

from .algebra import CIStructure, GradedAlgebra, build_algebra, tensor_algebra, verify_ci
from .complexes import (
    BettiTable,
    CompleteResolution,
    FreeComplex,
    GdimError,
    Resolution,
    betti,
    complete_resolution,
    dualize_complex,
    ext_against_ring,
    gdim_zero_check,
    minimal_resolution,
    negative_betti_via_dual,
    tate_ext_dims,
)
from .fixtures import Fixture, construction_instance, get_fixture, standard_fixtures
from .growth import (
    EXPONENTIAL,
    GrowthReport,
    RationalSeries,
    complexity,
    fit_rational,
    pole_order_at_one,
    symmetric_growth_verdict,
)
from .jobs import JobSpec, materialize, parse_job
from .linalg import Mat
from .modules import (
    FreeModule,
    GradedModule,
    ModuleMap,
    biduality_map,
    direct_sum,
    dual,
    from_presentation,
    minimal_generators,
    pushout,
    residue_field,
    syzygy,
    tensor_extend,
    twist,
)
from .operators import (
    OperatorSet,
    duality_commutation_check,
    eventual_injectivity,
    eventual_surjectivity_of_chainmap,
    finite_generation_check,
    induced_ext_action,
    lift_and_decompose,
)
from .poly import Poly, PolyMatrix, parse_poly
from .reductions import ReductionStep, build_extension, full_induction, verify_poincare_relation

__version__ = "0.1.0"

__all__ = [
    "BettiTable",
    "CIStructure",
    "CompleteResolution",
    "EXPONENTIAL",
    "Fixture",
    "FreeComplex",
    "FreeModule",
    "GdimError",
    "GradedAlgebra",
    "GradedModule",
    "GrowthReport",
    "JobSpec",
    "Mat",
    "ModuleMap",
    "OperatorSet",
    "Poly",
    "PolyMatrix",
    "RationalSeries",
    "ReductionStep",
    "Resolution",
    "betti",
    "biduality_map",
    "build_algebra",
    "build_extension",
    "complete_resolution",
    "complexity",
    "construction_instance",
    "direct_sum",
    "dual",
    "duality_commutation_check",
    "dualize_complex",
    "eventual_injectivity",
    "eventual_surjectivity_of_chainmap",
    "ext_against_ring",
    "finite_generation_check",
    "fit_rational",
    "from_presentation",
    "full_induction",
    "gdim_zero_check",
    "get_fixture",
    "induced_ext_action",
    "lift_and_decompose",
    "materialize",
    "minimal_generators",
    "minimal_resolution",
    "negative_betti_via_dual",
    "parse_job",
    "parse_poly",
    "pole_order_at_one",
    "pushout",
    "residue_field",
    "standard_fixtures",
    "symmetric_growth_verdict",
    "syzygy",
    "tate_ext_dims",
    "tensor_algebra",
    "tensor_extend",
    "twist",
    "verify_ci",
    "verify_poincare_relation",
]
