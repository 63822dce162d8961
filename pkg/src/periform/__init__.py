"""Periodic sphere packings over exact rationals.

Parameter space of m-translate periodic point sets, packing invariants
(generalized arithmetical minimum, density), and local-optimality
certificates (perfection, eutaxy, strong eutaxy, improving directions,
floating detection), all carried by exact rational arithmetic.
"""

from .catalog import (
    CATALOG_NAMES,
    CatalogEntry,
    fluid_diamond,
    get,
    sublattice_representation,
)
from .certify import (
    BOUNDARY,
    Certificate,
    EXTREME_TRANSLATIONAL,
    EutaxyStatus,
    INCONCLUSIVE,
    INTERIOR,
    ISOLATED_EXTREME,
    NOT_EXTREME,
    OUTSIDE,
    VoronoiDomain,
    certify,
    eutaxy_status,
    floating_components,
    improving_direction,
    is_m_perfect,
    periodic_extreme_by_theorem,
    strong_eutaxy,
    translational_criterion,
    uncertainty_space,
    voronoi_domain,
)
from .formats import PFormError, dumps, from_document, loads, to_document
from .improve import ImproveResult, ImproveStep, improve
from .lattices import (
    CloseVecResult,
    ShortVecResult,
    Unimodular,
    closest_vectors,
    lll_reduce,
    shortest_vectors,
)
from .linalg import (
    LDLResult,
    PQF,
    SymForm,
    TangentVector,
    ambient_dim,
    det_and_inverse,
    inner,
    ldl,
    rank_span,
)
from .periodic import (
    DensityReport,
    GenMinResult,
    MinRep,
    OverlapError,
    PeriodicForm,
    density,
    eval_p,
    generalized_min,
    gradient_p,
    hessian_quadratic,
    rescale_to_min_one,
    unit_ball_volume,
)

__version__ = "0.1.0"

__all__ = [
    "CATALOG_NAMES",
    "BOUNDARY",
    "Certificate",
    "CatalogEntry",
    "CloseVecResult",
    "DensityReport",
    "EXTREME_TRANSLATIONAL",
    "EutaxyStatus",
    "GenMinResult",
    "INCONCLUSIVE",
    "INTERIOR",
    "ISOLATED_EXTREME",
    "ImproveResult",
    "ImproveStep",
    "LDLResult",
    "MinRep",
    "NOT_EXTREME",
    "OUTSIDE",
    "OverlapError",
    "PFormError",
    "PQF",
    "PeriodicForm",
    "ShortVecResult",
    "SymForm",
    "TangentVector",
    "Unimodular",
    "VoronoiDomain",
    "ambient_dim",
    "certify",
    "closest_vectors",
    "density",
    "det_and_inverse",
    "dumps",
    "eutaxy_status",
    "eval_p",
    "floating_components",
    "fluid_diamond",
    "from_document",
    "generalized_min",
    "get",
    "gradient_p",
    "hessian_quadratic",
    "improve",
    "improving_direction",
    "inner",
    "is_m_perfect",
    "ldl",
    "lll_reduce",
    "loads",
    "periodic_extreme_by_theorem",
    "rank_span",
    "rescale_to_min_one",
    "shortest_vectors",
    "strong_eutaxy",
    "sublattice_representation",
    "to_document",
    "translational_criterion",
    "uncertainty_space",
    "unit_ball_volume",
    "voronoi_domain",
]
