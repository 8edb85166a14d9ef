"""Exact volumes of rational polytopes by signed simplicial cone decompositions."""

from .errors import (
    DegenerateInputError,
    DimensionError,
    EnumerationBudgetError,
    InadmissibleBetaError,
    InvalidPolytopeError,
    NonSimpleError,
    PeriodError,
    PolyvolError,
    PositiveVectorError,
    RankDeficientError,
    SingularMatrixError,
)
from .linalg import Matrix, det, gram_det_sq, lattice_basis_nullspace, rank, snf
from .polytope import (
    ConedSystem,
    PolytopeH,
    PolytopeStd,
    PolytopeV,
    cone_over,
    enumerate_basic_vertices,
    lattice_count,
    positive_vector_exists,
    std_from_h,
    vertices_of_h,
)
from .simpcone import Decomposition, SignedCone, simpcone
from .volume import (
    VolumeResult,
    ct_q,
    volume_brion,
    volume_fulldim,
    volume_general_relative,
    volume_lawrence,
    volume_simpcone,
    volume_triangulation,
)

__version__ = "0.1.0"

__all__ = [
    "Matrix",
    "det",
    "gram_det_sq",
    "lattice_basis_nullspace",
    "rank",
    "snf",
    "Decomposition",
    "SignedCone",
    "simpcone",
    "DegenerateInputError",
    "DimensionError",
    "EnumerationBudgetError",
    "InadmissibleBetaError",
    "InvalidPolytopeError",
    "NonSimpleError",
    "PeriodError",
    "PolyvolError",
    "PositiveVectorError",
    "RankDeficientError",
    "SingularMatrixError",
    "ConedSystem",
    "PolytopeH",
    "PolytopeStd",
    "PolytopeV",
    "cone_over",
    "enumerate_basic_vertices",
    "lattice_count",
    "positive_vector_exists",
    "std_from_h",
    "vertices_of_h",
    "VolumeResult",
    "ct_q",
    "volume_brion",
    "volume_fulldim",
    "volume_general_relative",
    "volume_lawrence",
    "volume_simpcone",
    "volume_triangulation",
]
