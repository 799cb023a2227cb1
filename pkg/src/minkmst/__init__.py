"""Minimal spanning trees in normed spaces, low-degree MSTs and Hadwiger packings."""

from .errors import (
    DegenerateAngleError,
    DimensionMismatchError,
    DuplicatePointsError,
    InvalidInstanceError,
    InvalidNormError,
    MinkError,
    NormParseError,
    PerturbationError,
    UnsupportedOperationError,
    ZeroVectorError,
)
from .geometry import angle_size, min_pairwise_distance
from .lowdeg import (
    LowDegreeResult,
    PerturbationParams,
    PerturbationTrace,
    is_generic,
    low_degree_mst,
    sample_perturbation,
    star_hard_instance,
)
from .mst import (
    DegreeReport,
    Tree,
    WeightedEdge,
    build_edges,
    check_incident_angles,
    degree_report,
    enumerate_msts,
    iter_msts,
    kruskal_mst,
    tree_weight,
)
from .norm import INF, TAU, NormSpec, parse_norm
from .oracle import brute_force_mst_weight, brute_force_msts
from .packing import (
    KnownValue,
    PackingCertificate,
    hadwiger_number,
    known_packing,
    known_values_table,
    lookup,
    strict_hadwiger_number,
    verify_certificate,
)
from .points import PointSet
from .search import SearchResult, search_lower_bound

__version__ = "0.1.0"
