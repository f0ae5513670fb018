"""Harder-Narasimhan filtrations over finite admissible subset lattices.

The library computes filtrations with semistable subquotients and
non-increasing (or pairwise upward-incomparable) minimal slopes for slope
functions valued in an arbitrary poset with infima, validates the slope
inequality axioms, and certifies every result against brute-force
enumeration oracles.
"""

from .engine import (
    HNCheck,
    HNReport,
    check_hn,
    classical_hn,
    destabilizer,
    hn_filtration,
    hn_polygon,
    is_semistable,
)
from .family import AdmissibleFamily, build_family
from .instances import (
    build_cyclic,
    build_degree_rank,
    build_eigen,
    build_eigen_from_matrix,
    build_norm_k_demo,
)
from .oracle import (
    EnumerationBudget,
    all_hn_filtrations,
    certify_destabilizer,
    certify_theorems,
    count_filtrations_dp,
    enumerate_filtrations,
)
from .poset import (
    PLUS_INFINITY,
    ExplicitFinitePoset,
    ExtendedRealPoset,
    PosetValue,
    ReverseInclusionPoset,
    ValuePoset,
)
from .serialize import Instance, load_instance, parse_instance, save_instance, serialize_instance
from .slope import (
    DegreeRankLabels,
    SlopeFunction,
    ValidationReport,
    degree_rank_slope,
    eigen_slope,
    prime_support_slope,
    strengthen,
    table_slope,
    validate_classical_axioms,
    validate_slope_inequality,
    validate_strong_slope_inequality,
)

__all__ = [
    "AdmissibleFamily",
    "DegreeRankLabels",
    "EnumerationBudget",
    "ExplicitFinitePoset",
    "ExtendedRealPoset",
    "HNCheck",
    "HNReport",
    "Instance",
    "PLUS_INFINITY",
    "PosetValue",
    "ReverseInclusionPoset",
    "SlopeFunction",
    "ValidationReport",
    "ValuePoset",
    "all_hn_filtrations",
    "build_cyclic",
    "build_degree_rank",
    "build_eigen",
    "build_eigen_from_matrix",
    "build_family",
    "build_norm_k_demo",
    "certify_destabilizer",
    "certify_theorems",
    "check_hn",
    "classical_hn",
    "count_filtrations_dp",
    "degree_rank_slope",
    "destabilizer",
    "eigen_slope",
    "enumerate_filtrations",
    "hn_filtration",
    "hn_polygon",
    "is_semistable",
    "load_instance",
    "parse_instance",
    "prime_support_slope",
    "save_instance",
    "serialize_instance",
    "strengthen",
    "table_slope",
    "validate_classical_axioms",
    "validate_slope_inequality",
    "validate_strong_slope_inequality",
]

__version__ = "0.1.0"
