"""Capacity classification and linear codes for storage over labeled graphs."""

__version__ = "0.1.0"

from .classify import CapacityVerdict, classify_capacity
from .construct import (
    AutoResult,
    ConstructionError,
    ConstructionFailure,
    LinearCode,
    NoApplicableConstruction,
    auto_construct,
    construct_rate2,
    construct_rate3_2,
    construct_replication,
    construct_thm2,
    construct_thm4,
    construct_thm7,
)
from .graphs import Edge, GraphError, StorageGraph, parse_graph, serialize_graph
from .rules import (
    InapplicableError,
    check_c2,
    check_c3_2,
    check_thm2,
    check_thm3,
    check_thm4,
    check_thm5,
    check_thm6,
    check_thm7,
)
from .structure import (
    NodeClass,
    PathOverflowError,
    ResidingPath,
    classify_node,
    internal_edges,
    k_components,
    residing_paths,
    strip_one_color,
)
from .verify import (
    CodeMismatchError,
    OracleInfeasibleError,
    VerificationReport,
    interference_dimension,
    oracle_exhaustive_decode,
    verify_code,
    verify_edge,
)

__all__ = [
    "AutoResult",
    "CapacityVerdict",
    "CodeMismatchError",
    "ConstructionError",
    "ConstructionFailure",
    "Edge",
    "GraphError",
    "InapplicableError",
    "LinearCode",
    "NoApplicableConstruction",
    "NodeClass",
    "OracleInfeasibleError",
    "PathOverflowError",
    "ResidingPath",
    "StorageGraph",
    "VerificationReport",
    "auto_construct",
    "check_c2",
    "check_c3_2",
    "check_thm2",
    "check_thm3",
    "check_thm4",
    "check_thm5",
    "check_thm6",
    "check_thm7",
    "classify_capacity",
    "classify_node",
    "construct_rate2",
    "construct_rate3_2",
    "construct_replication",
    "construct_thm2",
    "construct_thm4",
    "construct_thm7",
    "interference_dimension",
    "internal_edges",
    "k_components",
    "oracle_exhaustive_decode",
    "parse_graph",
    "residing_paths",
    "serialize_graph",
    "strip_one_color",
    "verify_code",
    "verify_edge",
]
