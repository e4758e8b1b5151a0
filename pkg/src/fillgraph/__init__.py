"""Filling systems on closed orientable surfaces as decorated fat graphs."""

from .core import (
    BoundaryCycle,
    DegreeError,
    DisconnectedError,
    FatGraph,
    FatGraphError,
    MalformedGraphError,
    NotDecoratedError,
    StandardCycle,
    SurfaceSignature,
)
from .ops import (
    ConnectedSumSpec,
    JoinSpec,
    OperationError,
    OperationInvariantError,
    OperationReport,
    PlumbSpec,
    connected_sum,
    join,
    plumbing,
)
from .analysis import (
    WeightedIntersectionGraph,
    check_euler_identity,
    check_kn_bound,
    check_max_weight_bound,
    check_prop62,
    intersection_graph,
)
from .synthesis import (
    ImpossibleSignatureError,
    SearchBudgetError,
    SynthesisPlan,
    SynthesisRangeError,
    TargetSignature,
    filling,
    max_filling,
    minimal_filling,
    search_filling,
    tight_omega_filling,
)
from . import families, formats, oracle

__version__ = "0.1.0"

__all__ = [
    "BoundaryCycle", "DegreeError", "DisconnectedError", "FatGraph",
    "FatGraphError", "MalformedGraphError", "NotDecoratedError",
    "StandardCycle", "SurfaceSignature",
    "ConnectedSumSpec", "JoinSpec", "OperationError",
    "OperationInvariantError", "OperationReport", "PlumbSpec",
    "connected_sum", "join", "plumbing",
    "WeightedIntersectionGraph", "check_euler_identity", "check_kn_bound",
    "check_max_weight_bound", "check_prop62", "intersection_graph",
    "ImpossibleSignatureError", "SearchBudgetError", "SynthesisPlan",
    "SynthesisRangeError", "TargetSignature", "filling", "max_filling",
    "minimal_filling",
    "search_filling", "tight_omega_filling",
    "families", "formats", "oracle",
]
