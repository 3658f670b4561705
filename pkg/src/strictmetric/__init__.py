"""Consistent path systems and strictly metrizable graphs.

Exact rational LPs decide whether a path system is realised by unique
shortest paths, with Farkas certificates when it is not.  Graph-level
decisions, minor searches and a structure classifier sit on top.
"""

from .config import Budgets
from .errors import (
    BudgetExceeded,
    Graph6Error,
    InconsistentSystem,
    InternalInvariantError,
    InvalidInput,
    NotPersistent,
    StrictMetricError,
)
from .graph import Graph, parse_graph6, to_graph6
from .metric import (
    WeightFunction,
    decide_metric,
    decide_strictly_metric,
    induced_system,
    realize_zero_on_persistent,
    simply_induces_check,
)
from .paths import PathSystem, check_consistent, enumerate_consistent_systems, persistent_edges
from .sm import decide_sm_graph
from .structure import classify_structure, forbidden_scan, minor, topological_minor

__version__ = "0.1.0"

__all__ = [
    "Budgets",
    "BudgetExceeded",
    "Graph",
    "Graph6Error",
    "InconsistentSystem",
    "InternalInvariantError",
    "InvalidInput",
    "NotPersistent",
    "PathSystem",
    "StrictMetricError",
    "WeightFunction",
    "check_consistent",
    "classify_structure",
    "decide_metric",
    "decide_sm_graph",
    "decide_strictly_metric",
    "enumerate_consistent_systems",
    "forbidden_scan",
    "induced_system",
    "minor",
    "parse_graph6",
    "persistent_edges",
    "realize_zero_on_persistent",
    "simply_induces_check",
    "to_graph6",
    "topological_minor",
]
