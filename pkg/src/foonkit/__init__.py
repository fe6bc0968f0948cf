"""Parse FOON subgraphs, merge them into a universal FOON and retrieve task trees."""

from .core import (
    FunctionalUnit,
    GraphStats,
    MotionNode,
    ObjectNode,
    ObjectState,
    UniversalFOON,
    graph_stats,
    merge_subgraph,
    node_key,
    units_producing,
)
from .estimator import TaskTreeRetriever
from .formats import (
    Kitchen,
    MotionRates,
    ParseError,
    parse_kitchen,
    parse_motion_rates,
    parse_subgraph,
    serialize_subgraph,
)
from .oracle import BudgetExceeded, oracle_enumerate
from .retrieval import (
    AmbiguousGoal,
    CyclicSelection,
    DeadEnd,
    GoalUnknown,
    NotFoundWithinDepth,
    RetrievalError,
    RetrievalRequest,
    TaskTree,
    resolve_goal,
    retrieve,
    retrieve_gbfs,
    retrieve_ids,
    tree_size,
    validate_task_tree,
)

__version__ = "0.1.0"
