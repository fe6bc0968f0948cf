"""Input coercion helpers shared by the estimator and the CLI."""

from __future__ import annotations

from typing import Iterable, Mapping, Optional, Sequence, Union

from .core import FunctionalUnit, ObjectNode, UniversalFOON
from .formats import Kitchen, MotionRates
from .retrieval import resolve_goal


def check_foon(X) -> UniversalFOON:
    """Accept a UniversalFOON, a list of units, or a list of subgraphs (lists of units)."""
    if isinstance(X, UniversalFOON):
        return X.copy()
    if isinstance(X, FunctionalUnit):
        return UniversalFOON([X])
    foon = UniversalFOON()
    for item in X:
        if isinstance(item, FunctionalUnit):
            foon.add([item])
        elif isinstance(item, Iterable) and not isinstance(item, (str, bytes)):
            items = list(item)
            if not all(isinstance(u, FunctionalUnit) for u in items):
                raise TypeError("subgraphs must contain only FunctionalUnit objects")
            foon.add(items)
        else:
            raise TypeError(f"expected FunctionalUnit or a subgraph, got {type(item).__name__}")
    return foon


def check_kitchen(kitchen) -> Kitchen:
    if isinstance(kitchen, Kitchen):
        return kitchen
    if kitchen is None:
        return Kitchen()
    items = list(kitchen)
    if not all(isinstance(n, ObjectNode) for n in items):
        raise TypeError("a kitchen is a Kitchen or an iterable of ObjectNode")
    return Kitchen(items)


def check_goal(foon: UniversalFOON, goal: Union[ObjectNode, str], kitchen: Optional[Kitchen] = None,
               states: Sequence[str] = ()) -> ObjectNode:
    if isinstance(goal, ObjectNode):
        return goal
    if isinstance(goal, str):
        return resolve_goal(foon, goal, states, kitchen)
    raise TypeError(f"goal must be an ObjectNode or an object name, got {type(goal).__name__}")


def check_rates(rates) -> Optional[Union[MotionRates, Mapping[str, float]]]:
    if rates is None or isinstance(rates, MotionRates):
        return rates
    if isinstance(rates, Mapping):
        return {str(k): float(v) for k, v in rates.items()}
    raise TypeError("rates must be MotionRates or a mapping of motion name to rate")
