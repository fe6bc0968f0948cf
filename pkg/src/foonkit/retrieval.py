"""Task-tree retrieval over a universal FOON.

Three searches are provided. :func:`retrieve_ids` runs depth-limited searches
over the backward dependency graph (goal, producing units, their inputs, ...)
with a growing bound. :func:`retrieve_gbfs` is the queue-based greedy search,
choosing among producing units either by motion success rate (``gbfs-h1``) or
by the number of input objects (``gbfs-h2``).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Mapping, NamedTuple, Optional, Sequence, Union

from .core import FunctionalUnit, ObjectNode, UniversalFOON
from .formats import Kitchen, MotionRates, parse_state

IDS = "ids"
GBFS_H1 = "gbfs-h1"
GBFS_H2 = "gbfs-h2"
ALGORITHMS = (IDS, GBFS_H1, GBFS_H2)
_ALIASES = {"ids": IDS, "h1": GBFS_H1, "gbfs-h1": GBFS_H1, "h2": GBFS_H2, "gbfs-h2": GBFS_H2}

Rates = Union[MotionRates, Mapping[str, float]]


class RetrievalError(Exception):
    """Base class for retrieval failures."""


class GoalUnknown(RetrievalError):
    def __init__(self, goal: ObjectNode):
        self.goal = goal
        super().__init__(f"goal {goal.describe()} appears nowhere in the FOON and is not in the kitchen")


class AmbiguousGoal(RetrievalError):
    def __init__(self, name: str, candidates: Sequence[ObjectNode]):
        self.name = name
        self.candidates = list(candidates)
        listing = "\n".join(f"  {c.describe()}" for c in self.candidates)
        super().__init__(f"goal name {name!r} matches {len(self.candidates)} object nodes:\n{listing}")


class DeadEnd(RetrievalError):
    def __init__(self, node: ObjectNode, partial: Sequence[FunctionalUnit]):
        self.node = node
        self.partial = list(partial)
        super().__init__(
            f"{node.describe()} is neither in the kitchen nor produced by any functional unit "
            f"({len(self.partial)} units selected before the dead end)"
        )


class NotFoundWithinDepth(RetrievalError):
    def __init__(self, goal: ObjectNode, depth_limit: int, frontier: Sequence[ObjectNode]):
        self.goal = goal
        self.depth_limit = depth_limit
        self.frontier = list(frontier)
        listing = "\n".join(f"  {n.describe()}" for n in self.frontier)
        super().__init__(
            f"no task tree for {goal.describe()} within depth {depth_limit}; unresolved frontier:\n{listing}"
        )


class CyclicSelection(RetrievalError):
    """The greedy choices depend on each other in a cycle, so no execution order exists."""

    def __init__(self, units: Sequence[FunctionalUnit]):
        self.units = list(units)
        names = ", ".join(u.motion.name for u in self.units)
        super().__init__(f"greedy selection forms a dependency cycle through motions: {names}")


@dataclass(frozen=True)
class TaskTree:
    """Functional units in execution order, dependencies first."""

    steps: tuple[FunctionalUnit, ...]
    goal: ObjectNode
    kitchen: Kitchen = field(compare=False, repr=False)
    # depth bound at which iterative deepening succeeded
    bound: Optional[int] = field(default=None, compare=False)
    # greedy searches: (expanded node, chosen unit) in selection order
    selections: tuple[tuple[ObjectNode, FunctionalUnit], ...] = field(default=(), compare=False, repr=False)

    def __len__(self):
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)


def tree_size(tree: TaskTree) -> int:
    return len(tree.steps)


@dataclass(frozen=True)
class RetrievalRequest:
    goal: ObjectNode
    kitchen: Kitchen
    algorithm: str = IDS
    depth_limit: int = 50
    rates: Optional[Rates] = None

    def __post_init__(self):
        try:
            algorithm = _ALIASES[str(self.algorithm).lower()]
        except KeyError:
            raise ValueError(f"unknown algorithm {self.algorithm!r}; choose from {ALGORITHMS}") from None
        object.__setattr__(self, "algorithm", algorithm)
        if isinstance(self.depth_limit, bool) or not isinstance(self.depth_limit, int) or self.depth_limit < 1:
            raise ValueError(f"depth_limit must be a positive integer, got {self.depth_limit!r}")
        if algorithm == GBFS_H1 and self.rates is None:
            raise ValueError("gbfs-h1 needs motion success rates")


def lookup_rate(rates: Optional[Rates], motion: str) -> float:
    if rates is None:
        return 0.0
    if isinstance(rates, MotionRates):
        return rates.rate(motion)
    return float(rates.get(motion, 0.0))


def check_goal_known(foon: UniversalFOON, goal: ObjectNode, kitchen: Kitchen) -> None:
    if goal.key not in foon.nodes and goal not in kitchen:
        raise GoalUnknown(goal)


def retrieve(foon: UniversalFOON, request: RetrievalRequest) -> TaskTree:
    if request.algorithm == IDS:
        return retrieve_ids(foon, request)
    return retrieve_gbfs(foon, request)


class _Resolution(NamedTuple):
    unit: int
    height: int
    # one entry per input: None when the input is in the kitchen
    children: tuple[Optional["_Resolution"], ...]


def retrieve_ids(foon: UniversalFOON, request: RetrievalRequest) -> TaskTree:
    """Iterative deepening: depth-limited searches at bounds 0, 1, ..., ``depth_limit``.

    A node resolves at bound ``r`` if it is in the kitchen, or if some producing
    unit (tried in insertion order) resolves all its inputs within ``r - 1``.
    The first resolution at the smallest successful bound is returned.
    """
    goal, kitchen = request.goal, request.kitchen
    check_goal_known(foon, goal, kitchen)
    if goal in kitchen:
        return TaskTree((), goal, kitchen, bound=0)

    frontier: dict[str, ObjectNode] = {}
    for bound in range(1, request.depth_limit + 1):
        memo: dict[tuple[str, int], Optional[_Resolution]] = {}
        frontier.clear()

        def search(node: ObjectNode, remaining: int) -> Optional[_Resolution]:
            state = (node.key, remaining)
            if state in memo:
                return memo[state]
            memo[state] = None
            found = None
            producers = foon.produced_by.get(node.key, ())
            if remaining == 0 or not producers:
                frontier.setdefault(node.key, node)
            else:
                for index in producers:
                    children = []
                    for child in foon.units[index].input_nodes:
                        if child in kitchen:
                            children.append(None)
                            continue
                        sub = search(child, remaining - 1)
                        if sub is None:
                            break
                        children.append(sub)
                    else:
                        height = 1 + max((c.height for c in children if c is not None), default=0)
                        found = _Resolution(index, height, tuple(children))
                        break
            memo[state] = found
            return found

        found = search(goal, bound)
        if found is not None:
            steps = _linearize_resolution(foon, goal, found, kitchen)
            return TaskTree(tuple(steps), goal, kitchen, bound=bound)
    raise NotFoundWithinDepth(goal, request.depth_limit, list(frontier.values()))


def _linearize_resolution(foon, goal, root: _Resolution, kitchen) -> list[FunctionalUnit]:
    # A node may be resolved in several places of the search tree; keep the
    # shallowest resolution (first seen on ties) so every node has one producer.
    best: dict[str, _Resolution] = {}
    stack = [(goal, root)]
    while stack:
        node, res = stack.pop()
        if node.key not in best or res.height < best[node.key].height:
            best[node.key] = res
        inputs = foon.units[res.unit].input_nodes
        for child, sub in reversed(list(zip(inputs, res.children))):
            if sub is not None:
                stack.append((child, sub))

    order: list[int] = []
    emitted: set[int] = set()
    done: set[str] = set()

    def visit(node: ObjectNode) -> None:
        if node in kitchen or node.key in done:
            return
        done.add(node.key)
        index = best[node.key].unit
        for child in foon.units[index].input_nodes:
            visit(child)
        if index not in emitted:
            emitted.add(index)
            order.append(index)

    visit(goal)
    return [foon.units[i] for i in order]


def selection_key(algorithm: str, rates: Optional[Rates], unit: FunctionalUnit, index: int) -> tuple:
    """Sort key for candidate producers; the smallest key wins."""
    rate = lookup_rate(rates, unit.motion.name)
    if algorithm == GBFS_H1:
        return (-rate, len(unit.inputs), index)
    return (len(unit.inputs), -rate, index)


def retrieve_gbfs(foon: UniversalFOON, request: RetrievalRequest) -> TaskTree:
    """Greedy best-first retrieval with a FIFO work queue and a visited set.

    Each dequeued node outside the kitchen is expanded once, choosing the
    producing unit with the best heuristic score. The selections are reversed
    into execution order at the end.
    """
    if request.algorithm not in (GBFS_H1, GBFS_H2):
        raise ValueError(f"retrieve_gbfs cannot run {request.algorithm!r}")
    goal, kitchen, rates = request.goal, request.kitchen, request.rates
    check_goal_known(foon, goal, kitchen)

    queue = deque([goal])
    visited = {goal.key}
    selections: list[tuple[ObjectNode, int]] = []
    while queue:
        node = queue.popleft()
        if node in kitchen:
            continue
        candidates = foon.produced_by.get(node.key, ())
        if not candidates:
            partial = [foon.units[i] for _, i in reversed(selections)]
            raise DeadEnd(node, partial)
        best = min(
            candidates,
            key=lambda i: selection_key(request.algorithm, rates, foon.units[i], i),
        )
        selections.append((node, best))
        for child in foon.units[best].input_nodes:
            if child.key not in visited:
                visited.add(child.key)
                queue.append(child)

    chosen = {node.key: index for node, index in selections}
    order = []
    for _, index in reversed(selections):
        if index not in order:
            order.append(index)
    order = _execution_order(foon, order, chosen, kitchen)
    return TaskTree(
        tuple(foon.units[i] for i in order),
        goal,
        kitchen,
        selections=tuple((node, foon.units[i]) for node, i in selections),
    )


def _execution_order(foon, order: list[int], chosen: dict[str, int], kitchen) -> list[int]:
    """Stable topological sort of the selected units, preferring the given order."""
    position = {index: pos for pos, index in enumerate(order)}
    needs: dict[int, set[int]] = {index: set() for index in order}
    for index in order:
        for child in foon.units[index].input_nodes:
            if child in kitchen:
                continue
            needs[index].add(chosen[child.key])
    result = []
    placed: set[int] = set()
    remaining = list(order)
    while remaining:
        ready = [i for i in remaining if needs[i] <= placed]
        if not ready:
            raise CyclicSelection([foon.units[i] for i in remaining])
        nxt = min(ready, key=position.__getitem__)
        result.append(nxt)
        placed.add(nxt)
        remaining.remove(nxt)
    return result


class ValidationReport(NamedTuple):
    ok: bool
    step: Optional[int] = None
    node: Optional[ObjectNode] = None
    message: str = "ok"

    def __bool__(self):
        return self.ok


def validate_task_tree(tree: TaskTree, kitchen: Optional[Kitchen] = None) -> ValidationReport:
    """Check that every step's inputs are in the kitchen or made by an earlier step."""
    kitchen = tree.kitchen if kitchen is None else kitchen
    available = set(kitchen.keys)
    seen_units = set()
    for position, unit in enumerate(tree.steps):
        ident = unit.identity()
        if ident in seen_units:
            return ValidationReport(False, position, None, f"step {position} duplicates an earlier step")
        seen_units.add(ident)
        for node in unit.input_nodes:
            if node.key not in available:
                return ValidationReport(
                    False, position, node,
                    f"step {position} ({unit.motion.name}) needs {node.describe()} before it is available",
                )
        available.update(n.key for n in unit.output_nodes)
    if not tree.steps:
        if tree.goal in kitchen:
            return ValidationReport(True)
        return ValidationReport(False, None, tree.goal, "empty tree but the goal is not in the kitchen")
    if not any(tree.goal.key == n.key for u in tree.steps for n in u.output_nodes):
        return ValidationReport(False, None, tree.goal, "no step produces the goal")
    return ValidationReport(True)


def resolve_goal(
    foon: UniversalFOON,
    name: str,
    states: Sequence[str] = (),
    kitchen: Optional[Kitchen] = None,
) -> ObjectNode:
    """Find the one object node matching a name and optional state descriptions.

    ``states`` use S-line payload syntax, e.g. ``"contains {banana, yoghurt}"``.
    An exact match on name plus states wins; otherwise the nodes whose state set
    includes the given states are candidates, and exactly one must remain.
    """
    wanted = [parse_state(s) for s in states]
    pool = dict(foon.nodes)
    if kitchen is not None:
        for node in kitchen:
            pool.setdefault(node.key, node)
    if wanted:
        exact = ObjectNode(name, tuple(wanted))
        if exact.key in pool:
            return pool[exact.key]
    probe = ObjectNode(name, tuple(wanted))
    candidates = [
        node for node in pool.values()
        if node.name == probe.name and all(s in node.states for s in probe.states)
    ]
    if not candidates:
        raise GoalUnknown(probe)
    if len(candidates) > 1:
        raise AmbiguousGoal(probe.name, candidates)
    return candidates[0]
