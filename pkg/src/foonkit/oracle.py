"""Exhaustive task-tree enumeration for small graphs.

This deliberately ignores the FOON's producer index and scans the unit list,
so it can serve as ground truth for the searches in :mod:`foonkit.retrieval`.
"""

from __future__ import annotations

from typing import Iterable, Optional

from .core import FunctionalUnit, ObjectNode, UniversalFOON
from .formats import Kitchen
from .retrieval import TaskTree


class BudgetExceeded(RuntimeError):
    pass


def _producers(units: list[FunctionalUnit], key: str) -> list[int]:
    return [i for i, u in enumerate(units) if any(n.key == key for n in u.output_nodes)]


def oracle_enumerate(
    foon: UniversalFOON | Iterable[FunctionalUnit],
    goal: ObjectNode,
    kitchen: Kitchen,
    max_units: int = 25,
    max_expansions: int = 200_000,
) -> list[TaskTree]:
    """All task trees for ``goal`` with at most ``max_units`` steps.

    A task tree here picks exactly one producing unit for every required node
    (the goal, then every non-kitchen input of a picked unit), with no
    dependency cycle among the picks. Trees are deduplicated by step set and
    returned in discovery order, each in a valid execution order.
    """
    units = list(foon)
    kitchen_keys = set(kitchen.keys)
    if goal.key in kitchen_keys:
        return [TaskTree((), goal, kitchen)]

    found: dict[frozenset[int], dict[str, int]] = {}
    expansions = 0

    def extend(assignment: dict[str, int], pending: list[str]) -> None:
        nonlocal expansions
        if not pending:
            steps = frozenset(assignment.values())
            if steps not in found and _acyclic(units, assignment, kitchen_keys):
                found[steps] = dict(assignment)
            return
        key, rest = pending[0], pending[1:]
        if key in assignment:
            extend(assignment, rest)
            return
        for index in _producers(units, key):
            expansions += 1
            if expansions > max_expansions:
                raise BudgetExceeded(f"more than {max_expansions} expansions")
            new_steps = set(assignment.values()) | {index}
            if len(new_steps) > max_units:
                continue
            assignment[key] = index
            new = [
                n.key for n in units[index].input_nodes
                if n.key not in kitchen_keys and n.key not in assignment and n.key not in rest
            ]
            extend(assignment, rest + list(dict.fromkeys(new)))
            del assignment[key]

    extend({}, [goal.key])
    trees = []
    for steps, assignment in found.items():
        order = _order(units, assignment, goal.key, kitchen_keys)
        trees.append(TaskTree(tuple(units[i] for i in order), goal, kitchen))
    return trees


def _acyclic(units, assignment: dict[str, int], kitchen_keys) -> bool:
    # node -> nodes it depends on through its assigned producer
    color: dict[str, int] = {}

    def visit(key: str) -> bool:
        mark = color.get(key)
        if mark == 1:
            return False
        if mark == 2:
            return True
        color[key] = 1
        for n in units[assignment[key]].input_nodes:
            if n.key in kitchen_keys:
                continue
            if not visit(n.key):
                return False
        color[key] = 2
        return True

    return all(visit(k) for k in assignment)


def _order(units, assignment, goal_key, kitchen_keys) -> list[int]:
    order: list[int] = []
    done: set[str] = set()

    def visit(key: str) -> None:
        if key in kitchen_keys or key in done:
            return
        done.add(key)
        index = assignment[key]
        for n in units[index].input_nodes:
            visit(n.key)
        if index not in order:
            order.append(index)

    visit(goal_key)
    return order


def step_set(tree: TaskTree) -> frozenset:
    return frozenset(u.identity() for u in tree.steps)


def chain_depth(tree: TaskTree) -> Optional[int]:
    """Longest producer chain needed to reach the goal using only the tree's steps.

    For each node the shallowest producer among the steps counts. Returns
    ``None`` if the steps cannot make the goal.
    """
    kitchen_keys = set(tree.kitchen.keys)
    depth: dict[str, int] = {k: 0 for k in kitchen_keys}
    changed = True
    while changed:
        changed = False
        for unit in tree.steps:
            ins = [depth.get(n.key) for n in unit.input_nodes]
            if any(d is None for d in ins):
                continue
            height = 1 + max(ins, default=0)
            for n in unit.output_nodes:
                if n.key not in depth or height < depth[n.key]:
                    depth[n.key] = height
                    changed = True
    return depth.get(tree.goal.key)


def minimal_depth(trees: Iterable[TaskTree]) -> Optional[int]:
    depths = [d for d in (chain_depth(t) for t in trees) if d is not None]
    return min(depths, default=None)
