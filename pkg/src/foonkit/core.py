"""Object, motion and functional-unit types plus the merged (universal) FOON graph."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Optional

_WS = re.compile(r"\s+")


def normalize(text: str) -> str:
    """Trim, collapse internal whitespace and lowercase."""
    return _WS.sub(" ", text).strip().lower()


def format_seconds(seconds: int) -> str:
    minutes, secs = divmod(seconds, 60)
    if minutes >= 60:
        hours, minutes = divmod(minutes, 60)
        return f"{hours}:{minutes:02d}:{secs:02d}"
    return f"{minutes}:{secs:02d}"


@dataclass(frozen=True, eq=False)
class ObjectState:
    """One state of an object: a label, an ingredient set and an optional container.

    Ingredients keep their written order for re-emission but compare as a set.
    """

    label: str
    ingredients: tuple[str, ...] = ()
    container: Optional[str] = None

    def __post_init__(self):
        label = normalize(self.label)
        if not label:
            raise ValueError("state label must be non-empty")
        seen = []
        for item in self.ingredients:
            item = normalize(item)
            if not item:
                raise ValueError("ingredient names must be non-empty")
            if item not in seen:
                seen.append(item)
        container = self.container
        if container is not None:
            container = normalize(container)
            if not container:
                raise ValueError("container name must be non-empty")
        object.__setattr__(self, "label", label)
        object.__setattr__(self, "ingredients", tuple(seen))
        object.__setattr__(self, "container", container)

    @property
    def sort_key(self) -> tuple[str, tuple[str, ...], str]:
        return (self.label, tuple(sorted(self.ingredients)), self.container or "")

    def __eq__(self, other):
        if not isinstance(other, ObjectState):
            return NotImplemented
        return self.sort_key == other.sort_key

    def __hash__(self):
        return hash(self.sort_key)

    def describe(self) -> str:
        text = self.label
        if self.ingredients:
            text += " {" + ", ".join(self.ingredients) + "}"
        if self.container is not None:
            text += f" [{self.container}]"
        return text


@dataclass(frozen=True, eq=False)
class ObjectNode:
    """An object name together with its state set.

    Equality and hashing go through :func:`node_key`, so state order, letter
    case and whitespace never matter.
    """

    name: str
    states: tuple[ObjectState, ...] = ()
    key: str = field(init=False, repr=False)

    def __post_init__(self):
        name = normalize(self.name)
        if not name:
            raise ValueError("object name must be non-empty")
        states = []
        for state in self.states:
            if state not in states:
                states.append(state)
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "states", tuple(states))
        payload = [name, sorted(list(s.sort_key) for s in states)]
        object.__setattr__(
            self, "key", json.dumps(payload, ensure_ascii=False, separators=(",", ":"))
        )

    def __eq__(self, other):
        if not isinstance(other, ObjectNode):
            return NotImplemented
        return self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def describe(self) -> str:
        if not self.states:
            return self.name
        return f"{self.name} ({'; '.join(s.describe() for s in self.states)})"


def node_key(node: ObjectNode) -> str:
    """Canonical identity of an object node (name plus full state set)."""
    return node.key


@dataclass(frozen=True)
class MotionNode:
    name: str
    start: Optional[int] = None
    end: Optional[int] = None
    assumed: bool = False
    # original timestamp spelling, kept for faithful re-emission
    start_text: Optional[str] = field(default=None, compare=False, repr=False)
    end_text: Optional[str] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        name = normalize(self.name)
        if not name:
            raise ValueError("motion name must be non-empty")
        object.__setattr__(self, "name", name)
        timed = self.start is not None and self.end is not None
        if self.assumed == timed:
            raise ValueError("a motion is either assumed or has both start and end times")
        if timed:
            if self.start < 0 or self.end < 0:
                raise ValueError("timestamps must be non-negative")
            if self.start > self.end:
                raise ValueError(f"motion {name!r} starts after it ends")
            if self.start_text is None:
                object.__setattr__(self, "start_text", format_seconds(self.start))
            if self.end_text is None:
                object.__setattr__(self, "end_text", format_seconds(self.end))
        elif self.start is not None or self.end is not None:
            raise ValueError("an assumed motion carries no timestamps")


@dataclass(frozen=True)
class FunctionalUnit:
    """Input object nodes, one motion, output object nodes.

    ``inputs`` and ``outputs`` hold ``(node, moving_flag)`` pairs; the flag is
    a per-occurrence annotation and takes no part in :meth:`identity`.
    """

    inputs: tuple[tuple[ObjectNode, int], ...]
    motion: MotionNode
    outputs: tuple[tuple[ObjectNode, int], ...]

    def __post_init__(self):
        inputs = tuple((node, int(flag)) for node, flag in self.inputs)
        outputs = tuple((node, int(flag)) for node, flag in self.outputs)
        if not inputs:
            raise ValueError("a functional unit needs at least one input")
        if not outputs:
            raise ValueError("a functional unit needs at least one output")
        for _, flag in inputs + outputs:
            if flag not in (0, 1):
                raise ValueError(f"motion flag must be 0 or 1, got {flag!r}")
        object.__setattr__(self, "inputs", inputs)
        object.__setattr__(self, "outputs", outputs)

    @property
    def input_nodes(self) -> list[ObjectNode]:
        return [node for node, _ in self.inputs]

    @property
    def output_nodes(self) -> list[ObjectNode]:
        return [node for node, _ in self.outputs]

    def identity(self) -> tuple[frozenset[str], str, frozenset[str]]:
        """Deduplication key: input key set, motion name, output key set."""
        return (
            frozenset(n.key for n in self.input_nodes),
            self.motion.name,
            frozenset(n.key for n in self.output_nodes),
        )


class GraphStats(NamedTuple):
    units: int
    object_nodes: int
    motions: int


class UniversalFOON:
    """Deduplicated, insertion-ordered store of functional units.

    ``produced_by`` and ``consumed_by`` map node keys to unit indices in
    insertion order. Build it with :meth:`add`, then :meth:`freeze` before
    sharing it between readers.
    """

    def __init__(self, units: Iterable[FunctionalUnit] = ()):
        self.units: list[FunctionalUnit] = []
        self.produced_by: dict[str, list[int]] = {}
        self.consumed_by: dict[str, list[int]] = {}
        self.nodes: dict[str, ObjectNode] = {}
        self._identities: set = set()
        self.frozen = False
        self.add(units)

    def add(self, units: Iterable[FunctionalUnit]) -> "UniversalFOON":
        if self.frozen:
            raise RuntimeError("cannot add units to a frozen FOON")
        for unit in units:
            ident = unit.identity()
            if ident in self._identities:
                continue
            self._identities.add(ident)
            index = len(self.units)
            self.units.append(unit)
            for node in unit.input_nodes:
                self.nodes.setdefault(node.key, node)
                _append_once(self.consumed_by.setdefault(node.key, []), index)
            for node in unit.output_nodes:
                self.nodes.setdefault(node.key, node)
                _append_once(self.produced_by.setdefault(node.key, []), index)
        return self

    def freeze(self) -> "UniversalFOON":
        self.frozen = True
        return self

    def copy(self) -> "UniversalFOON":
        return UniversalFOON(self.units)

    def __len__(self):
        return len(self.units)

    def __iter__(self):
        return iter(self.units)

    def __contains__(self, unit):
        return isinstance(unit, FunctionalUnit) and unit.identity() in self._identities

    def __repr__(self):
        return f"UniversalFOON(units={len(self.units)}, nodes={len(self.nodes)})"


def _append_once(indices: list[int], index: int) -> None:
    if not indices or indices[-1] != index:
        indices.append(index)


def merge_subgraph(foon: UniversalFOON, subgraph: Iterable[FunctionalUnit]) -> UniversalFOON:
    """Return a new FOON holding ``foon``'s units followed by the new units of ``subgraph``."""
    return foon.copy().add(subgraph)


def units_producing(foon: UniversalFOON, goal: ObjectNode) -> list[FunctionalUnit]:
    return [foon.units[i] for i in foon.produced_by.get(goal.key, ())]


def units_consuming(foon: UniversalFOON, node: ObjectNode) -> list[FunctionalUnit]:
    return [foon.units[i] for i in foon.consumed_by.get(node.key, ())]


def graph_stats(foon: UniversalFOON) -> GraphStats:
    motions = {unit.motion.name for unit in foon.units}
    return GraphStats(len(foon.units), len(foon.nodes), len(motions))
