"""Readers and writers for FOON subgraph text, motion success-rate files and kitchen files.

Subgraph files are line oriented::

    //
    O	mixer	0
    S	off
    S	contains	{chopped banana}
    M	add yoghurt	1:46	1:49
    O	mixer	0
    S	contains	{chopped banana, yoghurt}
    //

Fields are separated by runs of tabs; runs of two or more spaces are accepted
as well. The writer always emits single tabs.
"""

from __future__ import annotations

import logging
import math
import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Optional, Union

from .core import FunctionalUnit, MotionNode, ObjectNode, ObjectState, normalize

logger = logging.getLogger(__name__)

_FIELD_SEP = re.compile(r"\s*\t\s*|\s{2,}")
_TIMESTAMP = re.compile(r"^(\d+):([0-5]\d)(?::([0-5]\d))?$")
_BRACES = re.compile(r"\{([^{}]*)\}")
_BRACKETS = re.compile(r"\[([^\[\]]*)\]")


class ParseError(ValueError):
    """Base class for format errors; carries the 1-based line number."""

    def __init__(self, message: str, lineno: Optional[int] = None, source: Optional[str] = None):
        self.message = message
        self.lineno = lineno
        self.source = source
        super().__init__(str(self))

    def __str__(self):
        where = self.source or "<text>"
        if self.lineno is not None:
            where = f"{where}:{self.lineno}"
        return f"{where}: {type(self).__name__}: {self.message}"

    def with_source(self, source: str) -> "ParseError":
        self.source = source
        self.args = (str(self),)
        return self


class MalformedLine(ParseError):
    pass


class StateBeforeObject(ParseError):
    pass


class UnitWithoutMotion(ParseError):
    pass


class UnitWithoutInputs(ParseError):
    pass


class UnitWithoutOutputs(ParseError):
    pass


class BadTimestamp(ParseError):
    pass


class BadMotionFlag(ParseError):
    pass


class BadRate(ParseError):
    pass


def split_fields(line: str) -> list[str]:
    line = line.strip()
    if not line:
        return []
    return [f for f in _FIELD_SEP.split(line) if f != ""]


def parse_timestamp(text: str, lineno: Optional[int] = None) -> int:
    """``M:SS``, ``MM:SS`` or ``H:MM:SS`` to seconds."""
    match = _TIMESTAMP.match(text.strip())
    if not match:
        raise BadTimestamp(f"bad timestamp {text!r}", lineno)
    a, b, c = match.groups()
    if c is None:
        return int(a) * 60 + int(b)
    return int(a) * 3600 + int(b) * 60 + int(c)


def parse_state(text: str, lineno: Optional[int] = None) -> ObjectState:
    """Parse the payload of an S line, e.g. ``contains {a, b}`` or ``in [bowl]``."""
    braces = _BRACES.findall(text)
    brackets = _BRACKETS.findall(text)
    if len(braces) > 1 or len(brackets) > 1:
        raise MalformedLine(f"state has more than one ingredient or container group: {text!r}", lineno)
    label = _BRACKETS.sub(" ", _BRACES.sub(" ", text))
    if any(ch in label for ch in "{}[]"):
        raise MalformedLine(f"unbalanced braces in state {text!r}", lineno)
    ingredients = ()
    if braces:
        ingredients = tuple(p for p in (normalize(x) for x in braces[0].split(",")) if p)
    container = None
    if brackets:
        container = normalize(brackets[0])
        if not container:
            raise MalformedLine("empty container in state", lineno)
    if not normalize(label):
        raise MalformedLine(f"state without a label: {text!r}", lineno)
    return ObjectState(label, ingredients, container)


def _parse_object_line(fields: list[str], lineno: int) -> tuple[str, int]:
    if len(fields) < 2:
        raise MalformedLine("object line without a name", lineno)
    if len(fields) > 3:
        raise MalformedLine("too many fields on object line", lineno)
    name = fields[1]
    if len(fields) == 3:
        flag_text = fields[2].strip()
        if flag_text not in ("0", "1"):
            raise BadMotionFlag(f"motion flag must be 0 or 1, got {flag_text!r}", lineno)
        return name, int(flag_text)
    # flag separated from the name by a single space, as in hand-typed files
    head, _, tail = name.rpartition(" ")
    if head and tail in ("0", "1"):
        return head, int(tail)
    return name, 0


def _parse_motion_line(fields: list[str], lineno: int) -> MotionNode:
    if len(fields) < 2:
        raise MalformedLine("motion line without a name", lineno)
    name, rest = fields[1], fields[2:]
    if not rest:
        # fall back to whitespace tokens: "add yoghurt 1:46 1:49" / "stir Assumed"
        tokens = name.split()
        if len(tokens) >= 2 and tokens[-1].lower() == "assumed":
            name, rest = " ".join(tokens[:-1]), tokens[-1:]
        elif len(tokens) >= 3 and _TIMESTAMP.match(tokens[-1]) and _TIMESTAMP.match(tokens[-2]):
            name, rest = " ".join(tokens[:-2]), tokens[-2:]
        else:
            raise MalformedLine("motion line needs start and end times or 'Assumed'", lineno)
    if len(rest) == 1 and rest[0].strip().lower() == "assumed":
        return MotionNode(name, assumed=True)
    if len(rest) != 2:
        raise MalformedLine("motion line needs start and end times or 'Assumed'", lineno)
    start = parse_timestamp(rest[0], lineno)
    end = parse_timestamp(rest[1], lineno)
    if start > end:
        raise BadTimestamp(f"start {rest[0]} is after end {rest[1]}", lineno)
    return MotionNode(name, start, end, start_text=rest[0].strip(), end_text=rest[1].strip())


class _Block:
    def __init__(self, lineno: int):
        self.lineno = lineno
        self.inputs: list[list] = []
        self.outputs: list[list] = []
        self.motion: Optional[MotionNode] = None
        self.current: Optional[list] = None

    @property
    def empty(self) -> bool:
        return self.current is None and self.motion is None

    def finish(self) -> FunctionalUnit:
        if self.motion is None:
            raise UnitWithoutMotion("functional unit has no motion line", self.lineno)
        if not self.inputs:
            raise UnitWithoutInputs("functional unit has no input objects", self.lineno)
        if not self.outputs:
            raise UnitWithoutOutputs("functional unit has no output objects", self.lineno)
        return FunctionalUnit(
            tuple((ObjectNode(n, tuple(s)), f) for n, s, f in self.inputs),
            self.motion,
            tuple((ObjectNode(n, tuple(s)), f) for n, s, f in self.outputs),
        )


def parse_subgraph(text: str, source: Optional[str] = None) -> list[FunctionalUnit]:
    """Parse subgraph text into functional units, one per ``//``-delimited block.

    Raises a :class:`ParseError` subclass, with line number, on the first problem.
    """
    try:
        return list(_iter_units(text))
    except ParseError as exc:
        if source is not None:
            exc.with_source(source)
        raise


def _iter_units(text: str) -> Iterator[FunctionalUnit]:
    block = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped:
            continue
        if stripped.startswith("//"):
            if block is not None and not block.empty:
                yield block.finish()
            block = None
            continue
        if block is None:
            block = _Block(lineno)
        fields = split_fields(line)
        tag = fields[0]
        if tag == "O":
            name, flag = _parse_object_line(fields, lineno)
            entry = [name, [], flag]
            (block.inputs if block.motion is None else block.outputs).append(entry)
            block.current = entry
        elif tag == "S":
            if block.current is None:
                raise StateBeforeObject("state line before any object line", lineno)
            payload = " ".join(fields[1:])
            block.current[1].append(parse_state(payload, lineno))
        elif tag == "M":
            if block.motion is not None:
                raise MalformedLine("second motion line in one functional unit", lineno)
            if not block.inputs:
                raise UnitWithoutInputs("motion line before any input object", lineno)
            block.motion = _parse_motion_line(fields, lineno)
            block.current = None
        else:
            raise MalformedLine(f"unknown line tag {tag!r}", lineno)
    if block is not None and not block.empty:
        yield block.finish()


def _object_lines(node: ObjectNode, flag: int) -> list[str]:
    lines = [f"O\t{node.name}\t{flag}"]
    for state in node.states:
        line = f"S\t{state.label}"
        if state.ingredients:
            line += "\t{" + ", ".join(state.ingredients) + "}"
        if state.container is not None:
            line += f"\t[{state.container}]"
        lines.append(line)
    return lines


def serialize_unit(unit: FunctionalUnit) -> list[str]:
    lines = []
    for node, flag in unit.inputs:
        lines.extend(_object_lines(node, flag))
    motion = unit.motion
    if motion.assumed:
        lines.append(f"M\t{motion.name}\tAssumed")
    else:
        lines.append(f"M\t{motion.name}\t{motion.start_text}\t{motion.end_text}")
    for node, flag in unit.outputs:
        lines.extend(_object_lines(node, flag))
    return lines


def serialize_subgraph(units: Iterable[FunctionalUnit]) -> str:
    """Canonical text form; an empty unit list gives an empty string."""
    lines = []
    for unit in units:
        lines.append("//")
        lines.extend(serialize_unit(unit))
    if not lines:
        return ""
    lines.append("//")
    return "\n".join(lines) + "\n"


@dataclass
class MotionRates:
    """Success rate per motion name; unknown motions fall back to ``default_rate``."""

    rates: dict[str, float] = field(default_factory=dict)
    default_rate: float = 0.0
    missing: set[str] = field(default_factory=set, repr=False, compare=False)

    def __post_init__(self):
        self.rates = {normalize(k): float(v) for k, v in self.rates.items()}
        for name, value in self.rates.items():
            _check_rate(value, f"rate for {name!r}")
        _check_rate(self.default_rate, "default rate")

    def rate(self, motion: str) -> float:
        motion = normalize(motion)
        try:
            return self.rates[motion]
        except KeyError:
            if motion not in self.missing:
                self.missing.add(motion)
                logger.warning("no success rate for motion %r, using %s", motion, self.default_rate)
            return self.default_rate

    __getitem__ = rate

    def __contains__(self, motion):
        return normalize(motion) in self.rates

    def __len__(self):
        return len(self.rates)


def _check_rate(value: float, what: str) -> None:
    if math.isnan(value) or not 0.0 <= value <= 1.0:
        raise ValueError(f"{what} must lie in [0, 1], got {value}")


def parse_motion_rates(text: str, default_rate: float = 0.0, source: Optional[str] = None) -> MotionRates:
    """Parse ``name<TAB>rate`` lines; ``#`` comments and blank lines are skipped."""
    rates: dict[str, float] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        fields = split_fields(stripped)
        if len(fields) == 1:
            fields = stripped.rsplit(None, 1)
        if len(fields) != 2:
            exc = BadRate(f"expected '<motion>\\t<rate>', got {stripped!r}", lineno)
            raise exc.with_source(source) if source else exc
        name, value_text = normalize(fields[0]), fields[1]
        try:
            value = float(value_text)
        except ValueError:
            value = float("nan")
        if math.isnan(value) or not 0.0 <= value <= 1.0:
            exc = BadRate(f"rate must be a number in [0, 1], got {value_text!r}", lineno)
            raise exc.with_source(source) if source else exc
        if name in rates:
            logger.warning("duplicate rate for motion %r on line %d; last one wins", name, lineno)
        rates[name] = value
    return MotionRates(rates, default_rate)


def serialize_motion_rates(rates: Union[MotionRates, Mapping[str, float]]) -> str:
    table = rates.rates if isinstance(rates, MotionRates) else rates
    return "".join(f"{name}\t{value!r}\n" for name, value in table.items())


class Kitchen:
    """Set of object nodes available before execution; membership is by node key."""

    def __init__(self, items: Iterable[ObjectNode] = ()):
        self._items: dict[str, ObjectNode] = {}
        for node in items:
            self.add(node)

    def add(self, node: ObjectNode) -> None:
        self._items.setdefault(node.key, node)

    def __contains__(self, item) -> bool:
        if isinstance(item, ObjectNode):
            item = item.key
        return item in self._items

    def __iter__(self) -> Iterator[ObjectNode]:
        return iter(self._items.values())

    def __len__(self):
        return len(self._items)

    def __eq__(self, other):
        if not isinstance(other, Kitchen):
            return NotImplemented
        return self._items.keys() == other._items.keys()

    @property
    def keys(self) -> frozenset[str]:
        return frozenset(self._items)

    def __repr__(self):
        return f"Kitchen({len(self)} items)"


def parse_kitchen(text: str, source: Optional[str] = None) -> Kitchen:
    """Parse O/S lines into a kitchen; ``//`` lines are ignored, M lines are errors."""
    items: list[list] = []
    try:
        for lineno, line in enumerate(text.splitlines(), start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("//"):
                continue
            fields = split_fields(line)
            tag = fields[0]
            if tag == "O":
                name, _ = _parse_object_line(fields, lineno)
                items.append([name, []])
            elif tag == "S":
                if not items:
                    raise StateBeforeObject("state line before any object line", lineno)
                items[-1][1].append(parse_state(" ".join(fields[1:]), lineno))
            elif tag == "M":
                raise MalformedLine("motion lines are not allowed in a kitchen file", lineno)
            else:
                raise MalformedLine(f"unknown line tag {tag!r}", lineno)
    except ParseError as exc:
        if source is not None:
            exc.with_source(source)
        raise
    return Kitchen(ObjectNode(name, tuple(states)) for name, states in items)


def serialize_kitchen(kitchen: Iterable[ObjectNode]) -> str:
    lines = []
    for node in kitchen:
        lines.extend(_object_lines(node, 0))
    return "\n".join(lines) + ("\n" if lines else "")
