"""JSON and Graphviz DOT renderings of functional-unit lists and task trees."""

from __future__ import annotations

import json
from typing import Any, Iterable, Optional

import jsonschema

from .core import FunctionalUnit, MotionNode, ObjectNode, ObjectState
from .formats import parse_timestamp, serialize_subgraph

FORMAT_VERSION = 1

_STATE = {
    "type": "object",
    "properties": {
        "label": {"type": "string", "minLength": 1},
        "ingredients": {"type": "array", "items": {"type": "string", "minLength": 1}},
        "container": {"type": ["string", "null"]},
    },
    "required": ["label"],
}
_OBJECT = {
    "type": "object",
    "properties": {
        "name": {"type": "string", "minLength": 1},
        "states": {"type": "array", "items": _STATE},
        "moving": {"type": "boolean"},
    },
    "required": ["name", "states"],
}
_TIMESTAMP = {"type": ["string", "null"], "pattern": r"^\d+:[0-5]\d(:[0-5]\d)?$"}

SCHEMA: dict[str, Any] = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "FOON functional units",
    "type": "object",
    "properties": {
        "formatVersion": {"const": FORMAT_VERSION},
        "units": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "inputs": {"type": "array", "minItems": 1, "items": _OBJECT},
                    "motion": {
                        "type": "object",
                        "properties": {
                            "name": {"type": "string", "minLength": 1},
                            "start": _TIMESTAMP,
                            "end": _TIMESTAMP,
                            "assumed": {"type": "boolean"},
                        },
                        "required": ["name", "assumed"],
                    },
                    "outputs": {"type": "array", "minItems": 1, "items": _OBJECT},
                },
                "required": ["inputs", "motion", "outputs"],
            },
        },
        "goal": _OBJECT,
    },
    "required": ["formatVersion", "units"],
}


def _node_json(node: ObjectNode, flag: Optional[int] = None) -> dict:
    out: dict[str, Any] = {
        "name": node.name,
        "states": [
            {"label": s.label, "ingredients": list(s.ingredients), "container": s.container}
            for s in node.states
        ],
    }
    if flag is not None:
        out["moving"] = bool(flag)
    return out


def _unit_json(unit: FunctionalUnit) -> dict:
    motion = unit.motion
    return {
        "inputs": [_node_json(n, f) for n, f in unit.inputs],
        "motion": {
            "name": motion.name,
            "start": motion.start_text,
            "end": motion.end_text,
            "assumed": motion.assumed,
        },
        "outputs": [_node_json(n, f) for n, f in unit.outputs],
    }


def to_json(units: Iterable[FunctionalUnit], goal: Optional[ObjectNode] = None) -> str:
    doc: dict[str, Any] = {"formatVersion": FORMAT_VERSION, "units": [_unit_json(u) for u in units]}
    if goal is not None:
        doc["goal"] = _node_json(goal)
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def _node_from_json(obj: dict) -> tuple[ObjectNode, int]:
    states = tuple(
        ObjectState(s["label"], tuple(s.get("ingredients") or ()), s.get("container"))
        for s in obj["states"]
    )
    return ObjectNode(obj["name"], states), int(bool(obj.get("moving", False)))


def from_json(text: str) -> list[FunctionalUnit]:
    """Inverse of :func:`to_json`; validates against :data:`SCHEMA` first."""
    doc = json.loads(text)
    jsonschema.validate(doc, SCHEMA)
    units = []
    for raw in doc["units"]:
        m = raw["motion"]
        if m["assumed"]:
            motion = MotionNode(m["name"], assumed=True)
        else:
            motion = MotionNode(
                m["name"], parse_timestamp(m["start"]), parse_timestamp(m["end"]),
                start_text=m["start"], end_text=m["end"],
            )
        units.append(FunctionalUnit(
            tuple(_node_from_json(o) for o in raw["inputs"]),
            motion,
            tuple(_node_from_json(o) for o in raw["outputs"]),
        ))
    return units


def goal_from_json(text: str) -> Optional[ObjectNode]:
    doc = json.loads(text)
    if "goal" not in doc:
        return None
    return _node_from_json(doc["goal"])[0]


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n") + '"'


def to_dot(units: Iterable[FunctionalUnit], name: str = "foon") -> str:
    """Object nodes as boxes, motions as ellipses, edges input -> motion -> output."""
    lines = [f"digraph {_quote(name)} {{", "  rankdir=LR;"]
    ids: dict[str, str] = {}

    def object_id(node: ObjectNode) -> str:
        if node.key not in ids:
            ids[node.key] = f"o{len(ids)}"
            label = node.name
            if node.states:
                label += "\n" + "\n".join(s.describe() for s in node.states)
            lines.append(f"  {ids[node.key]} [shape=box, label={_quote(label)}];")
        return ids[node.key]

    edges = []
    for index, unit in enumerate(units):
        motion_id = f"m{index}"
        lines.append(f"  {motion_id} [shape=ellipse, label={_quote(unit.motion.name)}];")
        for node in unit.input_nodes:
            edges.append(f"  {object_id(node)} -> {motion_id};")
        for node in unit.output_nodes:
            edges.append(f"  {motion_id} -> {object_id(node)};")
    lines.extend(edges)
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_foon_text(units: Iterable[FunctionalUnit]) -> str:
    return serialize_subgraph(units)


EXPORTERS = {"json": to_json, "dot": to_dot, "foon": to_foon_text}
