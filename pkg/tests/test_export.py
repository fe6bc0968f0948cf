import json
import re

import jsonschema
import pytest

from foonkit import corpus, parse_subgraph
from foonkit.export import SCHEMA, from_json, goal_from_json, to_dot, to_json
from synthetic import random_solvable_foon


def test_json_round_trip(corpus_name):
    units = corpus.load_foon(corpus_name).units
    assert from_json(to_json(units)) == units


@pytest.mark.parametrize("seed", range(10))
def test_json_round_trip_synthetic(seed):
    units = random_solvable_foon(seed).units
    assert from_json(to_json(units)) == units


def test_json_layout(add_yoghurt_text):
    doc = json.loads(to_json(parse_subgraph(add_yoghurt_text)))
    jsonschema.validate(doc, SCHEMA)
    assert doc["formatVersion"] == 1
    (u,) = doc["units"]
    assert u["motion"] == {"name": "add yoghurt", "start": "1:46", "end": "1:49", "assumed": False}
    assert u["inputs"][2] == {
        "name": "yoghurt",
        "states": [{"label": "in", "ingredients": [], "container": "bowl"}],
        "moving": True,
    }


def test_json_goal_is_optional(add_yoghurt_text):
    units = parse_subgraph(add_yoghurt_text)
    goal = units[0].output_nodes[0]
    assert goal_from_json(to_json(units, goal=goal)) == goal
    assert goal_from_json(to_json(units)) is None


def test_json_rejects_schema_violations():
    with pytest.raises(jsonschema.ValidationError):
        from_json('{"formatVersion": 2, "units": []}')
    with pytest.raises(jsonschema.ValidationError):
        from_json('{"formatVersion": 1, "units": [{"inputs": [], "motion": {"name": "m", "assumed": true}, "outputs": []}]}')


def dot_edges(dot):
    return re.findall(r"^\s+(\w+) -> (\w+);$", dot, flags=re.M)


def test_dot_of_add_yoghurt_unit(add_yoghurt_text):
    dot = to_dot(parse_subgraph(add_yoghurt_text))
    edges = dot_edges(dot)
    assert sum(1 for a, b in edges if b == "m0") == 3
    assert sum(1 for a, b in edges if a == "m0") == 2
    assert dot.count("shape=box") == 5
    assert dot.count("shape=ellipse") == 1
    assert dot.startswith('digraph "foon" {') and dot.rstrip().endswith("}")


def test_dot_is_well_formed(corpus_name):
    dot = to_dot(corpus.load_foon(corpus_name).units, name=corpus_name)
    body = dot.splitlines()[1:-1]
    statement = re.compile(r'^\s+(rankdir=LR|\w+ \[shape=(box|ellipse), label="([^"\\]|\\.)*"\]|\w+ -> \w+);$')
    assert all(statement.match(line) for line in body)
    declared = set(re.findall(r"^\s+(\w+) \[", dot, flags=re.M))
    assert all(a in declared and b in declared for a, b in dot_edges(dot))
