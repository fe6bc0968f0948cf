import pytest
from hypothesis import given
from hypothesis import strategies as st

from foonkit import (
    FunctionalUnit,
    MotionNode,
    ObjectNode,
    ObjectState,
    UniversalFOON,
    graph_stats,
    merge_subgraph,
    node_key,
    parse_subgraph,
    units_producing,
)
from synthetic import random_solvable_foon


def mixer(*ingredients, off=True):
    states = [ObjectState("off")] if off else []
    states.append(ObjectState("contains", ingredients))
    return ObjectNode("mixer", tuple(states))


def unit(inputs, motion, outputs):
    return FunctionalUnit(
        tuple((n, 0) for n in inputs), MotionNode(motion, assumed=True), tuple((n, 0) for n in outputs)
    )


def test_node_key_ignores_state_order():
    a = ObjectNode("mixer", (ObjectState("off"), ObjectState("contains", ("chopped banana",))))
    b = ObjectNode("mixer", (ObjectState("contains", ("chopped banana",)), ObjectState("off")))
    assert node_key(a) == node_key(b)


def test_node_key_normalizes_case_and_whitespace():
    assert node_key(ObjectNode("Mixer")) == node_key(ObjectNode("mixer  "))
    assert node_key(ObjectNode("chopped   Banana")) == node_key(ObjectNode(" chopped banana"))


def test_node_key_distinguishes_contents():
    assert node_key(mixer("chopped banana")) != node_key(mixer("chopped banana", "yoghurt"))


def test_node_key_distinguishes_containers():
    in_bowl = ObjectNode("yoghurt", (ObjectState("in", container="bowl"),))
    in_cup = ObjectNode("yoghurt", (ObjectState("in", container="cup"),))
    assert in_bowl != in_cup


def test_duplicate_states_collapse():
    node = ObjectNode("bowl", (ObjectState("empty"), ObjectState(" Empty ")))
    assert len(node.states) == 1


@pytest.mark.parametrize("bad", [
    lambda: ObjectNode("  "),
    lambda: ObjectState(""),
    lambda: ObjectState("in", container=" "),
    lambda: MotionNode("stir"),
    lambda: MotionNode("stir", 10, 5),
    lambda: MotionNode("stir", 1, 2, assumed=True),
    lambda: unit([], "stir", [ObjectNode("x")]),
    lambda: unit([ObjectNode("x")], "stir", []),
    lambda: FunctionalUnit(((ObjectNode("x"), 2),), MotionNode("a", assumed=True), ((ObjectNode("y"), 0),)),
])
def test_invariants_enforced(bad):
    with pytest.raises(ValueError):
        bad()


def test_fewer_or_more_outputs_than_inputs_allowed():
    a, b, c = ObjectNode("a"), ObjectNode("b"), ObjectNode("c")
    unit([a, b], "m", [c])
    unit([a], "m", [b, c])


names = st.sampled_from(["mixer", "bowl", "Banana", "egg"])
words = st.sampled_from(["off", "on", "Chopped", "in", "contains"])
states_st = st.builds(
    ObjectState,
    words,
    st.lists(st.sampled_from(["a", "b", "c", "d"]), max_size=3).map(tuple),
    st.one_of(st.none(), st.sampled_from(["bowl", "cup"])),
)


@given(names, st.lists(states_st, max_size=4), st.randoms())
def test_node_key_is_a_congruence(name, states, rnd):
    shuffled = list(states)
    rnd.shuffle(shuffled)
    shuffled = [ObjectState(s.label.upper(), tuple(reversed(s.ingredients)), s.container) for s in shuffled]
    assert node_key(ObjectNode(name, tuple(states))) == node_key(ObjectNode(name.upper() + " ", tuple(shuffled)))


def test_merge_into_empty(add_yoghurt_text):
    foon = merge_subgraph(UniversalFOON(), parse_subgraph(add_yoghurt_text))
    assert len(foon) == 1


def test_merge_is_idempotent(add_yoghurt_text):
    sub = parse_subgraph(add_yoghurt_text)
    once = merge_subgraph(UniversalFOON(), sub)
    twice = merge_subgraph(once, sub)
    assert twice.units == once.units


def test_merge_leaves_input_untouched(add_yoghurt_text):
    empty = UniversalFOON()
    merge_subgraph(empty, parse_subgraph(add_yoghurt_text))
    assert len(empty) == 0


def test_dedup_ignores_timestamps_flags_and_order():
    a, b, c = ObjectNode("a"), ObjectNode("b"), ObjectNode("c")
    u1 = FunctionalUnit(((a, 0), (b, 1)), MotionNode("mix", 1, 5), ((c, 0),))
    u2 = FunctionalUnit(((b, 0), (a, 1)), MotionNode("Mix", 7, 9), ((c, 1),))
    assert len(UniversalFOON([u1, u2])) == 1


def _scan_index(units):
    produced, consumed = {}, {}
    for i, u in enumerate(units):
        for n in dict.fromkeys(u.output_nodes):
            produced.setdefault(n.key, []).append(i)
        for n in dict.fromkeys(u.input_nodes):
            consumed.setdefault(n.key, []).append(i)
    return produced, consumed


@pytest.mark.parametrize("seed", range(20))
def test_indexes_match_exhaustive_scan(seed):
    syn = random_solvable_foon(seed)
    foon = UniversalFOON()
    half = len(syn.units) // 2
    foon = merge_subgraph(merge_subgraph(foon, syn.units[:half]), syn.units[half:])
    produced, consumed = _scan_index(foon.units)
    assert foon.produced_by == produced
    assert foon.consumed_by == consumed
    for u in syn.units:
        for n in u.output_nodes:
            assert any(p.identity() == u.identity() for p in units_producing(foon, n))


def test_units_producing_add_yoghurt_goal(add_yoghurt_text):
    foon = UniversalFOON(parse_subgraph(add_yoghurt_text))
    goal = ObjectNode("mixer", (ObjectState("contains", ("chopped banana", "yoghurt")),))
    assert units_producing(foon, goal) == foon.units
    assert units_producing(foon, ObjectNode("toaster")) == []


def test_units_producing_keeps_merge_order():
    goal, x, y = ObjectNode("goal"), ObjectNode("x"), ObjectNode("y")
    from_a, from_b = unit([x], "a", [goal]), unit([y], "b", [goal])
    foon = merge_subgraph(merge_subgraph(UniversalFOON(), [from_a]), [from_b])
    assert units_producing(foon, goal) == [from_a, from_b]
    assert [u for u in foon.units if goal in u.output_nodes] == [from_a, from_b]


def test_graph_stats_empty():
    assert graph_stats(UniversalFOON()) == (0, 0, 0)


def test_graph_stats_add_yoghurt_unit(add_yoghurt_text):
    stats = graph_stats(UniversalFOON(parse_subgraph(add_yoghurt_text)))
    assert (stats.units, stats.object_nodes, stats.motions) == (1, 5, 1)


def test_graph_stats_with_shared_nodes():
    a, b, c, d = (ObjectNode(n) for n in "abcd")
    units = [unit([a, b], "mix", [c]), unit([c], "heat", [d]), unit([a, c], "mix", [d, b])]
    foon = UniversalFOON(units)
    keys = {n.key for u in units for n in u.input_nodes + u.output_nodes}
    assert graph_stats(foon) == (3, len(keys), len({u.motion.name for u in units}))
    assert graph_stats(foon) == (3, 4, 2)


def test_frozen_foon_rejects_additions():
    foon = UniversalFOON().freeze()
    with pytest.raises(RuntimeError):
        foon.add([unit([ObjectNode("a")], "m", [ObjectNode("b")])])
