import pytest

from foonkit import (
    FunctionalUnit,
    Kitchen,
    MotionNode,
    ObjectNode,
    RetrievalRequest,
    UniversalFOON,
    corpus,
    resolve_goal,
    retrieve,
    validate_task_tree,
)
from foonkit.oracle import BudgetExceeded, chain_depth, minimal_depth, oracle_enumerate, step_set
from synthetic import random_solvable_foon


def unit(inputs, motion, outputs):
    return FunctionalUnit(
        tuple((n, 0) for n in inputs), MotionNode(motion, assumed=True), tuple((n, 0) for n in outputs)
    )


def test_single_unit():
    foon = corpus.load_foon("add_yoghurt")
    goal = foon.units[0].output_nodes[0]
    trees = oracle_enumerate(foon, goal, corpus.load_kitchen("add_yoghurt"))
    assert [len(t) for t in trees] == [1]


def test_diamond_has_two_trees():
    foon, kitchen = corpus.load_foon("diamond"), corpus.load_kitchen("diamond")
    goal = resolve_goal(foon, "juice", ("in [glass]",), kitchen)
    trees = oracle_enumerate(foon, goal, kitchen)
    assert sorted(sorted(u.motion.name for u in t.steps) for t in trees) == [["cut", "squeeze"], ["pour"]]
    assert all(validate_task_tree(t) for t in trees)
    assert minimal_depth(trees) == 1


def test_unsatisfiable_goal():
    foon, kitchen = corpus.load_foon("dead_end"), corpus.load_kitchen("dead_end")
    assert oracle_enumerate(foon, resolve_goal(foon, "cake"), kitchen) == []


def test_cycles_are_not_trees():
    foon = corpus.load_foon("cyclic")
    goal = foon.units[0].output_nodes[0]
    assert oracle_enumerate(foon, goal, Kitchen()) == []


def test_max_units_prunes():
    foon, kitchen = corpus.load_foon("chain"), corpus.load_kitchen("chain")
    goal = resolve_goal(foon, "bread")
    assert oracle_enumerate(foon, goal, kitchen, max_units=2) == []
    assert len(oracle_enumerate(foon, goal, kitchen, max_units=3)) == 1


def test_budget():
    foon, kitchen = corpus.load_foon("chain"), corpus.load_kitchen("chain")
    with pytest.raises(BudgetExceeded):
        oracle_enumerate(foon, resolve_goal(foon, "bread"), kitchen, max_expansions=2)


def test_enumeration_count_by_hand():
    # goal needs a and b; a has 2 producers, b has 3 -> 6 combinations
    k, a, b, goal = (ObjectNode(n) for n in ("k", "a", "b", "goal"))
    units = [unit([a, b], "join", [goal])]
    units += [unit([k], f"a{i}", [a]) for i in range(2)]
    units += [unit([k], f"b{i}", [b]) for i in range(3)]
    trees = oracle_enumerate(UniversalFOON(units), goal, Kitchen([k]))
    assert len(trees) == 6
    assert len({step_set(t) for t in trees}) == 6


def test_chain_depth():
    foon, kitchen = corpus.load_foon("chain"), corpus.load_kitchen("chain")
    (tree,) = oracle_enumerate(foon, resolve_goal(foon, "bread"), kitchen)
    assert chain_depth(tree) == 3


@pytest.mark.parametrize("seed", range(60))
def test_retrievals_are_enumerated_and_ids_is_minimal(seed):
    syn = random_solvable_foon(seed, max_derived=6)
    foon = UniversalFOON(syn.units)
    for goal in syn.goals[-2:]:
        trees = oracle_enumerate(foon, goal, syn.kitchen)
        sets = {step_set(t) for t in trees}
        for algo in ("ids", "gbfs-h1", "gbfs-h2"):
            tree = retrieve(foon, RetrievalRequest(goal, syn.kitchen, algo, 50, syn.rates))
            assert step_set(tree) in sets
            if algo == "ids":
                assert tree.bound == minimal_depth(trees)
