from __future__ import annotations

import itertools

import numpy as np
import pytest

from cbddl.diversity import CostModel, SyntaxNode, discount, pairwise_matrix, task_to_tree, tree_edit_distance
from cbddl.diversity.ted import matrix_from_csv, matrix_to_csv
from cbddl.parser import parse_file, parse_problem

import oracles
from conftest import CORPUS, corpus_files

CM = CostModel()
N = SyntaxNode


def all_small_trees(max_nodes=4):
    """Every ordered tree up to ``max_nodes`` over a two-choice alphabet per node position."""
    inner = [("Predicate", "OnTop"), ("Verb", "pick")]
    leaf = [("Object", "apple"), ("Object", "green_apple")]
    out = []
    for n in range(1, max_nodes + 1):
        for shape in oracles.ordered_shapes(n):
            out.extend(_label(shape, inner, leaf))
    return out


def _label(shape, inner, leaf):
    choices = leaf if not shape else inner
    kids = [list(_label(c, inner, leaf)) for c in shape]
    for t, lab in choices:
        for combo in itertools.product(*kids):
            yield N(t, lab, tuple(combo))


def test_shape_counts():
    assert [len(oracles.ordered_shapes(n)) for n in range(1, 6)] == [1, 1, 2, 5, 14]


def test_zhang_shasha_equals_mapping_oracle_other_weights():
    # the full four-node sweep under default weights runs in the acceptance module
    cm = CostModel({"Predicate": 2.0, "Verb": 5.0, "Object": 0.7}, update_base=1.7)
    trees = all_small_trees(3)
    assert len(trees) == 22
    for a in trees:
        for b in trees:
            want = oracles.mapping_distance(a, b, cm.indel, cm.update)
            assert tree_edit_distance(a, b, cm) == pytest.approx(want, abs=1e-12), (str(a), str(b))


def test_single_leaf_update():
    d = tree_edit_distance(N("Object", "apple"), N("Object", "lemon"), CM)
    assert d == CM.update_base * CM.weights["Object"] * discount("apple", "lemon") == 1.0


def test_discount_is_token_jaccard():
    assert discount("apple", "apple") == 0.0
    assert discount("red_apple", "green apple") == pytest.approx(1 - 1 / 3)
    assert discount("apple", "lemon") == 1.0


def test_cross_type_relabel_costs_delete_plus_insert():
    d = tree_edit_distance(N("Region", "region_A"), N("Object", "region_A"), CM)
    assert d == 2.0


def test_cost_model_json(tmp_path):
    p = tmp_path / "cm.json"
    p.write_text('{"weights": {"Object": 2.5}, "update_base": 0.5}')
    cm = CostModel.load(p)
    assert cm.weights["Object"] == 2.5 and cm.weights["Task"] == 4.0 and cm.update_base == 0.5
    with pytest.raises(ValueError):
        CostModel({"Object": 0.0})


def test_goal_only_tree():
    spec = parse_problem(
        "(define (problem p) (:domain kitchen) (:objects (apple_1 apple) (plate_1 plate))"
        " (:goal (OnTop apple_1 plate_1)))"
    )
    t = task_to_tree(spec)
    assert t == N("Task", "kitchen", (N("Predicate", "OnTop", (N("Object", "apple"), N("Object", "plate"))),))


def test_cost_term_adds_constraint_child():
    base = "(define (problem p) (:domain k) (:objects (a_1 apple) (b_1 bowl)) (:goal (In a_1 b_1)) {})"
    t0 = task_to_tree(parse_problem(base.format("")))
    t1 = task_to_tree(parse_problem(base.format("(:cost (Fall b_1))")))
    assert len(t1.children) == len(t0.children) + 1
    assert t1.children[-1] == N("Constraint", "Fall", (N("Object", "bowl"),))


def test_region_rename_changes_one_leaf():
    a = parse_file(CORPUS / "dynamic_obstacles_1.cbddl")
    text = (CORPUS / "dynamic_obstacles_1.cbddl").read_text().replace("region_B", "region_C")
    b = parse_problem(text)
    ta, tb = task_to_tree(a), task_to_tree(b)

    def leaves(t):
        return [t] if not t.children else [x for c in t.children for x in leaves(c)]

    diff = [(x, y) for x, y in zip(leaves(ta), leaves(tb)) if x != y]
    assert len(leaves(ta)) == len(leaves(tb))
    assert all(x.type == "Region" and x.label == "region_B" and y.label == "region_C" for x, y in diff)
    assert diff and str(ta).replace("region_B", "region_C") == str(tb)


def test_verbs_come_from_instruction():
    t = task_to_tree(parse_file(CORPUS / "preposition_combinations_2.cbddl"))
    verbs = [c for c in t.children if c.type == "Verb"]
    assert [(v.label, [o.label for o in v.children]) for v in verbs] == [
        ("put", ["apple", "bowl"]),
        ("put", ["bowl", "plate"]),
    ]


def test_object_nodes_are_leaves():
    with pytest.raises(ValueError):
        N("Object", "apple", (N("Object", "x"),))


def _corpus_trees():
    return [task_to_tree(parse_file(p)) for p in corpus_files()]


def test_pseudometric_on_fixture_triples():
    m = pairwise_matrix(_corpus_trees(), CM)
    n = len(m)
    assert np.array_equal(m, m.T) and not np.diag(m).any() and (m >= 0).all()
    for i, j, k in itertools.product(range(n), repeat=3):
        assert m[i, k] <= m[i, j] + m[j, k] + 1e-12


def test_pairwise_identity_and_small_cases():
    t = task_to_tree(parse_file(CORPUS / "long_horizon_1.cbddl"))
    u = task_to_tree(parse_file(CORPUS / "unseen_objects_1.cbddl"))
    assert pairwise_matrix([t, t], CM).tolist() == [[0.0, 0.0], [0.0, 0.0]]
    m = pairwise_matrix([t, t, u], CM)
    assert m[0, 1] == 0.0 < m[0, 2] == m[1, 2]


def test_parallel_matches_serial():
    trees = _corpus_trees()
    assert np.array_equal(pairwise_matrix(trees, CM, workers=1), pairwise_matrix(trees, CM, workers=3))


def test_adding_a_child_is_bounded_by_its_weight():
    trees = _corpus_trees()
    extra = N("Constraint", "Fall", (N("Object", "vase"),))
    for a, b in zip(trees, trees[1:] + trees[:1]):
        grown = a.add(extra)
        before = tree_edit_distance(a, b, CM)
        after = tree_edit_distance(grown, b, CM)
        assert after >= before - (CM.weights["Constraint"] + CM.weights["Object"]) - 1e-12


def test_suites_cluster():
    files = corpus_files()
    m = pairwise_matrix(_corpus_trees(), CM)
    suite = [p.stem.rsplit("_", 1)[0] for p in files]
    same = [m[i, j] for i in range(len(files)) for j in range(i + 1, len(files)) if suite[i] == suite[j]]
    diff = [m[i, j] for i in range(len(files)) for j in range(i + 1, len(files)) if suite[i] != suite[j]]
    assert np.mean(same) < np.mean(diff)


def test_matrix_csv_roundtrip():
    m = np.array([[0.0, 1.5], [1.5, 0.0]])
    names, back = matrix_from_csv(matrix_to_csv(["a", "b"], m))
    assert names == ["a", "b"] and np.array_equal(back, m)
