import random

import pytest

from hadlab.constructors import (
    NeighborType5,
    NeighborTypeAnti,
    classify_antihole_neighbor,
    classify_c5_neighbor,
    construct_semismall_model_faf,
    construct_small_model_ccg,
    join_combine_models,
)
from hadlab.corpus import enumerate_up_to, random_cograph
from hadlab.errors import ClassViolation, PreconditionViolated, TooLarge
from hadlab.graph import Graph, complement, compose
from hadlab.invariants import chromatic_number
from hadlab.models import MinorModel, ModelClass, verify_model
from hadlab.patterns import PATTERNS, find_induced, in_class

C5 = Graph.cycle(5)
C7 = Graph.cycle(7)
C7_BAR = complement(C7)
W5 = compose(C5, Graph.complete(1), "join")
X5 = (0, 1, 2, 3, 4)


def _with_vertex(g: Graph, nbrs) -> Graph:
    return Graph.from_edges(g.n + 1, g.edges() + [(v, g.n) for v in nbrs])


def _check(g, model, bound):
    report = verify_model(g, model)
    assert report.valid
    assert report.classification.within(bound)
    assert model.size >= chromatic_number(g).value


# neighbour classification ---------------------------------------------------

def test_c5_neighbour_types():
    # x_1..x_5 are vertices 0..4; indices are reported 1-based
    assert classify_c5_neighbor(_with_vertex(C5, [0, 2]), X5, 5) == NeighborType5("a", 1)
    assert classify_c5_neighbor(_with_vertex(C5, [1, 2, 4]), X5, 5) == NeighborType5("b", 2)
    assert classify_c5_neighbor(_with_vertex(C5, range(5)), X5, 5) == NeighborType5("c")


def test_c5_neighbour_violation_carries_cogem():
    g = _with_vertex(C5, [0])
    with pytest.raises(ClassViolation) as info:
        classify_c5_neighbor(g, X5, 5)
    evidence = info.value.evidence
    assert evidence["pattern"] == "cogem"
    assert sorted(evidence["embedding"]) == [1, 2, 3, 4, 5]


def test_antihole_neighbour_types():
    x = tuple(range(7))
    everything = set(range(7))
    assert classify_antihole_neighbor(_with_vertex(C7_BAR, x), x, 7) == NeighborTypeAnti("full")
    # x_2, x_3 are vertices 1, 2
    g = _with_vertex(C7_BAR, everything - {1, 2})
    assert classify_antihole_neighbor(g, x, 7) == NeighborTypeAnti("minus_pair", 2)
    g = _with_vertex(C7_BAR, everything - {3, 4, 5})
    assert classify_antihole_neighbor(g, x, 7) == NeighborTypeAnti("minus_triple", 4)


def test_antihole_neighbour_missing_four_consecutive_is_rejected():
    x = tuple(range(7))
    g = _with_vertex(C7_BAR, {4, 5, 6})
    with pytest.raises(ClassViolation):
        classify_antihole_neighbor(g, x, 7)


def test_antihole_order_validation():
    with pytest.raises(ValueError):
        classify_antihole_neighbor(C5, X5, 0)


# small models --------------------------------------------------------------

def test_ccg_antihole_example():
    model, trace = construct_small_model_ccg(C7_BAR)
    assert model.as_lists() == [[6], [0, 3], [1, 4], [2, 5]]
    assert trace.rules() == ["antihole-deletion", "perfect-base"]
    _check(C7_BAR, model, ModelClass.SMALL)


def test_ccg_complete_graph():
    model, trace = construct_small_model_ccg(Graph.complete(5))
    assert model.as_lists() == [[0], [1], [2], [3], [4]]
    assert trace.rules() == ["perfect-base"]


def test_ccg_c5():
    model, trace = construct_small_model_ccg(C5)
    assert model.size == 3
    assert trace.rules() == ["c5-deletion", "perfect-base"]
    _check(C5, model, ModelClass.SMALL)


def test_ccg_twin_deletion():
    # a type-a vertex on x_1, x_3 is a false twin of x_2
    g = _with_vertex(C5, [0, 2])
    model, trace = construct_small_model_ccg(g)
    assert trace.steps[0].rule == "twin-deletion"
    assert trace.steps[0].vertices == (5, 1)
    _check(g, model, ModelClass.SMALL)


def test_ccg_rejects_out_of_class():
    with pytest.raises(ClassViolation) as info:
        construct_small_model_ccg(C7)
    assert info.value.evidence["pattern"] == "cogem"


def test_ccg_size_limit():
    with pytest.raises(TooLarge):
        construct_small_model_ccg(Graph.complete(15))


def test_ccg_soundness_and_determinism_n6():
    for g in enumerate_up_to(6):
        if not in_class(g, "coclaw_cogem_free"):
            continue
        model, trace = construct_small_model_ccg(g)
        _check(g, model, ModelClass.SMALL)
        assert len(trace) <= g.n
        again = construct_small_model_ccg(g)
        assert again[0] == model and again[1] == trace


# join combination ------------------------------------------------------------

def test_join_of_cliques():
    a = MinorModel.from_lists(Graph.complete(2), [[0], [1]])
    b = MinorModel.from_lists(Graph.complete(3), [[0], [1], [2]])
    out = join_combine_models(a, b)
    assert out.host == Graph.complete(5)
    assert out.as_lists() == [[0], [1], [2], [3], [4]]


def test_join_c5_with_k1_gives_w5_model():
    a = MinorModel.from_lists(C5, [[0, 1], [2, 3], [4]])
    b = MinorModel.from_lists(Graph.complete(1), [[0]])
    out = join_combine_models(a, b)
    assert out.size == 4 and out.host == W5
    assert verify_model(W5, out).valid
    assert chromatic_number(W5).value == 4


def test_join_pairs_two_big_sets():
    a = MinorModel.from_lists(C7, [[0, 1, 2, 3, 4], [5], [6]])
    b = MinorModel.from_lists(Graph.path(4), [[0, 1, 2, 3]])
    out = join_combine_models(a, b)
    assert out.size == (3 - 1) + (1 - 1) + 2
    assert out.as_lists()[-2:] == [[0, 7], [1, 8]]
    report = verify_model(out.host, out)
    assert report.valid and report.classification is ModelClass.SMALL


def test_join_preconditions():
    general = MinorModel.from_lists(Graph.path(6), [[0, 1, 2], [3, 4, 5]])
    k1 = MinorModel.from_lists(Graph.complete(1), [[0]])
    with pytest.raises(PreconditionViolated):
        join_combine_models(general, k1)
    late_big = MinorModel.from_lists(C7, [[5], [0, 1, 2, 3, 4], [6]])
    with pytest.raises(PreconditionViolated):
        join_combine_models(k1, late_big)


# semi-small models ----------------------------------------------------------

def test_faf_w5_uses_join():
    model, trace = construct_semismall_model_faf(W5)
    assert trace.rules()[0] == "join-combine"
    assert model.size == 4 == chromatic_number(W5).value
    _check(W5, model, ModelClass.SEMI_SMALL)


def test_faf_c7_line_graph_base():
    model, trace = construct_semismall_model_faf(C7)
    assert trace.rules() == ["line-graph-base"]
    lists = model.as_lists()
    assert len(lists) == 3 and len(lists[0]) == 5
    assert sorted(len(s) for s in lists[1:]) == [1, 1]
    _check(C7, model, ModelClass.SEMI_SMALL)


def test_faf_cographs_use_only_decomposition_rules():
    rng = random.Random(7)
    for _ in range(40):
        g = random_cograph(rng, rng.randint(0, 9))
        assert find_induced(g, PATTERNS["p4"]) is None
        model, trace = construct_semismall_model_faf(g)
        assert set(trace.all_rules()) <= {"component", "join-combine", "simplicial-clique"}
        assert model.size == chromatic_number(g).value
        _check(g, model, ModelClass.SEMI_SMALL)


def test_faf_rejects_fork():
    with pytest.raises(ClassViolation):
        construct_semismall_model_faf(PATTERNS["fork"])


def test_faf_soundness_and_determinism_n6():
    for g in enumerate_up_to(6):
        if not in_class(g, "fork_antifork_free"):
            continue
        model, trace = construct_semismall_model_faf(g)
        _check(g, model, ModelClass.SEMI_SMALL)
        assert len(trace) <= g.n
        assert construct_semismall_model_faf(g) == (model, trace)


def test_trace_json_nests_join_children():
    _, trace = construct_semismall_model_faf(W5)
    data = trace.to_json()
    assert data[0]["rule"] == "join-combine" and len(data[0]["children"]) == 2

