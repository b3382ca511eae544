from itertools import combinations, permutations

import pytest
from hypothesis import given

from hadlab.corpus import enumerate_up_to
from hadlab.graph import Graph, canonical_key, complement, compose, induced_subgraph
from hadlab.invariants import chromatic_number, clique_number
from hadlab.patterns import (
    PATTERNS,
    ClassName,
    find_induced,
    find_odd_antihole,
    find_odd_hole,
    in_class,
    pattern,
)
import oracles
from strategies import graphs

C7 = Graph.cycle(7)
C7_BAR = complement(C7)
SMALL = list(enumerate_up_to(6))


def _is_embedding(g, p, emb):
    return len(set(emb)) == p.n and all(
        g.has_edge(emb[a], emb[b]) == p.has_edge(a, b) for a, b in combinations(range(p.n), 2)
    )


def test_registry_sanity():
    assert canonical_key(complement(PATTERNS["fork"])) == canonical_key(PATTERNS["antifork"])
    assert canonical_key(complement(PATTERNS["gem"])) == canonical_key(PATTERNS["cogem"])
    assert canonical_key(PATTERNS["coclaw"]) == canonical_key(compose(Graph.complete(3), Graph.complete(1)))
    assert [PATTERNS["fork"].degree(v) for v in range(5)] == [3, 1, 1, 1, 2]
    assert PATTERNS["w4"].degree(4) == 4 and PATTERNS["w4"].edge_count == 8
    assert PATTERNS["hvn"].edge_count == 8
    assert PATTERNS["k5_minus_e"].edge_count == 9
    assert pattern("k5-minus-e") is PATTERNS["k5_minus_e"]
    with pytest.raises(KeyError):
        pattern("petersen")


@given(graphs(max_n=6))
def test_find_induced_agrees_with_brute_force(g):
    for name in ("claw", "cogem", "fork", "p4", "k3"):
        p = PATTERNS[name]
        emb = find_induced(g, p)
        assert (emb is not None) == oracles.brute_find_induced(g, p)
        if emb is not None:
            assert _is_embedding(g, p, emb)


def test_find_induced_is_lexicographically_least():
    g = Graph.cycle(6)
    p = Graph.path(3)
    expected = min(e for e in permutations(range(6), 3) if _is_embedding(g, p, e))
    assert find_induced(g, p) == expected


def test_find_induced_examples():
    emb = find_induced(C7, PATTERNS["cogem"])
    assert emb == (0, 1, 2, 3, 5)
    assert find_induced(C7_BAR, PATTERNS["coclaw"]) is None
    assert find_induced(Graph.complete(3), Graph.complete(3)) == (0, 1, 2)
    assert find_induced(Graph.complete(3), Graph.complete(4)) is None


def test_find_induced_within():
    assert find_induced(C7, Graph.path(3), within=0b1010101) is None
    assert find_induced(C7, Graph.path(3), within=0b0001110) == (1, 2, 3)


def test_duality_over_small_graphs():
    for g in SMALL:
        cg = complement(g)
        for p in PATTERNS.values():
            assert (find_induced(g, p) is None) == (find_induced(cg, complement(p)) is None)


def test_odd_hole_examples():
    assert sorted(find_odd_hole(C7, 5)) == list(range(7))
    assert find_odd_hole(Graph.cycle(5), 7) is None
    assert find_odd_hole(Graph.from_edges(6, [(0, 3), (0, 4), (1, 4), (2, 5), (1, 5)]), 5) is None
    with pytest.raises(ValueError):
        find_odd_hole(C7, 6)


def test_odd_hole_is_shortest_and_induced():
    g = compose(Graph.cycle(7), Graph.cycle(5), "union")
    hole = find_odd_hole(g, 5)
    assert len(hole) == 5 and sorted(hole) == list(range(7, 12))


def test_odd_antihole_examples():
    x = find_odd_antihole(C7_BAR, 7)
    assert len(x) == 7
    for i in range(7):
        for j in range(i + 1, 7):
            cyclic_neighbours = (j - i) in (1, 6)
            assert C7_BAR.has_edge(x[i], x[j]) != cyclic_neighbours
    assert len(find_odd_antihole(Graph.cycle(5), 5)) == 5
    assert find_odd_antihole(Graph.complete(6), 5) is None


@given(graphs(max_n=8))
def test_odd_hole_detection_agrees_with_brute_force(g):
    assert (find_odd_hole(g, 5) is not None) == oracles.brute_has_odd_hole(g)
    assert (find_odd_antihole(g, 5) is not None) == oracles.brute_has_odd_hole(g, complement_graph=True)


def test_class_examples():
    assert in_class(C7_BAR, "coclaw_cogem_free")
    assert in_class(C7, ClassName.FORK_ANTIFORK_FREE)
    res = in_class(C7, "coclaw-cogem-free")
    assert not res and res.witness["pattern"] == "cogem"
    assert _is_embedding(C7, PATTERNS["cogem"], res.witness["embedding"])
    res = in_class(compose(Graph.cycle(5), C7), "componentwise_ccg_free")
    assert not res and res.witness["component"] == list(range(5, 12))
    assert in_class(compose(Graph.cycle(5), Graph.cycle(5)), "componentwise_ccg_free")
    assert not in_class(compose(Graph.cycle(5), Graph.cycle(5)), "coclaw_cogem_free")


def test_perfect_and_hole_classes():
    assert not in_class(Graph.cycle(5), "perfect")
    assert in_class(Graph.cycle(6), "perfect")
    assert not in_class(C7_BAR, "odd_antihole_free")
    assert in_class(C7_BAR, "odd_hole_free")
    assert not in_class(C7, "odd_hole_free") and in_class(C7, "odd_antihole_free")


def test_perfect_iff_chi_equals_omega_hereditarily():
    # the corpus is closed under induced subgraphs, so checking chi = omega on
    # every member covers the hereditary condition; a non-member's witness
    # is itself an induced subgraph with chi > omega
    for g in enumerate_up_to(7):
        res = in_class(g, "perfect")
        if res:
            assert clique_number(g).value == chromatic_number(g).value
        else:
            (vertices,) = res.witness.values()
            h = induced_subgraph(g, sum(1 << v for v in vertices))[0]
            assert chromatic_number(h).value > clique_number(h).value


def test_ccg_free_has_no_long_odd_hole():
    for g in enumerate_up_to(7):
        if in_class(g, "coclaw_cogem_free"):
            assert find_odd_hole(g, 7) is None


def test_class_name_parsing():
    assert ClassName.parse("Fork-Antifork-Free") is ClassName.FORK_ANTIFORK_FREE
    assert ClassName.COCLAW_COGEM_FREE.cli_name == "coclaw-cogem-free"
    with pytest.raises(ValueError):
        ClassName.parse("planar")
