import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hadlab.errors import MalformedGraph6, MalformedInput, SizeOverflow, TooLargeForCanonical
from hadlab.graph import (
    Graph,
    Multigraph,
    canonical_form,
    canonical_key,
    complement,
    compose,
    connected_components,
    format_edge_list,
    format_multigraph_edge_list,
    graph6_decode,
    graph6_encode,
    induced_subgraph,
    is_isomorphic,
    line_graph,
    parse_edge_list,
    parse_multigraph_edge_list,
    relabel,
)
from oracles import brute_canonical
from strategies import graphs, relabelings


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def test_constructors_shapes():
    assert Graph.complete(5).edge_count == 10
    assert Graph.cycle(7).edge_count == 7
    assert all(Graph.cycle(7).degree(v) == 2 for v in range(7))
    assert Graph.star(3).degree(0) == 3
    assert Graph.path(4).edges() == [(0, 1), (1, 2), (2, 3)]


def test_invalid_adjacency_rejected():
    with pytest.raises(ValueError):
        Graph(2, (0b10, 0))  # asymmetric
    with pytest.raises(ValueError):
        Graph(1, (1,))  # loop
    with pytest.raises(ValueError):
        Graph.from_edges(3, [(0, 3)])
    with pytest.raises(SizeOverflow):
        Graph.empty(33)


def test_complement_of_c5_is_c5():
    assert is_isomorphic(complement(Graph.cycle(5)), Graph.cycle(5))


def test_compose_union_and_join():
    u = compose(Graph.complete(2), Graph.complete(3), "union")
    assert u.n == 5 and u.edge_count == 4
    assert len(connected_components(u)) == 2
    j = compose(Graph.complete(2), Graph.complete(3), "join")
    assert j == Graph.complete(5)
    with pytest.raises(SizeOverflow):
        compose(Graph.empty(20), Graph.empty(13))
    with pytest.raises(ValueError):
        compose(Graph.empty(1), Graph.empty(1), "product")


def test_induced_subgraph_labels():
    g = Graph.cycle(6)
    sub, labels = induced_subgraph(g, 0b010111)
    assert labels == (0, 1, 2, 4)
    assert sub.edges() == [(0, 1), (1, 2)]


def test_components_ordered_by_min_vertex():
    g = Graph.from_edges(6, [(4, 5), (1, 3)])
    assert connected_components(g) == [0b1, 0b1010, 0b100, 0b110000]


def test_line_graph_of_triangle_and_star():
    tri = Multigraph.from_pairs(3, [(0, 1), (1, 2), (0, 2)])
    assert line_graph(tri)[0] == Graph.complete(3)
    star = Multigraph.from_pairs(4, [(0, 1), (0, 2), (0, 3)])
    assert line_graph(star)[0] == Graph.complete(3)
    double = Multigraph.from_pairs(3, [(0, 1), (0, 1), (1, 2)])
    g, inst = line_graph(double)
    assert g == Graph.complete(3) and inst == ((0, 1), (0, 1), (1, 2))


def test_multigraph_properties():
    h = Multigraph.from_pairs(4, [(0, 1), (0, 1), (1, 2), (2, 3)])
    assert h.max_multiplicity == 2
    assert not h.is_simple() and h.is_triangle_free()
    assert Multigraph.from_pairs(3, [(0, 1), (1, 2), (0, 2)]).is_triangle_free() is False


# graph6 -------------------------------------------------------------------

@given(graphs(max_n=12))
def test_graph6_matches_networkx(g):
    text = graph6_encode(g)
    assert nx.to_graph6_bytes(to_nx(g), header=False).decode().strip() == text
    assert graph6_decode(text) == g


def test_graph6_known_strings():
    assert graph6_encode(Graph.empty(0)) == "?"
    assert graph6_encode(Graph.complete(1)) == "@"
    assert graph6_decode(">>graph6<<A_") == Graph.complete(2)


@pytest.mark.parametrize("bad", ["", "A", "B~~", "A\x01", "~", "\x7f?"])
def test_graph6_malformed(bad):
    with pytest.raises(MalformedGraph6):
        graph6_decode(bad)


# edge lists -----------------------------------------------------------------

def test_edge_list_round_trip():
    g = Graph.cycle(5)
    text = format_edge_list(g)
    assert parse_edge_list("# a comment\n" + text) == g


def test_multigraph_edge_list_round_trip():
    h = Multigraph.from_pairs(3, [(0, 1), (0, 1), (1, 2)])
    assert parse_multigraph_edge_list(format_multigraph_edge_list(h)) == h


@pytest.mark.parametrize("text", ["", "3 1\n", "3 1\n0 x\n", "3 1\n0 0\n", "2 1\n0 5\n"])
def test_edge_list_malformed(text):
    with pytest.raises(MalformedInput):
        parse_edge_list(text)


# canonical form -------------------------------------------------------------

@given(st.data())
def test_canonical_key_invariant_under_relabeling(data):
    g = data.draw(graphs(max_n=8))
    order = data.draw(relabelings(g))
    assert canonical_key(relabel(g, order)) == canonical_key(g)


@given(graphs(max_n=6), graphs(max_n=6))
def test_canonical_key_agrees_with_networkx(a, b):
    same = a.n == b.n and nx.is_isomorphic(to_nx(a), to_nx(b))
    assert (canonical_key(a) == canonical_key(b)) == same


@given(graphs(max_n=5))
def test_canonical_form_is_isomorphic_and_stable(g):
    c = canonical_form(g)
    assert brute_canonical(c) == brute_canonical(g)
    assert canonical_form(c) == c


def test_canonical_limit():
    with pytest.raises(TooLargeForCanonical):
        canonical_key(Graph.empty(11))
