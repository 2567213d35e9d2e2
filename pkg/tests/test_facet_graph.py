from itertools import combinations
from math import comb

import networkx as nx
import pytest
from hypothesis import given, strategies as st

from facetlab.complex import Chain
from facetlab.facet_graph import (
    FacetGraph,
    build_facet_graph,
    components_after_removal,
    connected_after_mixed_removal,
    graph_from_adjacency,
    hypersimplex_graph,
    two_coloring,
    vertex_connectivity,
)
from facetlab.generators import cross_polytope_cycle, torus_cycle


def test_octahedron_facet_graph_is_the_cube():
    g = build_facet_graph(cross_polytope_cycle(2, 3))
    assert g.order == 8 and g.size == 12
    assert set(g.degrees()) == {3}
    G = nx.Graph(list(g.edges))
    assert nx.is_isomorphic(G, nx.hypercube_graph(3))
    assert vertex_connectivity(g) == 3


def test_edge_labels_are_shared_faces():
    g = build_facet_graph([(1, 2, 3), (1, 2, 4), (3, 4, 5)])
    assert g.edges == {(0, 1): (1, 2)}
    assert g.vertices == ((1, 2, 3), (1, 2, 4), (3, 4, 5))


def test_mixed_dimensions_rejected():
    with pytest.raises(ValueError):
        build_facet_graph([(1, 2), (1, 2, 3)])


def test_chain_input_uses_support():
    z = Chain(1, {(1, 2): 1, (2, 3): 1, (1, 3): 2}, 3)
    assert build_facet_graph(z).order == 3


def test_single_vertex_and_empty_graphs():
    assert vertex_connectivity(build_facet_graph([(1, 2, 3)])) == 0
    assert vertex_connectivity(build_facet_graph([])) == 0


def test_loops_rejected():
    with pytest.raises(ValueError):
        FacetGraph((1,), {(0, 0): None})


def test_components_and_removal():
    g = build_facet_graph(cross_polytope_cycle(2, 3))
    color = two_coloring(g)
    cls = [i for i, c in enumerate(color) if c == 0]
    assert components_after_removal(g, cls) == 4
    assert components_after_removal(g, []) == 1
    assert vertex_connectivity(g, removed=cls[:1]) == 2


def test_mixed_removal_by_label():
    # two triangles sharing an edge: deleting the shared-face label disconnects them
    g = build_facet_graph([(1, 2, 3), (1, 2, 4)])
    assert connected_after_mixed_removal(g)
    assert not connected_after_mixed_removal(g, removed_labels=[(1, 2)])
    assert connected_after_mixed_removal(g, removed_vertices=[0])
    assert connected_after_mixed_removal(g, removed_vertices=[0, 1])


def test_two_coloring():
    assert two_coloring(build_facet_graph(torus_cycle(4, 3))) is not None
    assert two_coloring(build_facet_graph([(1, 2), (2, 3), (1, 3)])) is None


@pytest.mark.parametrize("n,k,want", [(5, 2, 6), (6, 3, 9), (4, 1, 3), (6, 2, 8), (7, 3, 12)])
def test_hypersimplex_connectivity_values(n, k, want):
    # [PAPER] (d+1)(n-d-1) with k = d+1
    g = hypersimplex_graph(n, k)
    assert g.order == comb(n, k)
    assert vertex_connectivity(g) == want == k * (n - k)


def test_hypersimplex_matches_johnson_graph():
    # [DERIVED] G(n,k) is the Johnson graph J(n,k): regular of degree k(n-k)
    g = hypersimplex_graph(6, 2)
    assert set(g.degrees()) == {2 * 4}
    with pytest.raises(ValueError):
        hypersimplex_graph(4, 4)


@given(st.integers(2, 9), st.data())
def test_components_match_networkx(n, data):
    pairs = list(combinations(range(n), 2))
    edges = data.draw(st.lists(st.sampled_from(pairs), unique=True))
    removed = data.draw(st.lists(st.integers(0, n - 1), unique=True, max_size=n))
    g = graph_from_adjacency(range(n), edges)
    G = nx.Graph()
    G.add_nodes_from(range(n))
    G.add_edges_from(edges)
    G.remove_nodes_from(removed)
    assert components_after_removal(g, removed) == nx.number_connected_components(G)


def test_csr_restricted_to_subset():
    g = graph_from_adjacency("abc", [("a", "b"), ("b", "c")])
    n, indptr, indices = g.csr([0, 1])
    assert n == 2 and indptr.tolist() == [0, 1, 2] and indices.tolist() == [1, 0]
    assert g.edge_pairs() == {frozenset("ab"), frozenset("bc")}
