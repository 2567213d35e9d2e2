import os
import subprocess
import sys
from itertools import combinations

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, strategies as st

from facetlab import _kernels
from facetlab.facet_graph import build_facet_graph, graph_from_adjacency, hypersimplex_graph, vertex_connectivity

from oracles import naive_rank

BACKENDS = ["numpy"] + (["numba"] if _kernels.HAS_NUMBA else [])


@st.composite
def matrices(draw, max_rows=6, max_cols=8):
    p = draw(st.sampled_from([2, 3, 5, 7]))
    m = draw(st.integers(1, max_rows))
    n = draw(st.integers(1, max_cols))
    rows = draw(st.lists(st.lists(st.integers(0, p - 1), min_size=n, max_size=n), min_size=m, max_size=m))
    return np.array(rows, dtype=np.int64), p


@st.composite
def graphs(draw):
    n = draw(st.integers(0, 11))
    pairs = list(combinations(range(n), 2))
    edges = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))) if pairs else []
    return n, edges


@given(matrices())
def test_rref_backends_agree(mp):
    A, p = mp
    results = []
    for b in BACKENDS:
        R = A.copy()
        r, piv = _kernels.rref(R, p, backend=b)
        results.append((r, piv.tolist(), R.tolist()))
    assert all(x == results[0] for x in results)
    assert results[0][0] == naive_rank(A.tolist(), p)


def test_rref_produces_reduced_form():
    A = np.array([[2, 4, 1], [1, 2, 0], [0, 0, 3]], dtype=np.int64)
    for b in BACKENDS:
        R = A.copy()
        r, piv = _kernels.rref(R, 5, backend=b)
        assert r == 2 and piv.tolist() == [0, 2]
        assert R[:2].tolist() == [[1, 2, 0], [0, 0, 1]]


def _circuit_supports_bruteforce(A, p):
    n = A.shape[1]
    out = set()
    for k in range(1, n + 1):
        for S in combinations(range(n), k):
            if naive_rank(A[:, S].T.tolist(), p) != k - 1:
                continue
            if all(naive_rank(A[:, [j for j in S if j != i]].T.tolist(), p) == k - 1 for i in S):
                out.add(S)
    return out


@given(matrices(max_rows=4, max_cols=7))
def test_circuit_search_matches_bruteforce(mp):
    A, p = mp
    expect = _circuit_supports_bruteforce(A, p)
    for b in BACKENDS:
        masks, coefs = _kernels.circuit_search(A.copy(), p, backend=b)
        got = {tuple(np.flatnonzero(row).tolist()) for row in coefs}
        assert got == expect
        assert len(masks) == len(expect)
        for row in coefs:
            assert not np.any(A @ row % p)
            assert row[np.flatnonzero(row)[0]] == 1


def _nx_graph(n, edges):
    G = nx.Graph()
    G.add_nodes_from(range(n))
    G.add_edges_from(edges)
    return G


def _nx_kappa(G):
    n = G.number_of_nodes()
    if n <= 1:
        return 0
    if G.number_of_edges() == n * (n - 1) // 2:
        return n - 1
    return nx.node_connectivity(G)


@given(graphs())
def test_vertex_connectivity_matches_networkx(ng):
    n, edges = ng
    g = graph_from_adjacency(range(n), edges)
    want = _nx_kappa(_nx_graph(n, edges))
    for b in BACKENDS:
        _, indptr, indices = g.csr()
        assert _kernels.vertex_connectivity_csr(n, indptr, indices, backend=b) == want


@pytest.mark.parametrize("m", range(0, 7))
def test_complete_graph_convention(m):
    g = graph_from_adjacency(range(m), combinations(range(m), 2))
    assert vertex_connectivity(g) == max(m - 1, 0)


def test_named_graphs_match_networkx():
    for G in (nx.petersen_graph(), nx.hypercube_graph(4), nx.cycle_graph(9), nx.wheel_graph(7)):
        G = nx.convert_node_labels_to_integers(G)
        g = graph_from_adjacency(range(G.number_of_nodes()), G.edges())
        assert vertex_connectivity(g) == nx.node_connectivity(G)


def test_hypersimplex_agrees_with_networkx():
    g = hypersimplex_graph(6, 3)
    G = _nx_graph(g.order, g.edges)
    assert vertex_connectivity(g) == nx.node_connectivity(G) == 9


def test_env_flag_selects_numpy_backend():
    env = dict(os.environ, FACETLAB_DISABLE_NUMBA="1")
    out = subprocess.run(
        [sys.executable, "-c", "from facetlab import _kernels; print(_kernels.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "numpy"


def test_unknown_backend_rejected():
    with pytest.raises(KeyError):
        _kernels.rref(np.zeros((1, 1), dtype=np.int64), 2, backend="cuda")


def test_facet_graph_kappa_same_on_both_backends():
    from facetlab.generators import torus_cycle

    g = build_facet_graph(torus_cycle(6, 3))
    _, indptr, indices = g.csr()
    assert {_kernels.vertex_connectivity_csr(g.order, indptr, indices, backend=b) for b in BACKENDS} == {3}
