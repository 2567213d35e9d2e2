from itertools import combinations
from math import comb

import networkx as nx
import pytest
from hypothesis import given, strategies as st

from facetlab.complex import Chain, boundary, coboundary
from facetlab.facet_graph import build_facet_graph, vertex_connectivity
from facetlab.structures import (
    Hypertree,
    InstanceTooLarge,
    NotAHypertree,
    biconnected_classes,
    cap,
    complement,
    contains_hypertree,
    d_faces,
    double_dual_sign,
    dual,
    dual_sign,
    enumerate_circuits,
    enumerate_hypercuts,
    fundamental_cycle,
    hypertree_greedy,
    is_cycle,
    is_hypercut,
    is_hypertree,
    is_simple_cycle,
    perturbed_hypertree,
    random_hypertree,
    star_hypercut,
    star_hypertree,
)
from facetlab.generators import random_simple_cycle


# -- hypertrees ---------------------------------------------------------------

@pytest.mark.parametrize("n,d", [(4, 1), (5, 2), (6, 2), (6, 3), (7, 3)])
def test_tree_constructors_have_the_right_size(n, d):
    for t in (star_hypertree(n, d), hypertree_greedy(n, d), perturbed_hypertree(n, d), random_hypertree(n, d, 3, 7)):
        assert len(t) == comb(n - 1, d)
        assert is_hypertree(t.simplices, n, d, t.p)


def test_star_tree_uses_the_last_vertex():
    t = star_hypertree(5, 2)
    assert all(5 in s for s in t.simplices)


@pytest.mark.parametrize("n", [4, 5])
def test_spanning_tree_count_matches_cayley(n):
    # [DERIVED] Cayley: K_n has n^(n-2) spanning trees
    edges = d_faces(n, 1)
    count = sum(is_hypertree(S, n, 1, 3) for S in combinations(edges, n - 1))
    assert count == n ** (n - 2)


def test_hypertree_validation():
    with pytest.raises(NotAHypertree):
        Hypertree(4, 1, ((1, 2), (2, 3)))
    with pytest.raises(NotAHypertree):
        Hypertree(4, 1, ((1, 2), (2, 3), (1, 3)))


@pytest.mark.parametrize("d", [1, 2, 3])
def test_perturbed_tree_new_simplex_has_degree_d(d):
    n = d + 3
    t = perturbed_hypertree(n, d)
    g = build_facet_graph(t.simplices)
    assert g.degree(g.index(tuple(range(1, d + 2)))) == d


def test_cap_and_fundamental_cycle():
    t = star_hypertree(5, 2, 3)
    sigma = (1, 2, 3)
    c = cap(t, sigma)
    assert c.support() <= set(t.simplices)
    assert boundary(c) == boundary(Chain.of(sigma, 1, 3))
    z = fundamental_cycle(t, sigma)
    assert is_simple_cycle(z)
    assert z.support() == {(1, 2, 3), (1, 2, 5), (1, 3, 5), (2, 3, 5)}
    with pytest.raises(ValueError):
        cap(t, (1, 2, 5))


@given(st.integers(0, 10_000), st.sampled_from([(5, 1), (6, 2), (7, 2), (7, 3)]), st.sampled_from([2, 3, 5]))
def test_fundamental_cycles_are_simple(seed, nd, p):
    n, d = nd
    z = random_simple_cycle(n, d, p, seed)
    assert is_simple_cycle(z)
    assert len(z) >= d + 2


# -- cycles -------------------------------------------------------------------

def test_simple_cycle_predicate():
    tri = boundary(Chain.of((1, 2, 3), 1, 3))
    other = boundary(Chain.of((4, 5, 6), 1, 3))
    assert is_simple_cycle(tri)
    assert not is_simple_cycle(tri + other)
    assert is_cycle(tri + other)
    assert not is_simple_cycle(Chain.zero(1, 3))
    assert not is_simple_cycle(Chain.of((1, 2), 1, 3))


def test_circuits_of_k4_and_k5_match_networkx():
    # [DERIVED] circuits of the graphic matroid are the graph's cycles
    for n in (4, 5):
        got = {z.support() for z in enumerate_circuits(d_faces(n, 1), 3)}
        want = {
            frozenset(tuple(sorted((c[i] + 1, c[(i + 1) % len(c)] + 1))) for i in range(len(c)))
            for c in nx.simple_cycles(nx.complete_graph(n))
        }
        assert got == want
    assert len(enumerate_circuits(d_faces(4, 1), 2)) == 7


def test_circuits_of_a_sphere():
    zs = enumerate_circuits(d_faces(4, 2), 5)
    assert len(zs) == 1 and len(zs[0]) == 4 and is_cycle(zs[0])


def test_circuit_enumeration_cap():
    with pytest.raises(InstanceTooLarge):
        enumerate_circuits(d_faces(7, 2), 2)


def test_biconnected_classes():
    # bowtie of two triangles plus a pendant edge
    faces = [(1, 2), (1, 3), (2, 3), (3, 4), (3, 5), (4, 5), (5, 6)]
    classes = biconnected_classes(faces, 3)
    assert classes == [
        frozenset({(1, 2), (1, 3), (2, 3)}),
        frozenset({(3, 4), (3, 5), (4, 5)}),
        frozenset({(5, 6)}),
    ]


# -- hypercuts ----------------------------------------------------------------

@pytest.mark.parametrize("n", [4, 5, 6])
def test_graph_cuts_of_complete_graph(n):
    # [DERIVED] every bipartition of K_n is a bond: 2^(n-1) - 1 of them
    cuts = enumerate_hypercuts(n, 1, 3)
    assert len(cuts) == 2 ** (n - 1) - 1
    assert all(is_hypercut(h, n) for h in cuts)


@pytest.mark.parametrize("n,d", [(5, 1), (5, 2), (6, 2), (7, 3), (8, 4)])
def test_star_hypercut_is_a_clique(n, d):
    tau = tuple(range(1, d + 1))
    h = star_hypercut(tau, n, 3)
    assert len(h) == n - d
    assert h == coboundary(Chain.of(tau, 1, 3), n)
    assert is_hypercut(h, n)
    g = build_facet_graph(h)
    assert g.size == comb(n - d, 2) and vertex_connectivity(g) == n - d - 1


def test_every_hypercut_hits_every_hypertree():
    n, d = 6, 2
    faces = d_faces(n, d)
    for h in enumerate_hypercuts(n, d, 2):
        rest = [s for s in faces if s not in h.support()]
        assert not contains_hypertree(rest, n, d, 2)


def test_non_minimal_cocycle_is_not_a_hypercut():
    h = star_hypercut((1, 2), 6, 3) + star_hypercut((4, 5), 6, 3)
    assert not coboundary(h, 6)
    assert not is_hypercut(h, 6)


# -- duality ------------------------------------------------------------------

def test_complement_and_sign():
    assert complement((1, 3), 5) == (2, 4, 5)
    assert dual_sign((1, 3)) == 1 and dual_sign((2,)) == -1 and dual_sign(()) == 1


def test_dual_dimension_and_double_dual():
    z = Chain(1, {(1, 2): 1, (2, 4): 2}, 5)
    zs = dual(z, 5)
    assert zs.dim == 2
    assert dual(zs, 5) == double_dual_sign(5) * z
    with pytest.raises(ValueError):
        dual(z, 3)


@pytest.mark.parametrize("n", range(1, 10))
def test_double_dual_sign_formula(n):
    # sign of complementing twice, computed term by term
    s = (1,) if n >= 1 else ()
    direct = dual_sign(s) * dual_sign(complement(s, n))
    assert double_dual_sign(n) == direct
    assert double_dual_sign(n) == (-1) ** (comb(n + 1, 2) - n)


@given(st.integers(0, 1000), st.sampled_from([(5, 1), (6, 2), (6, 1), (7, 2)]))
def test_dual_of_simple_cycle_is_hypercut(seed, nd):
    n, d = nd
    z = random_simple_cycle(n, d, 3, seed)
    assert is_hypercut(dual(z, n), n)
