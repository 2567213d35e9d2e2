from itertools import combinations
from math import comb

import numpy as np
import pytest
from hypothesis import given, strategies as st

from facetlab.complex import Chain, boundary_matrix, closure
from facetlab.generators import torus_cycle
from facetlab.linalg import (
    SparseMatrix,
    betti_reduced,
    compressed_family,
    cycle_space_dim,
    homologically_connected,
    kernel_basis,
    kernel_dense,
    max_cycle_dim_bruteforce,
    rank,
    rank_dense,
    solve,
)

from oracles import naive_rank

# 6-vertex projective plane: every edge lies in two triangles, Euler characteristic 1
RP2 = [(1, 2, 4), (1, 2, 6), (1, 3, 5), (1, 3, 6), (1, 4, 5), (2, 3, 4), (2, 3, 5), (2, 5, 6), (3, 4, 6), (4, 5, 6)]


@st.composite
def matrices(draw):
    p = draw(st.sampled_from([2, 3, 5, 7, 101]))
    m = draw(st.integers(1, 7))
    n = draw(st.integers(1, 7))
    rows = draw(st.lists(st.lists(st.integers(0, p - 1), min_size=n, max_size=n), min_size=m, max_size=m))
    return np.array(rows, dtype=np.int64), p


@given(matrices())
def test_rank_matches_schoolbook_elimination(mp):
    A, p = mp
    assert rank_dense(A, p) == naive_rank(A.tolist(), p)


@given(matrices())
def test_kernel_is_annihilated_and_has_right_dimension(mp):
    A, p = mp
    K = kernel_dense(A, p)
    assert len(K) == A.shape[1] - naive_rank(A.tolist(), p)
    if len(K):
        assert not np.any(A @ K.T % p)
        assert naive_rank(K.tolist(), p) == len(K)


@given(matrices(), st.data())
def test_solve_finds_preimages(mp, data):
    A, p = mp
    x = np.array(data.draw(st.lists(st.integers(0, p - 1), min_size=A.shape[1], max_size=A.shape[1])))
    b = A @ x % p
    rows = [(i + 1,) for i in range(A.shape[0])]
    cols = [(i + 1, 100) for i in range(A.shape[1])]
    m = SparseMatrix.from_dense(A, rows, cols, p)
    rhs = Chain(0, {rows[i]: int(b[i]) for i in range(len(rows))}, p)
    sol = solve(m, rhs)
    assert sol is not None
    assert m.matvec(sol) == rhs


def test_solve_reports_inconsistency():
    m = SparseMatrix.from_dense([[1, 1], [1, 1]], [(1,), (2,)], [(1, 9), (2, 9)], 3)
    assert solve(m, Chain(0, {(1,): 1, (2,): 2}, 3)) is None
    assert solve(m, Chain(0, {(5,): 1}, 3)) is None


def test_sparse_matrix_validation_and_helpers():
    with pytest.raises(IndexError):
        SparseMatrix([0], [0], {(1, 0): 1}, 2)
    m = SparseMatrix.from_dense([[1, 0, 2], [0, 3, 0]], p=5)
    assert m.shape == (2, 3)
    assert m.transpose().to_dense().tolist() == [[1, 0], [0, 3], [2, 0]]
    assert m.select_columns([0, 2]).to_dense().tolist() == [[1, 2], [0, 0]]
    assert rank(m) == 2


def test_tree_has_no_cycles():
    # [TRIVIAL] a tree on 4 vertices is acyclic
    k = closure([(1, 2), (2, 3), (2, 4)])
    assert kernel_basis(boundary_matrix(k, 1, 2)).dim == 0
    assert cycle_space_dim([(1, 2), (2, 3), (2, 4)]) == 0


def test_triangle_boundary_is_one_cycle():
    basis = kernel_basis(boundary_matrix(closure([(1, 2), (1, 3), (2, 3)]), 1, 3))
    assert basis.dim == 1
    z = basis.vectors[0]
    assert z.terms in ({(1, 2): 1, (1, 3): 2, (2, 3): 1}, {(1, 2): 2, (1, 3): 1, (2, 3): 2})


@pytest.mark.parametrize("p", [2, 3, 5])
def test_betti_numbers_of_spheres(p):
    # [DERIVED] boundary of a simplex is a sphere: only the top reduced Betti number is 1
    for d in range(1, 4):
        k = closure(combinations(range(1, d + 3), d + 1))
        assert [betti_reduced(k, i, p) for i in range(-1, d + 1)] == [0] * (d + 1) + [1]


def test_betti_of_empty_complex_and_point():
    assert betti_reduced(closure([]), -1) == 1
    assert betti_reduced(closure([(1,)]), -1) == 0
    assert betti_reduced(closure([(1,)]), 0) == 0
    assert betti_reduced(closure([(1,), (2,)]), 0) == 1
    with pytest.raises(ValueError):
        betti_reduced(closure([(1,)]), -2)


def test_projective_plane_depends_on_the_field():
    # [DERIVED] RP^2 has 2-torsion: H_1 = Z/2, so only GF(2) sees it
    k = closure(RP2)
    assert [betti_reduced(k, i, 2) for i in (0, 1, 2)] == [0, 1, 1]
    assert [betti_reduced(k, i, 3) for i in (0, 1, 2)] == [0, 0, 0]


def test_torus_homology():
    # [DERIVED] torus: reduced Betti numbers (0, 2, 1)
    k = closure(torus_cycle(4, 3).support())
    assert [betti_reduced(k, i, 3) for i in (0, 1, 2)] == [0, 2, 1]
    assert [betti_reduced(k, i, 2) for i in (0, 1, 2)] == [0, 2, 1]


@given(st.lists(st.lists(st.integers(1, 6), min_size=1, max_size=4, unique=True), min_size=1, max_size=6),
       st.sampled_from([2, 3, 5]))
def test_euler_poincare(raw, p):
    k = closure([tuple(sorted(f)) for f in raw])
    chi_faces = sum((-1) ** d * len(k.faces[d]) for d in k.faces)
    chi_betti = sum((-1) ** d * betti_reduced(k, d, p) for d in k.faces)
    assert chi_faces == chi_betti


def test_homologically_connected():
    assert homologically_connected(closure(combinations(range(1, 5), 3)), 1)
    assert not homologically_connected(closure([(1, 2), (3, 4)]), 0)


@pytest.mark.parametrize("n", range(2, 8))
def test_full_skeleton_cycle_space(n):
    # [PAPER] the full r-skeleton carries C(n-1, r+1) independent r-cycles
    for r in range(0, n - 1):
        assert cycle_space_dim(combinations(range(1, n + 1), r + 1)) == comb(n - 1, r + 1)


def test_compressed_orders():
    assert compressed_family(4, 1, 3, "colex") == [(1, 2), (1, 3), (2, 3)]
    assert compressed_family(4, 1, 3, "revlex") == [(3, 4), (2, 4), (2, 3)]
    with pytest.raises(ValueError):
        compressed_family(4, 1, 3, "other")
    with pytest.raises(ValueError):
        compressed_family(4, 1, 7)


def test_bruteforce_oracle_small_values():
    # [DERIVED] best 3 edges: a triangle (one cycle); best 4 edges on 4 vertices: still one
    assert max_cycle_dim_bruteforce(4, 1, 3) == 1
    assert max_cycle_dim_bruteforce(4, 1, 4) == 1
    assert max_cycle_dim_bruteforce(4, 1, 6) == 3
