"""Hypertrees, caps, simple cycles, hypercuts, duality and small matroid enumeration."""
from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .complex import Chain, Simplex, boundary, boundary_matrix, closure, coboundary
from .linalg import kernel_dense, rank_dense, solve

CIRCUIT_LIMIT = 22


class InstanceTooLarge(ValueError):
    pass


class NotAHypertree(ValueError):
    pass


def d_faces(n: int, d: int) -> list[Simplex]:
    return list(combinations(range(1, n + 1), d + 1))


def _columns(faces: Sequence[Simplex], p: int) -> tuple[np.ndarray, list[Simplex]]:
    """Dense boundary columns of ``faces`` (rows: their (d-1)-faces, lexicographic)."""
    faces = list(faces)
    rows = sorted({s[:i] + s[i + 1:] for s in faces for i in range(len(s))})
    index = {f: i for i, f in enumerate(rows)}
    A = np.zeros((len(rows), len(faces)), dtype=np.int64)
    for j, s in enumerate(faces):
        for i in range(len(s)):
            A[index[s[:i] + s[i + 1:]], j] = (p - 1) if i % 2 else 1
    return A, rows


# ---------------------------------------------------------------------------
# Hypertrees and fundamental cycles
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Hypertree:
    n: int
    d: int
    simplices: tuple
    p: int = 2

    def __post_init__(self):
        simplices = tuple(sorted(set(map(tuple, self.simplices))))
        object.__setattr__(self, "simplices", simplices)
        expected = comb(self.n - 1, self.d)
        if len(simplices) != expected:
            raise NotAHypertree(f"{len(simplices)} simplices, a {self.d}-hypertree on {self.n} vertices has {expected}")
        if any(len(s) != self.d + 1 or s[-1] > self.n for s in simplices):
            raise NotAHypertree("simplices of the wrong dimension or outside [n]")
        A, _ = _columns(simplices, self.p)
        if rank_dense(A, self.p) != expected:
            raise NotAHypertree("simplices are not acyclic")

    def __contains__(self, s) -> bool:
        return tuple(s) in set(self.simplices)

    def __len__(self) -> int:
        return len(self.simplices)


def hypertree_greedy(n: int, d: int, p: int = 2, seed: int | None = None) -> Hypertree:
    """Scan d-simplices (lexicographically, or in a seeded random order) keeping rank increases."""
    if n < d + 1:
        raise ValueError("need n >= d+1")
    order = d_faces(n, d)
    if seed is not None:
        random.Random(seed).shuffle(order)
    A, _ = _columns(order, p)
    target = comb(n - 1, d)
    # a column raises the rank iff it is a pivot column of the reduced echelon form
    r, piv = _kernels.rref(A.copy(), p)
    assert r == target
    return Hypertree(n, d, tuple(order[j] for j in piv), p)


def star_hypertree(n: int, d: int, p: int = 2) -> Hypertree:
    if n < d + 2:
        raise ValueError("need n >= d+2")
    return Hypertree(n, d, tuple(s for s in d_faces(n, d) if s[-1] == n), p)


def perturbed_hypertree(n: int, d: int, p: int = 2) -> Hypertree:
    """Star at ``n`` with (1..d, n) swapped for (1..d+1); its new simplex has facet-graph degree d."""
    star = star_hypertree(n, d, p)
    drop = tuple(range(1, d + 1)) + (n,)
    add = tuple(range(1, d + 2))
    return Hypertree(n, d, tuple(s for s in star.simplices if s != drop) + (add,), p)


def random_hypertree(n: int, d: int, p: int, seed: int) -> Hypertree:
    return hypertree_greedy(n, d, p, seed=seed)


def cap(t: Hypertree, sigma: Simplex) -> Chain:
    """The unique chain on ``t`` whose boundary equals the boundary of ``sigma``."""
    sigma = tuple(sigma)
    if sigma in t:
        raise ValueError(f"{sigma} already belongs to the hypertree")
    if len(sigma) != t.d + 1:
        raise ValueError("dimension mismatch")
    m = boundary_matrix(closure(t.simplices, t.n), t.d, t.p)
    x = solve(m, boundary(Chain.of(sigma, 1, t.p)))
    if x is None:  # pragma: no cover - spanning property guarantees a solution
        raise NotAHypertree("boundary of sigma not spanned")
    return x


def fundamental_cycle(t: Hypertree, sigma: Simplex) -> Chain:
    return Chain.of(tuple(sigma), 1, t.p) - cap(t, sigma)


# ---------------------------------------------------------------------------
# Cycles and simplicity
# ---------------------------------------------------------------------------

def is_cycle(z: Chain) -> bool:
    if z.dim < 0:
        return not z
    return not boundary(z)


def _single_full_kernel(A: np.ndarray, p: int) -> bool:
    K = kernel_dense(A, p)
    return len(K) == 1 and bool(np.all(K[0] != 0))


def is_simple_cycle(z: Chain) -> bool:
    """Nonzero cycle whose support carries no other cycle (up to scale)."""
    if not z or not is_cycle(z):
        return False
    if z.dim < 0:
        return False
    A, _ = _columns(sorted(z.support()), z.p)
    return _single_full_kernel(A, z.p)


# ---------------------------------------------------------------------------
# Duality inside the full simplex on [n]
# ---------------------------------------------------------------------------

def complement(s: Simplex, n: int) -> Simplex:
    present = set(s)
    return tuple(v for v in range(1, n + 1) if v not in present)


def dual_sign(s: Simplex) -> int:
    """Product of (-1)**(v-1) over the vertices v of ``s``."""
    return -1 if sum(v - 1 for v in s) % 2 else 1


def dual(z: Chain, n: int) -> Chain:
    """Term-wise ``s -> sign(s) * complement(s)``; maps (k-1)-chains to (n-k-1)-cochains."""
    if z and max(z.vertices(), default=0) > n:
        raise ValueError(f"chain uses vertices outside [1, {n}]")
    return Chain(n - z.dim - 2, {complement(s, n): dual_sign(s) * c for s, c in z.terms.items()}, z.p)


def double_dual_sign(n: int) -> int:
    """``C** = double_dual_sign(n) * C``."""
    return -1 if (comb(n + 1, 2) - n) % 2 else 1


def is_cocycle(c: Chain, n: int) -> bool:
    return not coboundary(c, n)


def _coboundary_columns(faces: Sequence[Simplex], n: int, p: int) -> np.ndarray:
    """Dense coboundary of each face (rows: all cofaces in [n] that occur)."""
    rows: dict = {}
    entries = []
    for j, tau in enumerate(faces):
        for xi, c in coboundary(Chain.of(tau, 1, p), n).terms.items():
            entries.append((rows.setdefault(xi, len(rows)), j, c))
    A = np.zeros((len(rows), len(faces)), dtype=np.int64)
    for i, j, c in entries:
        A[i, j] = c
    return A


def is_hypercut(c: Chain, n: int) -> bool:
    """Nonzero cocycle whose support carries no other cocycle (up to scale)."""
    if not c or not is_cocycle(c, n):
        return False
    A = _coboundary_columns(sorted(c.support()), n, c.p)
    if A.shape[0] == 0:
        return len(c) == 1
    return _single_full_kernel(A, c.p)


def star_hypercut(tau: Simplex, n: int, p: int = 2) -> Chain:
    """Sum over p not in tau of sign(tau+p, tau) * (tau+p)."""
    return coboundary(Chain.of(tuple(tau), 1, p), n)


# ---------------------------------------------------------------------------
# Circuits (simple cycles) and hypercuts by exhaustive search
# ---------------------------------------------------------------------------

def _circuits_of_matrix(A: np.ndarray, labels: Sequence[Simplex], p: int, dim: int) -> list[Chain]:
    masks, coefs = _kernels.circuit_search(np.ascontiguousarray(A % p, dtype=np.int64), p)
    out = []
    for row in coefs:
        out.append(Chain(dim, {labels[j]: int(row[j]) for j in np.flatnonzero(row)}, p))
    out.sort(key=lambda z: (len(z), z.sorted_terms()))
    return out


def enumerate_circuits(faces: Iterable[Simplex], p: int = 2) -> list[Chain]:
    """Every simple cycle supported on ``faces`` (one representative per support)."""
    faces = sorted(set(map(tuple, faces)))
    if len(faces) > CIRCUIT_LIMIT:
        raise InstanceTooLarge(f"{len(faces)} faces exceeds the enumeration cap of {CIRCUIT_LIMIT}")
    if not faces:
        return []
    if len({len(s) for s in faces}) != 1:
        raise ValueError("faces must share one dimension")
    A, _ = _columns(faces, p)
    return _circuits_of_matrix(A, faces, p, len(faces[0]) - 1)


def enumerate_hypercuts(n: int, d: int, p: int = 2) -> list[Chain]:
    """Every d-hypercut of the complete complex on [n] (one representative per support).

    Hypercuts are the minimal-support vectors of the coboundary space, found as the
    circuits of a matrix whose rows span the cycle space.
    """
    faces = d_faces(n, d)
    if len(faces) > CIRCUIT_LIMIT:
        raise InstanceTooLarge(f"{len(faces)} faces exceeds the enumeration cap of {CIRCUIT_LIMIT}")
    A, _ = _columns(faces, p)
    K = kernel_dense(A, p)
    if len(K) == 0:
        # no cycles: every single face is a hypercut
        return [Chain.of(s, 1, p) for s in faces]
    return _circuits_of_matrix(K, faces, p, d)


def biconnected_classes(faces: Iterable[Simplex], p: int = 2) -> list[frozenset]:
    """Classes of the relation "lie on a common simple cycle" (reflexive by definition)."""
    faces = sorted(set(map(tuple, faces)))
    parent = {s: s for s in faces}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for z in enumerate_circuits(faces, p):
        support = sorted(z.support())
        root = find(support[0])
        for s in support[1:]:
            parent[find(s)] = root
    groups: dict = {}
    for s in faces:
        groups.setdefault(find(s), set()).add(s)
    return sorted((frozenset(g) for g in groups.values()), key=lambda g: min(g))


def contains_hypertree(faces: Iterable[Simplex], n: int, d: int, p: int = 2) -> bool:
    faces = sorted(set(map(tuple, faces)))
    if not faces:
        return comb(n - 1, d) == 0
    A, _ = _columns(faces, p)
    return rank_dense(A, p) == comb(n - 1, d)


def is_hypertree(faces: Iterable[Simplex], n: int, d: int, p: int = 2) -> bool:
    faces = sorted(set(map(tuple, faces)))
    return len(faces) == comb(n - 1, d) and contains_hypertree(faces, n, d, p)
