"""Exact linear algebra over GF(p): rank, kernels, solving, Betti numbers."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .complex import Chain, Complex, Simplex, boundary_matrix, closure
from .field import field_context


@dataclass(frozen=True)
class SparseMatrix:
    """GF(p) matrix with labelled rows/columns; ``entries`` maps ``(i, j)`` to a nonzero residue."""

    rows: Sequence
    cols: Sequence
    entries: dict = field(repr=False)
    p: int = 2

    def __post_init__(self):
        ctx = field_context(self.p)
        nr, nc = len(self.rows), len(self.cols)
        clean = {}
        for (i, j), v in self.entries.items():
            if not (0 <= i < nr and 0 <= j < nc):
                raise IndexError(f"entry ({i}, {j}) outside a {nr}x{nc} matrix")
            v = ctx(v)
            if v:
                clean[(i, j)] = v
        object.__setattr__(self, "entries", clean)

    @classmethod
    def from_dense(cls, A, rows=None, cols=None, p: int = 2) -> SparseMatrix:
        A = np.asarray(A, dtype=np.int64) % p
        rows = list(range(A.shape[0])) if rows is None else list(rows)
        cols = list(range(A.shape[1])) if cols is None else list(cols)
        ii, jj = np.nonzero(A)
        return cls(rows, cols, {(int(i), int(j)): int(A[i, j]) for i, j in zip(ii, jj)}, p)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.cols)

    def to_dense(self) -> np.ndarray:
        A = np.zeros(self.shape, dtype=np.int64)
        for (i, j), v in self.entries.items():
            A[i, j] = v
        return A

    def transpose(self) -> SparseMatrix:
        return SparseMatrix(self.cols, self.rows, {(j, i): v for (i, j), v in self.entries.items()}, self.p)

    def select_columns(self, keep: Iterable) -> SparseMatrix:
        keep = set(keep)
        new_cols = [c for c in self.cols if c in keep]
        where = {c: k for k, c in enumerate(new_cols)}
        remap = {j: where[c] for j, c in enumerate(self.cols) if c in where}
        return SparseMatrix(
            self.rows, new_cols, {(i, remap[j]): v for (i, j), v in self.entries.items() if j in remap}, self.p
        )

    def matvec(self, x: Chain) -> Chain:
        """Apply to a chain over the column labels; rows must be simplices of one dimension."""
        col_index = {c: j for j, c in enumerate(self.cols)}
        xv = np.zeros(len(self.cols), dtype=np.int64)
        for s, c in x.terms.items():
            if s not in col_index:
                raise KeyError(f"{s} is not a column label")
            xv[col_index[s]] = c
        y = self.to_dense() @ xv % self.p
        return _vector_to_chain(y, self.rows, self.p)


@dataclass(frozen=True)
class SubspaceBasis:
    dim: int
    vectors: list


def _vector_to_chain(v, labels, p: int, dim: int | None = None) -> Chain:
    if dim is None:
        dim = len(labels[0]) - 1 if len(labels) else -1
    return Chain(dim, {labels[i]: int(v[i]) for i in np.flatnonzero(v)}, p)


def rank_dense(A: np.ndarray, p: int) -> int:
    if A.size == 0:
        return 0
    r, _ = _kernels.rref(A.copy(), p)
    return r


def kernel_dense(A: np.ndarray, p: int) -> np.ndarray:
    """Right-kernel basis of a dense matrix, one vector per row."""
    m, n = A.shape
    if n == 0:
        return np.zeros((0, 0), dtype=np.int64)
    if m == 0:
        return np.eye(n, dtype=np.int64)
    R = A.copy()
    r, piv = _kernels.rref(R, p)
    pivset = set(int(c) for c in piv)
    free = [j for j in range(n) if j not in pivset]
    K = np.zeros((len(free), n), dtype=np.int64)
    for k, f in enumerate(free):
        K[k, f] = 1
        for i in range(r):
            K[k, piv[i]] = (-R[i, f]) % p
    return K


def rank(m: SparseMatrix) -> int:
    return rank_dense(m.to_dense(), m.p)


def kernel_basis(m: SparseMatrix) -> SubspaceBasis:
    """Basis of the right kernel, each vector a chain over the column labels."""
    K = kernel_dense(m.to_dense(), m.p)
    dim = len(m.cols[0]) - 1 if len(m.cols) else 0
    return SubspaceBasis(len(K), [_vector_to_chain(v, m.cols, m.p, dim) for v in K])


def solve(m: SparseMatrix, b: Chain) -> Chain | None:
    """Some ``x`` with ``m x = b``, or ``None`` when ``b`` is outside the column space.

    Free variables are set to zero, so the answer is canonical and unique when the
    columns are independent.
    """
    p = m.p
    nr, nc = m.shape
    row_index = {r: i for i, r in enumerate(m.rows)}
    A = np.zeros((nr, nc + 1), dtype=np.int64)
    A[:, :nc] = m.to_dense()
    for s, c in b.terms.items():
        if s not in row_index:
            return None
        A[row_index[s], nc] = c
    r, piv = _kernels.rref(A, p) if A.size else (0, np.zeros(0, dtype=np.int64))
    if r and piv[r - 1] == nc:
        return None
    x = np.zeros(nc, dtype=np.int64)
    for i in range(r):
        x[piv[i]] = A[i, nc]
    dim = len(m.cols[0]) - 1 if nc else b.dim + 1
    return _vector_to_chain(x, m.cols, p, dim)


def boundary_rank(k: Complex, d: int, p: int) -> int:
    if d not in k.faces or d - 1 not in k.faces:
        return 0
    return rank(boundary_matrix(k, d, p))


def betti_reduced(k: Complex, d: int, p: int = 2) -> int:
    """Reduced Betti number over GF(p); 0 above the top dimension."""
    if d < -1:
        raise ValueError("reduced homology starts in dimension -1")
    nd = len(k.faces.get(d, ()))
    if nd == 0:
        return 0
    return nd - boundary_rank(k, d, p) - boundary_rank(k, d + 1, p)


def homologically_connected(k: Complex, upto: int, p: int = 2) -> bool:
    """True when the reduced Betti numbers vanish in dimensions 0..upto."""
    return all(betti_reduced(k, i, p) == 0 for i in range(0, upto + 1))


def cycle_space_dim(faces: Iterable[Simplex], p: int = 2) -> int:
    """Dimension of the space of cycles supported on a set of equal-dimension simplices."""
    faces = sorted(set(map(tuple, faces)))
    if not faces:
        return 0
    if len({len(s) for s in faces}) != 1:
        raise ValueError("faces must all have the same dimension")
    r = len(faces[0]) - 1
    m = boundary_matrix(closure(faces), r, p)
    return len(faces) - rank(m)


def compressed_family(n: int, r: int, t: int, order: str = "colex") -> list[Simplex]:
    """First ``t`` of the ``(r+1)``-subsets of ``[n]`` in colex or reverse-lex order."""
    subsets = list(combinations(range(1, n + 1), r + 1))
    if order == "colex":
        subsets.sort(key=lambda s: s[::-1])
    elif order == "revlex":
        subsets.sort(reverse=True)
    else:
        raise ValueError(f"unknown order {order!r}")
    if t > len(subsets):
        raise ValueError(f"only {len(subsets)} subsets available")
    return subsets[:t]


def max_cycle_dim_bruteforce(n: int, r: int, t: int, p: int = 2) -> int:
    """Maximum cycle-space dimension over *all* families of ``t`` r-simplices of [n]."""
    faces = list(combinations(range(1, n + 1), r + 1))
    full = boundary_matrix(closure(faces, n), r, p).to_dense()
    best = 0
    for cols in combinations(range(len(faces)), t):
        best = max(best, t - rank_dense(full[:, list(cols)], p))
    return best
