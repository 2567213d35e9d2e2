"""Simplices, chains, complexes and the boundary / coboundary operators.

A simplex is a strictly increasing tuple of positive ints; ``()`` is the empty
simplex of dimension -1. Orientation is the one induced by the vertex order.
Homology is reduced: every vertex has boundary ``1 * ()``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, Mapping

from .field import field_context

Simplex = tuple

EMPTY: Simplex = ()


def simplex(*vertices: int) -> Simplex:
    """Build a simplex from its vertices, sorting them; duplicates are an error."""
    s = tuple(sorted(vertices))
    if len(set(s)) != len(s):
        raise ValueError(f"repeated vertex in {vertices}")
    return s


def is_simplex(s) -> bool:
    return isinstance(s, tuple) and all(isinstance(v, int) and v >= 1 for v in s) and all(
        a < b for a, b in zip(s, s[1:])
    )


def dim(s: Simplex) -> int:
    return len(s) - 1


def facets_of(s: Simplex) -> list[Simplex]:
    """Codimension-one faces of ``s``, in order of the deleted position."""
    return [s[:i] + s[i + 1:] for i in range(len(s))]


def faces_of(s: Simplex, include_empty: bool = True) -> Iterator[Simplex]:
    lo = 0 if include_empty else 1
    for k in range(lo, len(s) + 1):
        yield from combinations(s, k)


def incidence_sign(sigma: Simplex, tau: Simplex) -> int:
    """``(-1)**(i-1)`` when ``tau`` is ``sigma`` minus its i-th smallest vertex, else 0."""
    if len(tau) != len(sigma) - 1:
        return 0
    for i in range(len(sigma)):
        if sigma[:i] + sigma[i + 1:] == tau:
            return -1 if i % 2 else 1
    return 0


def _insert_sign(tau: Simplex, v: int) -> tuple[Simplex, int]:
    """Return ``(tau + v sorted, sign(tau+v, tau))``."""
    pos = 0
    while pos < len(tau) and tau[pos] < v:
        pos += 1
    return tau[:pos] + (v,) + tau[pos:], (-1 if pos % 2 else 1)


@dataclass(frozen=True, eq=False)
class Chain:
    """Finite GF(p)-linear combination of ``dim``-simplices; zero terms are never stored.

    The same type is used for cochains.
    """

    dim: int
    terms: Mapping[Simplex, int]
    p: int = 2

    def __post_init__(self):
        ctx = field_context(self.p)
        clean = {}
        for s, c in self.terms.items():
            if not is_simplex(s):
                raise ValueError(f"not a sorted vertex tuple: {s!r}")
            if len(s) != self.dim + 1:
                raise ValueError(f"simplex {s} has dimension {len(s) - 1}, chain has {self.dim}")
            c = ctx(c)
            if c:
                clean[s] = c
        object.__setattr__(self, "terms", clean)

    @classmethod
    def zero(cls, dim: int, p: int = 2) -> Chain:
        return cls(dim, {}, p)

    @classmethod
    def of(cls, s: Simplex, c: int = 1, p: int = 2) -> Chain:
        return cls(len(s) - 1, {tuple(s): c}, p)

    @classmethod
    def from_items(cls, dim: int, items: Iterable[tuple[Simplex, int]], p: int = 2) -> Chain:
        acc: dict = {}
        for s, c in items:
            acc[s] = (acc.get(s, 0) + c) % p
        return cls(dim, acc, p)

    def support(self) -> frozenset:
        return frozenset(self.terms)

    def sorted_terms(self) -> list[tuple[Simplex, int]]:
        return sorted(self.terms.items())

    def __getitem__(self, s: Simplex) -> int:
        return self.terms.get(s, 0)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms.items())

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Chain):
            return NotImplemented
        if self.p != other.p:
            return False
        if not self.terms and not other.terms:
            return True
        return self.dim == other.dim and self.terms == other.terms

    def __hash__(self):
        if not self.terms:
            return hash((self.p, None))
        return hash((self.p, self.dim, frozenset(self.terms.items())))

    def _check(self, other: Chain):
        if self.p != other.p:
            raise ValueError(f"mixing GF({self.p}) and GF({other.p}) chains")
        if self.terms and other.terms and self.dim != other.dim:
            raise ValueError(f"adding chains of dimension {self.dim} and {other.dim}")

    def __add__(self, other: Chain) -> Chain:
        self._check(other)
        acc = dict(self.terms)
        for s, c in other.terms.items():
            acc[s] = acc.get(s, 0) + c
        return Chain(self.dim if self.terms else other.dim, acc, self.p)

    def __neg__(self) -> Chain:
        return Chain(self.dim, {s: -c for s, c in self.terms.items()}, self.p)

    def __sub__(self, other: Chain) -> Chain:
        return self + (-other)

    def __mul__(self, a: int) -> Chain:
        return Chain(self.dim, {s: c * a for s, c in self.terms.items()}, self.p)

    __rmul__ = __mul__

    def restrict(self, keep) -> Chain:
        return Chain(self.dim, {s: c for s, c in self.terms.items() if s in keep}, self.p)

    def vertices(self) -> set[int]:
        return {v for s in self.terms for v in s}

    def __repr__(self) -> str:
        if not self.terms:
            return f"Chain(0, dim={self.dim}, p={self.p})"
        body = " + ".join(f"{c}*{s}" for s, c in self.sorted_terms())
        return f"Chain({body}, p={self.p})"


def boundary(chain: Chain) -> Chain:
    """Linear extension of d(s_1..s_k) = sum (-1)^(i-1) (s minus s_i)."""
    if chain.dim < 0:
        raise ValueError("the empty simplex has no boundary")
    acc: dict = {}
    for s, c in chain.terms.items():
        for i in range(len(s)):
            f = s[:i] + s[i + 1:]
            acc[f] = acc.get(f, 0) + (-c if i % 2 else c)
    return Chain(chain.dim - 1, acc, chain.p)


def coboundary(chain: Chain, n: int) -> Chain:
    """Adjoint of the boundary inside the full simplex on ``[n]``."""
    acc: dict = {}
    for tau, c in chain.terms.items():
        if tau and tau[-1] > n:
            raise ValueError(f"vertex {tau[-1]} outside [1, {n}]")
        present = set(tau)
        for v in range(1, n + 1):
            if v in present:
                continue
            xi, sgn = _insert_sign(tau, v)
            acc[xi] = acc.get(xi, 0) + sgn * c
    return Chain(chain.dim + 1, acc, chain.p)


@dataclass(frozen=True, eq=False)
class Complex:
    """Downward-closed family of simplices over ``[n]``. Always contains ``()``."""

    n: int
    faces: dict = field(repr=False)  # dim -> frozenset of simplices

    @property
    def dim(self) -> int:
        return max(self.faces)

    def skeleton(self, d: int) -> list[Simplex]:
        return sorted(self.faces.get(d, ()))

    def all_faces(self) -> list[Simplex]:
        return [s for d in sorted(self.faces) for s in sorted(self.faces[d])]

    def __contains__(self, s) -> bool:
        return tuple(s) in self.faces.get(len(s) - 1, ())

    def __len__(self) -> int:
        return sum(len(v) for v in self.faces.values())

    def __eq__(self, other) -> bool:
        return isinstance(other, Complex) and self.faces == other.faces

    @property
    def facets(self) -> list[Simplex]:
        """Maximal faces, lexicographic."""
        out = []
        for d in sorted(self.faces):
            up = self.faces.get(d + 1, frozenset())
            for s in self.faces[d]:
                if not any(_insert_sign(s, v)[0] in up for v in range(1, self.n + 1) if v not in s):
                    out.append(s)
        return sorted(out)

    def f_vector(self) -> list[int]:
        return [len(self.faces.get(d, ())) for d in range(-1, self.dim + 1)]


def complex_from_faces(faces: Iterable[Simplex], n: int) -> Complex:
    """Wrap an already downward-closed face set (the empty simplex is added)."""
    by_dim: dict = {-1: {EMPTY}}
    for s in faces:
        by_dim.setdefault(len(s) - 1, set()).add(tuple(s))
    return Complex(n, {d: frozenset(v) for d, v in by_dim.items() if v})


def closure(facets: Iterable[Simplex], n: int | None = None) -> Complex:
    """Smallest complex containing every given simplex."""
    facets = [tuple(s) for s in facets]
    for s in facets:
        if not is_simplex(s):
            raise ValueError(f"not a sorted vertex tuple: {s!r}")
    if n is None:
        n = max((s[-1] for s in facets if s), default=0)
    elif any(s and s[-1] > n for s in facets):
        raise ValueError(f"vertex outside [1, {n}]")
    seen: set = set()
    for s in facets:
        if s in seen:
            continue
        seen.update(faces_of(s))
    seen.add(EMPTY)
    return complex_from_faces(seen, n)


def boundary_matrix(k: Complex, d: int, p: int = 2):
    """Matrix of the boundary map from ``d``-faces to ``(d-1)``-faces of ``k``.

    Rows and columns are in lexicographic order; the empty simplex is the single
    row when ``d == 0``.
    """
    from .linalg import SparseMatrix

    cols = k.skeleton(d)
    rows = k.skeleton(d - 1)
    row_index = {s: i for i, s in enumerate(rows)}
    entries = {}
    for j, s in enumerate(cols):
        for i in range(len(s)):
            f = s[:i] + s[i + 1:]
            entries[(row_index[f], j)] = (p - 1) if i % 2 else 1
    return SparseMatrix(rows, cols, entries, p)
