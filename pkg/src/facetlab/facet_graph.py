"""Facet graphs and their exact vertex connectivity."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Hashable, Iterable, Sequence

import numpy as np

from . import _kernels
from .complex import Chain, Simplex


@dataclass(frozen=True)
class FacetGraph:
    """Simple graph on labelled vertices; each edge carries the label of the shared lower face.

    ``edges`` maps a vertex-index pair ``(i, j)`` with ``i < j`` to its label.
    """

    vertices: tuple
    edges: dict = field(repr=False)

    @property
    def order(self) -> int:
        return len(self.vertices)

    @property
    def size(self) -> int:
        return len(self.edges)

    def index(self, v: Hashable) -> int:
        return self._index[v]

    def __post_init__(self):
        object.__setattr__(self, "_index", {v: i for i, v in enumerate(self.vertices)})
        nbrs: list[set] = [set() for _ in self.vertices]
        for i, j in self.edges:
            if i == j:
                raise ValueError("loops are not allowed")
            nbrs[i].add(j)
            nbrs[j].add(i)
        object.__setattr__(self, "_nbrs", [sorted(s) for s in nbrs])

    def neighbors(self, i: int) -> list[int]:
        return self._nbrs[i]

    def degree(self, i: int) -> int:
        return len(self._nbrs[i])

    def degrees(self) -> list[int]:
        return [len(s) for s in self._nbrs]

    def edge_pairs(self) -> set[frozenset]:
        """Edges as unordered pairs of vertex labels."""
        return {frozenset((self.vertices[i], self.vertices[j])) for i, j in self.edges}

    def csr(self, keep: Sequence[int] | None = None) -> tuple[int, np.ndarray, np.ndarray]:
        """CSR adjacency of the subgraph induced on ``keep`` (all vertices by default)."""
        if keep is None:
            keep = range(self.order)
        keep = list(keep)
        where = {v: k for k, v in enumerate(keep)}
        indptr = np.zeros(len(keep) + 1, dtype=np.int64)
        idx = []
        for k, v in enumerate(keep):
            row = [where[u] for u in self._nbrs[v] if u in where]
            idx.extend(row)
            indptr[k + 1] = indptr[k] + len(row)
        return len(keep), indptr, np.asarray(idx, dtype=np.int64)

    def is_bipartite(self) -> bool:
        return two_coloring(self) is not None


def build_facet_graph(faces: Iterable[Simplex] | Chain) -> FacetGraph:
    """Vertices: the given d-simplices (lexicographic). Edges: pairs sharing a (d-1)-face."""
    if isinstance(faces, Chain):
        faces = faces.support()
    vertices = tuple(sorted(set(map(tuple, faces))))
    if len({len(s) for s in vertices}) > 1:
        raise ValueError("all faces must have the same dimension")
    buckets: dict = {}
    for k, s in enumerate(vertices):
        for i in range(len(s)):
            buckets.setdefault(s[:i] + s[i + 1:], []).append(k)
    edges = {}
    for label, members in buckets.items():
        for a, b in combinations(members, 2):
            edges[(a, b)] = label
    return FacetGraph(vertices, edges)


def graph_from_adjacency(vertices: Sequence, pairs: Iterable[tuple], labels: Iterable | None = None) -> FacetGraph:
    """Facet-graph-like object from explicit vertex labels and adjacent label pairs."""
    vertices = tuple(vertices)
    where = {v: i for i, v in enumerate(vertices)}
    labels = list(labels) if labels is not None else None
    edges = {}
    for k, (a, b) in enumerate(pairs):
        i, j = sorted((where[a], where[b]))
        edges[(i, j)] = labels[k] if labels is not None else None
    return FacetGraph(vertices, edges)


def vertex_connectivity(g: FacetGraph, removed: Iterable[int] = ()) -> int:
    """Exact vertex connectivity (complete graphs K_m give m - 1; empty and K_1 give 0)."""
    removed = set(removed)
    n, indptr, indices = g.csr([i for i in range(g.order) if i not in removed])
    return _kernels.vertex_connectivity_csr(n, indptr, indices)


def _components(nbrs, alive: set[int]) -> int:
    seen: set[int] = set()
    count = 0
    for s in sorted(alive):
        if s in seen:
            continue
        count += 1
        seen.add(s)
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in nbrs(x):
                if y in alive and y not in seen:
                    seen.add(y)
                    queue.append(y)
    return count


def components_after_removal(g: FacetGraph, removed: Iterable[int]) -> int:
    """Connected components of the subgraph induced on the surviving vertex indices."""
    removed = set(removed)
    alive = set(range(g.order)) - removed
    return _components(g.neighbors, alive)


def connected_after_mixed_removal(
    g: FacetGraph, removed_vertices: Iterable[int] = (), removed_labels: Iterable = ()
) -> bool:
    """Delete vertices and every edge carrying one of the labels; test connectivity (empty counts)."""
    removed_labels = set(removed_labels)
    alive = set(range(g.order)) - set(removed_vertices)
    nbrs: list[list[int]] = [[] for _ in range(g.order)]
    for (i, j), lab in g.edges.items():
        if lab in removed_labels:
            continue
        nbrs[i].append(j)
        nbrs[j].append(i)
    return _components(lambda x: nbrs[x], alive) <= 1


def two_coloring(g: FacetGraph) -> list[int] | None:
    color = [-1] * g.order
    for s in range(g.order):
        if color[s] >= 0:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in g.neighbors(x):
                if color[y] < 0:
                    color[y] = 1 - color[x]
                    queue.append(y)
                elif color[y] == color[x]:
                    return None
    return color


def hypersimplex_graph(n: int, k: int) -> FacetGraph:
    """k-subsets of [n], adjacent when the symmetric difference has size 2."""
    if not 1 <= k <= n - 1:
        raise ValueError("need 1 <= k <= n-1")
    vertices = tuple(combinations(range(1, n + 1), k))
    edges = {}
    for a, b in combinations(range(len(vertices)), 2):
        shared = set(vertices[a]) & set(vertices[b])
        if len(shared) == k - 1:
            edges[(a, b)] = tuple(sorted(shared))
    return FacetGraph(vertices, edges)
