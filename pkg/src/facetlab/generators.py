"""Canonical complexes, chains and cell posets used by the checks and examples."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Callable

import numpy as np

from .cell_complex import EMPTY_ID, CellPoset, poset_from_complex, simplex_id
from .complex import Chain, Complex, Simplex, boundary, closure, incidence_sign
from .field import field_context
from .linalg import kernel_dense
from .structures import (
    Hypertree,
    _columns,
    d_faces,
    fundamental_cycle,
    is_hypercut,
    is_simple_cycle,
    perturbed_hypertree,
    random_hypertree,
    star_hypercut,
    star_hypertree,
)


class InvalidParameter(ValueError):
    pass


def complete_complex(n: int, d: int) -> Complex:
    if n < 1 or d < 0:
        raise InvalidParameter("need n >= 1 and d >= 0")
    return closure(combinations(range(1, n + 1), min(d, n - 1) + 1), n)


def simplex_boundary_cycle(vertices: Simplex, p: int = 2) -> Chain:
    vertices = tuple(sorted(vertices))
    if len(vertices) < 2:
        raise InvalidParameter("need at least two vertices")
    return boundary(Chain.of(vertices, 1, p))


def _orient(faces, p: int) -> Chain:
    """The unique (up to scale) cycle on ``faces``; the lex-least face gets coefficient 1."""
    faces = sorted(set(faces))
    A, _ = _columns(faces, p)
    K = kernel_dense(A, p)
    if len(K) != 1 or not np.all(K[0] != 0):
        raise InvalidParameter("faces do not carry a unique full-support cycle")
    v = K[0] * field_context(p).inv(int(K[0][0])) % p
    return Chain(len(faces[0]) - 1, dict(zip(faces, (int(x) for x in v))), p)


def cross_polytope_cycle(d: int, p: int = 2) -> Chain:
    """Boundary of the (d+1)-cross-polytope on [2d+2], antipodal pairs (2i-1, 2i)."""
    if d < 1:
        raise InvalidParameter("need d >= 1")
    pairs = [(2 * i - 1, 2 * i) for i in range(1, d + 2)]
    return _orient([tuple(c) for c in product(*pairs)], p)


def torus_cycle(k: int, p: int = 2) -> Chain:
    """Triangulated k x k torus grid; vertex (i, j) is i*k + j + 1, diagonals (i,j)-(i+1,j+1)."""
    if k < 4 or k % 2:
        raise InvalidParameter("torus needs an even k >= 4")

    def v(i, j):
        return (i % k) * k + (j % k) + 1

    tris = []
    for i, j in product(range(k), repeat=2):
        a, b, c, e = v(i, j), v(i + 1, j), v(i, j + 1), v(i + 1, j + 1)
        tris.append(tuple(sorted((a, b, e))))
        tris.append(tuple(sorted((a, c, e))))
    return _orient(tris, p)


def random_simple_cycle(n: int, d: int, p: int = 2, seed: int = 0) -> Chain:
    """Fundamental cycle of a seeded random hypertree and a random simplex outside it."""
    if n < d + 2:
        raise InvalidParameter("need n >= d+2")
    t = random_hypertree(n, d, p, seed)
    outside = [s for s in d_faces(n, d) if s not in t]
    sigma = random.Random(seed).choice(outside)
    return fundamental_cycle(t, sigma)


def is_pseudomanifold(z: Chain) -> bool:
    """Every (d-1)-face of the support lies in exactly two support faces."""
    count: dict = {}
    for s in z.support():
        for i in range(len(s)):
            f = s[:i] + s[i + 1:]
            count[f] = count.get(f, 0) + 1
    return bool(count) and all(c == 2 for c in count.values())


# ---------------------------------------------------------------------------
# Cell posets
# ---------------------------------------------------------------------------

def poset_from_vertex_sets(cells: dict, p: int = 2) -> CellPoset:
    """Build a poset from ``id -> (vertex set, dim)`` with covers by containment.

    Simplex-shaped cells get simplicial incidence signs; other cells get the unique
    cycle on their facets (found by a kernel solve).
    """
    cells = {cid: (frozenset(vs), k) for cid, (vs, k) in cells.items()}
    cells[EMPTY_ID] = (frozenset(), -1)
    dims = {cid: k for cid, (_, k) in cells.items()}
    covers = [
        (a, b)
        for a, (va, ka) in cells.items()
        for b, (vb, kb) in cells.items()
        if kb == ka + 1 and va < vb
    ]
    facets: dict = {c: sorted(a for a, b in covers if b == c) for c in cells}
    bd: dict = {}
    ctx = field_context(p)
    for c in sorted(cells, key=lambda x: dims[x]):
        vs, k = cells[c]
        if k < 1:
            continue
        if len(vs) == k + 1:
            top = tuple(sorted(vs))
            bd[c] = {f: incidence_sign(top, tuple(sorted(cells[f][0]))) for f in facets[c]}
            continue
        fs = facets[c]
        rows = sorted({g for f in fs for g in bd.get(f, {EMPTY_ID: 1} if dims[f] == 0 else {})})
        ri = {r: i for i, r in enumerate(rows)}
        A = np.zeros((len(rows), len(fs)), dtype=np.int64)
        for j, f in enumerate(fs):
            for g, w in (bd.get(f) or {EMPTY_ID: 1}).items():
                A[ri[g], j] = w % p
        K = kernel_dense(A, p)
        if len(K) != 1:
            raise InvalidParameter(f"cell {c} does not have a unique boundary cycle")
        vec = K[0] * ctx.inv(int(K[0][np.flatnonzero(K[0])[0]])) % p
        bd[c] = {f: int(x) for f, x in zip(fs, vec) if x}
    labels = {c: tuple(sorted(vs)) for c, (vs, _) in cells.items()}
    return CellPoset(dims, tuple(covers), bd, p, labels)


def _skeleton_cells(top: dict) -> dict:
    """Vertices and the edges given as pairs, plus the listed higher cells."""
    out = {}
    for cid, (vs, k) in top.items():
        out[cid] = (frozenset(vs), k)
        for v in vs:
            out[simplex_id((v,))] = (frozenset((v,)), 0)
    return out


def polygon_poset(k: int, p: int = 2) -> CellPoset:
    """One 2-cell bounded by the k-gon on vertices 1..k."""
    if k < 3:
        raise InvalidParameter("a polygon needs k >= 3")
    cells = {}
    for i in range(1, k + 1):
        e = tuple(sorted((i, i % k + 1)))
        cells[simplex_id(e)] = (e, 1)
    cells["P"] = (range(1, k + 1), 2)
    return poset_from_vertex_sets(_skeleton_cells(cells), p)


def cube_poset(p: int = 2) -> CellPoset:
    """Solid 3-cube with its squares, edges and vertices; vertex (x,y,z) is 1 + x + 2y + 4z."""
    def vid(x):
        return 1 + x[0] + 2 * x[1] + 4 * x[2]

    cells = {}
    for free in range(1, 4):
        for axes in combinations(range(3), free):
            fixed = [a for a in range(3) if a not in axes]
            for vals in product((0, 1), repeat=len(fixed)):
                vs = []
                for pt in product((0, 1), repeat=3):
                    if all(pt[a] == v for a, v in zip(fixed, vals)):
                        vs.append(vid(pt))
                vs = tuple(sorted(vs))
                cid = simplex_id(vs) if free == 1 else ("cube" if free == 3 else "sq" + simplex_id(vs))
                cells[cid] = (vs, free)
    return poset_from_vertex_sets(_skeleton_cells(cells), p)


def prism_poset(p: int = 2) -> CellPoset:
    """Triangular prism: triangles 123 and 456, verticals 1-4, 2-5, 3-6."""
    cells = {}
    for e in [(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6), (1, 4), (2, 5), (3, 6)]:
        cells[simplex_id(e)] = (e, 1)
    cells["1-2-3"] = ((1, 2, 3), 2)
    cells["4-5-6"] = ((4, 5, 6), 2)
    for sq in [(1, 2, 4, 5), (2, 3, 5, 6), (1, 3, 4, 6)]:
        cells["sq" + simplex_id(sq)] = (sq, 2)
    cells["prism"] = (range(1, 7), 3)
    return poset_from_vertex_sets(_skeleton_cells(cells), p)


def pillow_poset(p: int = 2) -> CellPoset:
    """Two triangles glued along their whole boundary, filled by one 3-cell.

    Inside the 3-cell the two triangles have three maximal common lower bounds, so the
    closed cell is not a lattice.
    """
    cells = {simplex_id(e): (e, 1) for e in [(1, 2), (2, 3), (1, 3)]}
    P = poset_from_vertex_sets(_skeleton_cells(cells), p)
    dims = dict(P.dims)
    dims.update({"D1": 2, "D2": 2, "pillow": 3})
    tri = {"1-2": 1, "2-3": 1, "1-3": p - 1}
    covers = list(P.covers)
    covers += [(e, D) for e in tri for D in ("D1", "D2")]
    covers += [("D1", "pillow"), ("D2", "pillow")]
    bd = dict(P.boundary)
    bd.update({"D1": tri, "D2": tri, "pillow": {"D1": 1, "D2": p - 1}})
    return CellPoset(dims, tuple(covers), bd, p, dict(P.labels))


def pentagon_cells(p: int = 3) -> tuple[CellPoset, dict]:
    """The pentagon with three triangles fanned from vertex 1, and the cycle C1 - C2 - C3 - C4."""
    cells = {simplex_id(e): (e, 1) for e in [(1, 2), (2, 3), (3, 4), (4, 5), (1, 5), (1, 3), (1, 4)]}
    for v in range(1, 6):
        cells[str(v)] = ((v,), 0)
    base = poset_from_vertex_sets(cells, p)
    m = p - 1
    extra = {
        "C1": {"1-2": 1, "2-3": 1, "3-4": 1, "4-5": 1, "1-5": m},
        "C2": {"1-2": 1, "2-3": 1, "1-3": m},
        "C3": {"1-3": 1, "3-4": 1, "1-4": m},
        "C4": {"1-4": 1, "4-5": 1, "1-5": m},
    }
    dims = dict(base.dims)
    covers = list(base.covers)
    bd = dict(base.boundary)
    for c, chain in extra.items():
        dims[c] = 2
        covers += [(e, c) for e in chain]
        bd[c] = chain
    labels = dict(base.labels)
    labels.update({"C1": (1, 2, 3, 4, 5), "C2": (1, 2, 3), "C3": (1, 3, 4), "C4": (1, 4, 5)})
    P = CellPoset(dims, tuple(covers), bd, p, labels)
    return P, {"C1": 1, "C2": m, "C3": m, "C4": m}


def cell_zoo(p: int = 2) -> dict[str, CellPoset]:
    """Valid posets used for cell-level checks."""
    zoo = {f"polygon-{k}": polygon_poset(k, p) for k in (3, 4, 5, 6)}
    zoo["cube"] = cube_poset(p)
    zoo["prism"] = prism_poset(p)
    zoo["simplex-3"] = poset_from_complex(closure([(1, 2, 3, 4)]), p)
    zoo["octahedron"] = poset_from_complex(closure(cross_polytope_cycle(2, p).support()), p)
    return zoo


# ---------------------------------------------------------------------------
# Named instances
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NamedInstance:
    """A generated object with metadata. ``kind`` is complex, chain or poset."""

    name: str
    kind: str
    payload: object
    meta: dict = field(default_factory=dict)

    def validate(self) -> bool:
        """Re-check the advertised class membership with the independent predicates."""
        claim = self.meta.get("class")
        if claim == "simple-cycle":
            return is_simple_cycle(self.payload)
        if claim == "pseudomanifold":
            return is_simple_cycle(self.payload) and is_pseudomanifold(self.payload)
        if claim == "hypertree":
            return isinstance(self.meta.get("tree"), Hypertree)
        if claim == "hypercut":
            return is_hypercut(self.payload, self.meta["n"])
        return True


def _chain_n(z: Chain) -> int:
    return max(z.vertices(), default=0)


def _gen_complete(n: int, d: int, p: int = 2):
    k = complete_complex(n, d)
    return NamedInstance("complete", "complex", k, {"n": n, "d": d, "p": p})


def _gen_simplex_boundary(d: int, p: int = 3, n: int | None = None):
    z = simplex_boundary_cycle(tuple(range(1, d + 3)), p)
    return NamedInstance("simplex-boundary", "chain", z, {"n": n or d + 2, "d": d, "p": p, "class": "simple-cycle"})


def _gen_cross(d: int, p: int = 3):
    z = cross_polytope_cycle(d, p)
    return NamedInstance("cross-polytope", "chain", z, {"n": 2 * d + 2, "d": d, "p": p, "class": "pseudomanifold"})


def _gen_torus(k: int = 4, p: int = 3):
    z = torus_cycle(k, p)
    return NamedInstance("torus", "chain", z, {"n": k * k, "d": 2, "p": p, "class": "pseudomanifold"})


def _gen_star_tree(n: int, d: int, p: int = 2):
    t = star_hypertree(n, d, p)
    return NamedInstance("star-tree", "complex", closure(t.simplices, n), {"n": n, "d": d, "p": p, "class": "hypertree", "tree": t})


def _gen_perturbed_tree(n: int, d: int, p: int = 2):
    t = perturbed_hypertree(n, d, p)
    return NamedInstance("perturbed-tree", "complex", closure(t.simplices, n), {"n": n, "d": d, "p": p, "class": "hypertree", "tree": t})


def _gen_star_cut(n: int, d: int, p: int = 3, tau: tuple | None = None):
    tau = tuple(tau) if tau else tuple(range(1, d + 1))
    if len(tau) != d:
        raise InvalidParameter(f"tau must have {d} vertices")
    h = star_hypercut(tau, n, p)
    return NamedInstance("star-cut", "chain", h, {"n": n, "d": d, "p": p, "class": "hypercut"})


def _gen_hypersimplex(n: int, k: int | None = None, d: int | None = None, p: int = 2):
    """k-subsets of [n] as (k-1)-simplices; their facet graph is the hypersimplex graph."""
    if k is None:
        if d is None:
            raise InvalidParameter("give k or d")
        k = d + 1
    if not 1 <= k <= n - 1:
        raise InvalidParameter("need 1 <= k <= n-1")
    return NamedInstance("hypersimplex", "complex", closure(combinations(range(1, n + 1), k), n), {"n": n, "k": k, "p": p})


def _gen_pentagon(p: int = 3):
    P, z = pentagon_cells(p)
    return NamedInstance("pentagon-cells", "poset", P, {"p": p, "cycle": z})


def _gen_random_cycle(n: int, d: int, p: int = 3, seed: int = 0):
    z = random_simple_cycle(n, d, p, seed)
    return NamedInstance("random-cycle", "chain", z, {"n": n, "d": d, "p": p, "seed": seed, "class": "simple-cycle"})


GENERATORS: dict[str, Callable[..., NamedInstance]] = {
    "complete": _gen_complete,
    "simplex-boundary": _gen_simplex_boundary,
    "cross-polytope": _gen_cross,
    "torus": _gen_torus,
    "star-tree": _gen_star_tree,
    "perturbed-tree": _gen_perturbed_tree,
    "star-cut": _gen_star_cut,
    "hypersimplex": _gen_hypersimplex,
    "pentagon-cells": _gen_pentagon,
    "random-cycle": _gen_random_cycle,
}


def generate(name: str, **params) -> NamedInstance:
    try:
        fn = GENERATORS[name]
    except KeyError:
        raise InvalidParameter(f"unknown generator {name!r}; choose from {sorted(GENERATORS)}") from None
    try:
        return fn(**{k: v for k, v in params.items() if v is not None})
    except TypeError as exc:
        raise InvalidParameter(f"{name}: {exc}") from None
