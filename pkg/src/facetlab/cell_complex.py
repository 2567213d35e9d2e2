"""Abstract cell complexes: graded posets of open cells with boundary chains.

Cells are identified by string ids. The axioms checked by :func:`validate_axioms`:

* A1 - every closed cell (a cell with everything below it) is a lattice;
* A2 - the boundary composed with itself vanishes;
* A3 - the boundary of every cell is, up to scale, the only cycle of one lower
  dimension inside its closed cell.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping

import numpy as np

from .complex import Complex, Simplex, closure, complex_from_faces, incidence_sign
from .facet_graph import FacetGraph, graph_from_adjacency
from .field import field_context
from .linalg import betti_reduced, kernel_dense, rank_dense
from .structures import complement

EMPTY_ID = "empty"


def simplex_id(s: Simplex) -> str:
    return "-".join(map(str, s)) if s else EMPTY_ID


@dataclass(frozen=True)
class CellPoset:
    """Graded poset of open cells.

    ``dims`` maps id -> dimension, ``covers`` lists ``(lower, upper)`` covering pairs and
    ``boundary`` maps id -> {facet id: coefficient}. Vertices default to boundary
    ``1 * empty``.
    """

    dims: Mapping[str, int]
    covers: tuple
    boundary: Mapping[str, Mapping[str, int]] = field(repr=False)
    p: int = 2
    labels: Mapping[str, object] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        ctx = field_context(self.p)
        dims = dict(self.dims)
        covers = tuple(sorted({(str(a), str(b)) for a, b in self.covers}))
        for a, b in covers:
            if a not in dims or b not in dims:
                raise ValueError(f"cover ({a}, {b}) names an unknown cell")
            if dims[b] != dims[a] + 1:
                raise ValueError(f"cover ({a}, {b}) is not between consecutive dimensions")
        bottoms = [c for c, k in dims.items() if k == -1]
        if len(bottoms) != 1:
            raise ValueError("a cell poset needs exactly one cell of dimension -1")
        below_once: dict = {c: set() for c in dims}
        for a, b in covers:
            below_once[b].add(a)
        bd = {}
        for c, k in dims.items():
            chain = dict(self.boundary.get(c, {}))
            if k == 0 and not chain:
                chain = {bottoms[0]: 1}
            chain = {f: ctx(v) for f, v in chain.items() if ctx(v)}
            stray = set(chain) - below_once[c]
            if stray:
                raise ValueError(f"boundary of {c} uses non-facets {sorted(stray)}")
            bd[c] = chain
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "covers", covers)
        object.__setattr__(self, "boundary", bd)
        object.__setattr__(self, "_facets", {c: frozenset(s) for c, s in below_once.items()})
        below: dict = {}
        for c in sorted(dims, key=lambda x: dims[x]):
            acc = {c}
            for f in below_once[c]:
                acc |= below[f]
            below[c] = frozenset(acc)
        object.__setattr__(self, "_below", below)

    @property
    def empty(self) -> str:
        return next(c for c, k in self.dims.items() if k == -1)

    def cells(self, dim: int | None = None) -> list[str]:
        return sorted(c for c, k in self.dims.items() if dim is None or k == dim)

    def facets(self, c: str) -> frozenset:
        return self._facets[c]

    def closed(self, c: str) -> frozenset:
        """The closed cell: ``c`` and everything below it."""
        return self._below[c]

    def leq(self, a: str, b: str) -> bool:
        return a in self._below[b]

    def closure(self, cells: Iterable[str]) -> frozenset:
        out: set = set()
        for c in cells:
            out |= self._below[c]
        return frozenset(out)


@dataclass(frozen=True)
class AxiomResult:
    ok: bool
    witness: object = None


@dataclass(frozen=True)
class AxiomReport:
    a1: AxiomResult
    a2: AxiomResult
    a3: AxiomResult

    @property
    def ok(self) -> bool:
        return self.a1.ok and self.a2.ok and self.a3.ok


def cell_boundary(P: CellPoset, chain: Mapping[str, int]) -> dict:
    p = P.p
    acc: dict = {}
    for c, v in chain.items():
        for f, w in P.boundary[c].items():
            acc[f] = (acc.get(f, 0) + v * w) % p
    return {f: v for f, v in acc.items() if v}


def _boundary_block(P: CellPoset, cols, rows) -> np.ndarray:
    ri = {r: i for i, r in enumerate(rows)}
    A = np.zeros((len(rows), len(cols)), dtype=np.int64)
    for j, c in enumerate(cols):
        for f, v in P.boundary[c].items():
            if f in ri:
                A[ri[f], j] = v
    return A


def _cycle_space(P: CellPoset, cells) -> np.ndarray:
    """Kernel of the boundary restricted to the given same-dimension cells."""
    cols = sorted(cells)
    rows = sorted({f for c in cols for f in P.boundary[c]})
    return kernel_dense(_boundary_block(P, cols, rows), P.p)


def validate_axioms(P: CellPoset) -> AxiomReport:
    # A1: meets and joins inside every closed cell
    a1 = AxiomResult(True)
    for c in P.cells():
        L = sorted(P.closed(c))
        for x, y in combinations(L, 2):
            ups = [z for z in L if P.leq(x, z) and P.leq(y, z)]
            minimal = [z for z in ups if not any(w != z and P.leq(w, z) for w in ups)]
            downs = [z for z in L if P.leq(z, x) and P.leq(z, y)]
            maximal = [z for z in downs if not any(w != z and P.leq(z, w) for w in downs)]
            if len(minimal) != 1 or len(maximal) != 1:
                a1 = AxiomResult(False, {"cell": c, "pair": [x, y], "joins": minimal, "meets": maximal})
                break
        if not a1.ok:
            break
    # A2: boundary of boundary vanishes
    a2 = AxiomResult(True)
    for c in P.cells():
        if P.dims[c] >= 1:
            bb = cell_boundary(P, P.boundary[c])
            if bb:
                a2 = AxiomResult(False, {"cell": c, "boundary_of_boundary": bb})
                break
    # A3: the boundary spans the cycles of the closed cell
    a3 = AxiomResult(True)
    for c in P.cells():
        k = P.dims[c]
        if k < 1:
            continue
        ridge = [x for x in P.closed(c) if P.dims[x] == k - 1]
        K = _cycle_space(P, ridge)
        bd = P.boundary[c]
        if len(K) != 1 or not bd or cell_boundary(P, bd):
            a3 = AxiomResult(False, {"cell": c, "cycle_space_dim": int(len(K))})
            break
    return AxiomReport(a1, a2, a3)


def is_compatible(P: CellPoset, cells: Iterable[str]) -> bool:
    cells = set(cells)
    if not cells:
        return True
    return any(cells <= P.closed(c) for c in P.cells())


def cell_facet_graph(P: CellPoset, top_cells: Iterable[str]) -> FacetGraph:
    """Graph on the given d-cells; adjacent when they share a (d-1)-cell (the edge label)."""
    top = sorted(set(top_cells))
    if len({P.dims[c] for c in top}) > 1:
        raise ValueError("cells must share one dimension")
    if not top:
        return FacetGraph((), {})
    d = P.dims[top[0]]
    pairs, labels = [], []
    for a, b in combinations(top, 2):
        shared = sorted(x for x in P.facets(a) & P.facets(b) if P.dims[x] == d - 1)
        if shared:
            pairs.append((a, b))
            labels.append(shared[0])
    return graph_from_adjacency(top, pairs, labels)


@dataclass(frozen=True)
class CellCycleCheck:
    is_cycle: bool
    is_simple: bool
    compatible: bool
    min_size_ok: bool | None


def cell_cycle_check(P: CellPoset, z: Mapping[str, int]) -> CellCycleCheck:
    ctx = field_context(P.p)
    z = {c: ctx(v) for c, v in z.items() if ctx(v)}
    if not z:
        return CellCycleCheck(True, False, True, None)
    dims = {P.dims[c] for c in z}
    if len(dims) != 1:
        raise ValueError("chain mixes dimensions")
    d = dims.pop()
    cyc = not cell_boundary(P, z)
    K = _cycle_space(P, z)
    simple = cyc and len(K) == 1 and bool(np.all(K[0] != 0))
    compat = is_compatible(P, z)
    size_ok = (len(z) >= d + 2) if (compat and cyc) else None
    return CellCycleCheck(cyc, simple, compat, size_ok)


def cell_betti_reduced(P: CellPoset, cells: Iterable[str], d: int) -> int:
    """Reduced Betti number of the subcomplex formed by the closures of ``cells``."""
    K = P.closure(cells)
    top = [c for c in K if P.dims[c] == d]
    if not top:
        return 0
    low = sorted(c for c in K if P.dims[c] == d - 1)
    up = sorted(c for c in K if P.dims[c] == d + 1)
    top = sorted(top)
    r_d = rank_dense(_boundary_block(P, top, low), P.p) if low else 0
    r_up = rank_dense(_boundary_block(P, up, top), P.p) if up else 0
    return len(top) - r_d - r_up


def poset_from_complex(k: Complex, p: int = 2) -> CellPoset:
    """Each simplex becomes a cell; boundaries use the simplicial incidence signs."""
    dims, covers, bd, labels = {}, [], {}, {}
    for s in k.all_faces():
        cid = simplex_id(s)
        dims[cid] = len(s) - 1
        labels[cid] = s
        if s:
            chain = {}
            for i in range(len(s)):
                f = s[:i] + s[i + 1:]
                covers.append((simplex_id(f), cid))
                chain[simplex_id(f)] = incidence_sign(s, f)
            bd[cid] = chain
    return CellPoset(dims, tuple(covers), bd, p, labels)


# ---------------------------------------------------------------------------
# Open-face removal on simplicial sphere boundaries
# ---------------------------------------------------------------------------

def open_face_removal(B: Complex, F: Iterable[Simplex]) -> Complex:
    """Remove every face containing a member of ``F`` (their subfaces stay)."""
    F = [tuple(f) for f in F]
    for f in F:
        if not f:
            raise ValueError("the empty face cannot be removed")
        if f not in B:
            raise ValueError(f"{f} is not a face of B")
    kept = [s for s in B.all_faces() if not any(set(f) <= set(s) for f in F)]
    return complex_from_faces(kept, B.n)


@dataclass
class MixedConnectivityReport:
    d: int
    r: int
    instances: int = 0
    violations: list = field(default_factory=list)
    alexander_checked: int = 0
    alexander_mismatches: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations and not self.alexander_mismatches


def _removal_sets(faces, budget: int, exhaustive: bool, samples: int, seed: int):
    if exhaustive:
        for size in range(budget + 1):
            yield from combinations(faces, size)
        return
    rng = random.Random(seed)
    yield ()
    for _ in range(samples):
        size = rng.randint(1, budget) if budget else 0
        yield tuple(sorted(rng.sample(faces, size)))


def mixed_connectivity_check(
    B: Complex,
    d: int,
    r: int,
    p: int = 2,
    face_dims: Iterable[int] | None = None,
    exhaustive: bool = True,
    samples: int = 200,
    seed: int = 0,
    alexander: bool | None = None,
) -> MixedConnectivityReport:
    """Remove every set of at most d-r open faces and test homological r-connectivity.

    When ``B`` is the boundary of the simplex on ``[d+2]`` (or ``alexander=True``) each
    Betti number is also compared with the one computed on the closure of the
    complementary faces.
    """
    if not 0 <= r <= d - 1:
        raise ValueError("need 0 <= r <= d-1")
    if alexander is None:
        alexander = B.n == d + 2 and len(B.skeleton(d)) == d + 2
    dims = set(range(0, d + 1)) if face_dims is None else set(face_dims)
    pool = [s for s in B.all_faces() if s and len(s) - 1 in dims]
    rep = MixedConnectivityReport(d, r)
    for F in _removal_sets(pool, d - r, exhaustive, samples, seed):
        R = open_face_removal(B, F)
        rep.instances += 1
        bettis = [betti_reduced(R, i, p) for i in range(0, r + 1)]
        if any(bettis) or not R.faces.get(r):
            rep.violations.append({"F": [list(f) for f in F], "betti": bettis, "r_faces": len(R.faces.get(r, ()))})
        if alexander:
            dual_side = closure([complement(f, B.n) for f in F], B.n)
            for i in range(0, r + 1):
                rep.alexander_checked += 1
                other = betti_reduced(dual_side, d - i - 1, p)
                if other != bettis[i]:
                    rep.alexander_mismatches.append({"F": [list(f) for f in F], "i": i, "direct": bettis[i], "dual": other})
    return rep
