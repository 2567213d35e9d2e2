"""Named, repeatable theorem checks over parameter grids.

Each registered check turns a :class:`CheckSpec` into a list of JSON-able instance
dicts and runs every instance independently. Violations carry the instance dict, so
:func:`recheck` can reproduce them.
"""
from __future__ import annotations

import json
import os
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from itertools import combinations, islice
from math import comb
from typing import Callable, Iterable, Iterator

import numpy as np

from .cell_complex import (
    cell_cycle_check,
    cell_facet_graph,
    is_compatible,
    open_face_removal,
    poset_from_complex,
    validate_axioms,
)
from .collapse import collapse_small_set, express_cycle_as_boundary, replay
from .complex import Chain, boundary, boundary_matrix, closure, coboundary
from .facet_graph import (
    build_facet_graph,
    components_after_removal,
    connected_after_mixed_removal,
    hypersimplex_graph,
    two_coloring,
    vertex_connectivity,
)
from .generators import (
    cell_zoo,
    cross_polytope_cycle,
    is_pseudomanifold,
    pentagon_cells,
    pillow_poset,
    random_simple_cycle,
    simplex_boundary_cycle,
    torus_cycle,
)
from .linalg import (
    betti_reduced,
    compressed_family,
    cycle_space_dim,
    kernel_basis,
    max_cycle_dim_bruteforce,
    rank_dense,
)
from .structures import (
    CIRCUIT_LIMIT,
    biconnected_classes,
    complement,
    contains_hypertree,
    d_faces,
    double_dual_sign,
    dual,
    enumerate_hypercuts,
    fundamental_cycle,
    hypertree_greedy,
    is_hypercut,
    is_simple_cycle,
    perturbed_hypertree,
    star_hypercut,
    star_hypertree,
)

GRID_LIMIT = 10**7


class UnknownTheorem(KeyError):
    pass


class GridTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class CheckSpec:
    theorem_id: str
    n: tuple | None = None
    d: tuple | None = None
    p: tuple | None = None
    seeds: int = 10
    exhaustive: bool = False
    samples: int = 200

    def pick(self, name: str, default: Iterable) -> list:
        v = getattr(self, name)
        return list(default) if v is None else list(v)


@dataclass
class CheckReport:
    theorem_id: str
    instances_run: int = 0
    violations: list = field(default_factory=list)
    extremes: dict = field(default_factory=dict)
    kappa_distribution: dict = field(default_factory=dict)
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return asdict(self)

    @classmethod
    def from_json(cls, d: dict) -> CheckReport:
        return cls(**d)


@dataclass
class Outcome:
    violations: list = field(default_factory=list)
    obs: dict = field(default_factory=dict)
    group: str | None = None

    def fail(self, why: str, **detail):
        self.violations.append({"reason": why, **detail})


@dataclass(frozen=True)
class Check:
    theorem_id: str
    summary: str
    instances: Callable[[CheckSpec], Iterable[dict]]
    run: Callable[[dict], Outcome]


REGISTRY: dict[str, Check] = {}


def register(theorem_id: str, summary: str, instances):
    def wrap(fn):
        REGISTRY[theorem_id] = Check(theorem_id, summary, instances, fn)
        return fn
    return wrap


# ---------------------------------------------------------------------------
# Shared builders (cached by their JSON key)
# ---------------------------------------------------------------------------

def _key(d: dict) -> str:
    return json.dumps(d, sort_keys=True)


@lru_cache(maxsize=4096)
def _cycle_cached(key: str) -> Chain:
    c = json.loads(key)
    src = c["src"]
    if src == "random":
        return random_simple_cycle(c["n"], c["d"], c["p"], c["seed"])
    if src == "cross":
        return cross_polytope_cycle(c["d"], c["p"])
    if src == "torus":
        return torus_cycle(c["k"], c["p"])
    if src == "simplex":
        return simplex_boundary_cycle(tuple(range(1, c["d"] + 3)), c["p"])
    raise ValueError(f"unknown cycle source {src!r}")


def make_cycle(inst: dict) -> Chain:
    keys = ("src", "n", "d", "p", "seed", "k")
    return _cycle_cached(_key({k: inst[k] for k in keys if k in inst}))


@lru_cache(maxsize=512)
def _graph_cached(key: str):
    return build_facet_graph(_cycle_cached(key))


def cycle_graph(inst: dict):
    keys = ("src", "n", "d", "p", "seed", "k")
    return _graph_cached(_key({k: inst[k] for k in keys if k in inst}))


@lru_cache(maxsize=64)
def _hypercuts(n: int, d: int, p: int) -> tuple:
    return tuple(enumerate_hypercuts(n, d, p))


def _cycle_sources(spec: CheckSpec, ds=(1, 2, 3), nmax=7, ps=(2, 3, 5)) -> Iterator[dict]:
    ds = spec.pick("d", ds)
    ps = spec.pick("p", ps)
    for d in ds:
        for n in spec.pick("n", range(d + 2, nmax + 1)):
            if n < d + 2:
                continue
            for p in ps:
                for seed in range(spec.seeds):
                    yield {"src": "random", "n": n, "d": d, "p": p, "seed": seed}
    for d in ds:
        for p in ps:
            yield {"src": "simplex", "d": d, "p": p}
            yield {"src": "cross", "d": d, "p": p}
    if 2 in ds:
        for p in ps:
            yield {"src": "torus", "d": 2, "k": 4, "p": p}


# ---------------------------------------------------------------------------
# Simple cycles
# ---------------------------------------------------------------------------

@register("cycle-connectivity", "facet graphs of simple d-cycles are (d+1)-connected", _cycle_sources)
def _run_cycle_connectivity(inst: dict) -> Outcome:
    out = Outcome()
    z = make_cycle(inst)
    d = z.dim
    if not is_simple_cycle(z):
        out.fail("generated chain is not a simple cycle")
        return out
    k = vertex_connectivity(cycle_graph(inst))
    pm = is_pseudomanifold(z)
    if len(z) < d + 2:
        out.fail("support smaller than d+2", size=len(z))
    if k < d + 1:
        out.fail("connectivity below d+1", kappa=k)
    if pm and k != d + 1:
        out.fail("pseudomanifold connectivity differs from d+1", kappa=k)
    out.obs = {"kappa": k, "kappa_excess": k - d - 1, "size": len(z)}
    out.group = f"d={d}" + (" pseudomanifold" if pm else "")
    return out


def _mixed_instances(spec: CheckSpec):
    for inst in _cycle_sources(spec, ds=(1, 2, 3), nmax=6):
        if inst["src"] == "random" and inst["seed"] >= max(1, spec.seeds // 2):
            continue
        yield {**inst, "exhaustive": spec.exhaustive, "samples": spec.samples}


@register("cycle-mixed-removal", "r vertices plus q face-cliques with r+q <= d never disconnect", _mixed_instances)
def _run_mixed_removal(inst: dict) -> Outcome:
    out = Outcome()
    z = make_cycle(inst)
    d = z.dim
    g = cycle_graph(inst)
    labels = sorted(set(g.edges.values()))
    N, L = g.order, len(labels)
    splits = [(r, q) for r in range(d + 1) for q in range(d + 1 - r)]
    total = sum(comb(N, r) * comb(L, q) for r, q in splits)
    if inst.get("exhaustive") and total <= 200_000:
        trials = (
            (vs, qs)
            for r, q in splits
            for vs in combinations(range(N), r)
            for qs in combinations(labels, q)
        )
    else:
        rng = random.Random(_key(inst))

        def sample():
            for _ in range(inst.get("samples", 200)):
                r, q = rng.choice(splits)
                yield tuple(rng.sample(range(N), min(r, N))), tuple(rng.sample(labels, min(q, L)))

        trials = sample()
    count = 0
    for vs, qs in trials:
        count += 1
        if not connected_after_mixed_removal(g, vs, qs):
            out.fail("disconnected", vertices=[list(g.vertices[i]) for i in vs], labels=[list(x) for x in qs])
    out.obs = {"removals": count}
    out.group = f"d={d}"
    return out


def _bicon_instances(spec: CheckSpec):
    for d in spec.pick("d", (1, 2)):
        for n in spec.pick("n", range(d + 3, 7)):
            total = comb(n, d + 1)
            for p in spec.pick("p", (2, 3)):
                for seed in range(spec.seeds):
                    yield {"n": n, "d": d, "p": p, "seed": seed, "size": min(14, total, CIRCUIT_LIMIT)}


@register("biconnected-sets", "classes of the common-simple-cycle relation have (d+1)-connected facet graphs", _bicon_instances)
def _run_biconnected(inst: dict) -> Outcome:
    out = Outcome()
    rng = random.Random(_key(inst))
    faces = sorted(rng.sample(d_faces(inst["n"], inst["d"]), inst["size"]))
    d = inst["d"]
    classes = biconnected_classes(faces, inst["p"])
    if sorted(s for c in classes for s in c) != faces:
        out.fail("classes do not partition the set")
    worst = None
    for cls in classes:
        if len(cls) < 2:
            continue
        k = vertex_connectivity(build_facet_graph(cls))
        worst = k if worst is None else min(worst, k)
        if k < d + 1:
            out.fail("class facet graph below d+1", cls=[list(s) for s in sorted(cls)], kappa=k)
    out.obs = {"classes": len(classes)}
    if worst is not None:
        out.obs["kappa"] = worst
    out.group = f"d={d}"
    return out


# ---------------------------------------------------------------------------
# Hypertrees and hypercuts
# ---------------------------------------------------------------------------

def _tree_instances(spec: CheckSpec):
    for d in spec.pick("d", (1, 2, 3)):
        for n in spec.pick("n", range(d + 2, 9)):
            if n < d + 2:
                continue
            for p in spec.pick("p", (2, 3)):
                for kind in ("star", "greedy", "perturbed"):
                    yield {"n": n, "d": d, "p": p, "kind": kind}
                for seed in range(spec.seeds):
                    yield {"n": n, "d": d, "p": p, "kind": "random", "seed": seed}


def _make_tree(inst: dict):
    n, d, p = inst["n"], inst["d"], inst["p"]
    kind = inst["kind"]
    if kind == "star":
        return star_hypertree(n, d, p)
    if kind == "perturbed":
        return perturbed_hypertree(n, d, p)
    if kind == "greedy":
        return hypertree_greedy(n, d, p)
    return hypertree_greedy(n, d, p, seed=inst["seed"])


@register("tree-connectivity", "facet graphs of d-hypertrees are d-connected; the perturbed star is tight", _tree_instances)
def _run_tree(inst: dict) -> Outcome:
    out = Outcome()
    t = _make_tree(inst)
    d = t.d
    g = build_facet_graph(t.simplices)
    k = vertex_connectivity(g)
    if k < d:
        out.fail("connectivity below d", kappa=k)
    if inst["kind"] == "perturbed":
        new = tuple(range(1, d + 2))
        deg = g.degree(g.index(new))
        if deg != d or min(g.degrees()) != d:
            out.fail("perturbed tree is not tight", degree=deg, min_degree=min(g.degrees()))
    rng = random.Random(_key(inst))
    outside = [s for s in d_faces(t.n, d) if s not in t]
    if outside and not is_simple_cycle(fundamental_cycle(t, rng.choice(outside))):
        out.fail("fundamental cycle is not simple")
    out.obs = {"kappa": k, "min_degree": min(g.degrees())}
    out.group = f"d={d} {inst['kind']}"
    return out


def _small_complete_grid(spec: CheckSpec, ds=(1, 2, 3), nmax=7):
    for d in spec.pick("d", ds):
        for n in spec.pick("n", range(d + 2, nmax + 1)):
            if n >= d + 2 and comb(n, d + 1) <= CIRCUIT_LIMIT:
                yield n, d


def _rconn_instances(spec: CheckSpec):
    for n, d in _small_complete_grid(spec):
        for p in spec.pick("p", (2, 3)):
            for seed in range(spec.seeds):
                yield {"n": n, "d": d, "p": p, "seed": seed}


@register("r-connected-complex", "a complex meeting every hypercut r times has a (d+r-1)-connected facet graph", _rconn_instances)
def _run_rconn(inst: dict) -> Outcome:
    out = Outcome()
    n, d, p = inst["n"], inst["d"], inst["p"]
    rng = random.Random(_key(inst))
    faces = d_faces(n, d)
    drop = rng.randint(0, max(0, len(faces) // 3))
    K = set(faces) - set(rng.sample(faces, drop))
    r = min(sum(1 for s in h.support() if s in K) for h in _hypercuts(n, d, p))
    out.obs = {"r": r}
    if r < 1:
        return out
    k = vertex_connectivity(build_facet_graph(K))
    out.obs["kappa"] = k
    out.group = f"n={n} d={d}"
    if k < d + r - 1:
        out.fail("connectivity below d+r-1", faces=[list(s) for s in sorted(K)], r=r, kappa=k)
    return out


def _hcomp_instances(spec: CheckSpec):
    for n, d in _small_complete_grid(spec):
        for p in spec.pick("p", (2, 3)):
            yield {"n": n, "d": d, "p": p}


@register("hypercut-complement", "complements of d-hypercuts have (d-1)-connected facet graphs", _hcomp_instances)
def _run_hcomp(inst: dict) -> Outcome:
    out = Outcome()
    n, d, p = inst["n"], inst["d"], inst["p"]
    faces = d_faces(n, d)
    worst = None
    for h in _hypercuts(n, d, p):
        rest = [s for s in faces if s not in h.support()]
        if contains_hypertree(rest, n, d, p):
            out.fail("hypercut misses a hypertree", cut=[list(s) for s in sorted(h.support())])
        if not rest:
            continue
        k = vertex_connectivity(build_facet_graph(rest))
        worst = k if worst is None else min(worst, k)
        if k < d - 1:
            out.fail("complement connectivity below d-1", cut=[list(s) for s in sorted(h.support())], kappa=k)
    out.obs = {"kappa": worst if worst is not None else -1, "hypercuts": len(_hypercuts(n, d, p))}
    out.group = f"d={d}"
    return out


def _hcut_instances(spec: CheckSpec):
    ps = spec.pick("p", (2, 3, 5))
    ns = spec.pick("n", range(4, 8))
    for n in ns:
        for d in range(1, n - 1):
            for p in ps:
                yield {"src": "star", "n": n, "d": d, "p": p}
    for n in ns:
        for k in range(1, n - 2):
            if n < k + 2:
                continue
            for p in ps:
                for seed in range(spec.seeds):
                    yield {"src": "dual", "n": n, "k": k, "p": p, "seed": seed}
    for n in ns:
        for d in range(1, n - 1):
            if comb(n, d + 1) <= CIRCUIT_LIMIT:
                yield {"src": "all", "n": n, "d": d, "p": ps[0]}


@register("hypercut-connectivity", "facet graphs of d-hypercuts are (n-d-1)-connected; star cuts are cliques", _hcut_instances)
def _run_hcut(inst: dict) -> Outcome:
    out = Outcome()
    n, p = inst["n"], inst["p"]
    if inst["src"] == "star":
        d = inst["d"]
        cuts = [star_hypercut(tuple(range(1, d + 1)), n, p)]
    elif inst["src"] == "dual":
        z = random_simple_cycle(n, inst["k"], p, inst["seed"])
        cuts = [dual(z, n)]
    else:
        cuts = list(_hypercuts(n, inst["d"], p))
    worst = None
    for h in cuts:
        d = h.dim
        if not is_hypercut(h, n):
            out.fail("not a hypercut", terms=[[list(s), c] for s, c in h.sorted_terms()])
            continue
        g = build_facet_graph(h)
        k = vertex_connectivity(g)
        worst = k if worst is None else min(worst, k)
        if k < n - d - 1:
            out.fail("connectivity below n-d-1", terms=[[list(s), c] for s, c in h.sorted_terms()], kappa=k)
        if inst["src"] == "star" and (k != n - d - 1 or g.size != comb(g.order, 2) or g.order != n - d):
            out.fail("star hypercut is not an (n-d)-clique", kappa=k, order=g.order)
    out.obs = {"kappa": worst if worst is not None else -1}
    out.group = f"{inst['src']} n={n}"
    return out


def _cocycle_instances(spec: CheckSpec):
    for n in spec.pick("n", (5, 6, 7)):
        for p in spec.pick("p", (2, 3, 5)):
            for seed in range(spec.seeds):
                yield {"n": n, "p": p, "seed": seed}
    for p in spec.pick("p", (2, 3, 5)):
        yield {"witness": True, "n": 7, "p": p, "tau": [1, 2, 3], "tau2": [4, 5, 6]}


def random_two_cocycle(n: int, p: int, seed: int) -> Chain:
    """Coboundary of a random nonzero 1-cochain; resampled until nonzero."""
    rng = random.Random(seed)
    edges = d_faces(n, 1)
    while True:
        pick = rng.sample(edges, rng.randint(1, len(edges)))
        c = Chain(1, {e: rng.randrange(1, p) for e in pick}, p)
        h = coboundary(c, n)
        if h:
            return h


@register("two-cocycle", "nonzero 2-cocycles have 2-connected facet graphs; a 3-cocycle can be disconnected", _cocycle_instances)
def _run_cocycle(inst: dict) -> Outcome:
    out = Outcome()
    n, p = inst["n"], inst["p"]
    if inst.get("witness"):
        h = star_hypercut(tuple(inst["tau"]), n, p) + star_hypercut(tuple(inst["tau2"]), n, p)
        g = build_facet_graph(h)
        comps = components_after_removal(g, ())
        out.obs = {"components": comps}
        out.group = "witness d=3"
        if h.dim != 3 or comps < 2:
            out.fail("witness cocycle is connected", components=comps)
        if coboundary(h, n):
            out.fail("witness is not a cocycle")
        return out
    h = random_two_cocycle(n, p, inst["seed"])
    k = vertex_connectivity(build_facet_graph(h))
    out.obs = {"kappa": k, "size": len(h)}
    out.group = f"n={n}"
    if k < 2:
        out.fail("2-cocycle facet graph below 2", terms=[[list(s), c] for s, c in h.sorted_terms()], kappa=k)
    return out


# ---------------------------------------------------------------------------
# Duality
# ---------------------------------------------------------------------------

def _dual_instances(spec: CheckSpec):
    for n in spec.pick("n", range(2, 9)):
        for p in spec.pick("p", (2, 3, 5)):
            for seed in range(spec.seeds):
                yield {"n": n, "p": p, "seed": seed}


def random_chain(n: int, p: int, seed: int) -> Chain:
    rng = random.Random(seed)
    k = rng.randint(1, n)
    faces = list(combinations(range(1, n + 1), k))
    pick = rng.sample(faces, min(len(faces), rng.randint(1, 6)))
    return Chain(k - 1, {s: rng.randrange(p) for s in pick}, p)


@register("duality-identity", "the dual of a boundary is the coboundary of the dual", _dual_instances)
def _run_dual_identity(inst: dict) -> Outcome:
    out = Outcome()
    n = inst["n"]
    c = random_chain(n, inst["p"], _mix(inst))
    lhs = dual(boundary(c), n)
    rhs = coboundary(dual(c, n), n)
    if lhs != rhs:
        out.fail("identity fails", chain=[[list(s), v] for s, v in c.sorted_terms()], dim=c.dim)
    out.obs = {"terms": len(c)}
    return out


@register("double-dual", "dualizing twice multiplies by a sign depending only on n", _dual_instances)
def _run_double_dual(inst: dict) -> Outcome:
    out = Outcome()
    n = inst["n"]
    c = random_chain(n, inst["p"], _mix(inst))
    if dual(dual(c, n), n) != double_dual_sign(n) * c:
        out.fail("double dual sign mismatch", chain=[[list(s), v] for s, v in c.sorted_terms()], dim=c.dim)
    return out


def _mix(inst: dict) -> int:
    return inst["seed"] * 1000003 + inst["n"] * 101 + inst["p"]


def _iso_instances(spec: CheckSpec):
    for n in spec.pick("n", range(4, 8)):
        for d in spec.pick("d", (1, 2, 3)):
            if n - d - 2 < 1:
                continue
            for p in spec.pick("p", (2, 3)):
                for seed in range(spec.seeds):
                    yield {"n": n, "d": d, "p": p, "seed": seed}


@register("duality-graph-isomorphism", "complementation maps the facet graph of a circuit onto that of its dual hypercut", _iso_instances)
def _run_iso(inst: dict) -> Outcome:
    out = Outcome()
    n = inst["n"]
    z = random_simple_cycle(n, inst["d"], inst["p"], inst["seed"])
    h = dual(z, n)
    if not is_hypercut(h, n):
        out.fail("dual of a simple cycle is not a hypercut")
    gz, gh = build_facet_graph(z), build_facet_graph(h)
    mapped = {frozenset(complement(s, n) for s in e) for e in gz.edge_pairs()}
    if mapped != gh.edge_pairs() or gz.order != gh.order:
        out.fail("complement map is not a graph isomorphism")
    out.obs = {"order": gz.order, "size": gz.size}
    return out


# ---------------------------------------------------------------------------
# Small sets, components, Betti bounds
# ---------------------------------------------------------------------------

def _small_set_instances(spec: CheckSpec):
    for d in spec.pick("d", (2, 3, 4)):
        for n in spec.pick("n", range(d + 2, 9)):
            if n < d + 1:
                continue
            for seed in range(spec.seeds):
                yield {"n": n, "d": d, "p": spec.pick("p", (3,))[seed % len(spec.pick("p", (3,)))], "seed": seed}


def random_small_set(n: int, d: int, seed: int) -> list:
    rng = random.Random(seed * 7919 + n * 31 + d)
    out = set()
    for _ in range(rng.randint(1, d)):
        k = d if rng.random() < 0.6 else rng.randint(0, d)
        k = min(k, n - 1)
        out.add(tuple(sorted(rng.sample(range(1, n + 1), k + 1))))
    return sorted(out)


@register("small-set-acyclicity", "every (d-1)-cycle on the closure of at most d simplices bounds", _small_set_instances)
def _run_small_set(inst: dict) -> Outcome:
    out = Outcome()
    n, d, p = inst["n"], inst["d"], inst["p"]
    D = random_small_set(n, d, inst["seed"])
    K = closure(D, n)
    cert = collapse_small_set(d, D)
    res = replay(cert.start, cert.steps)
    if res != cert.residual or res.faces.get(d) or res.faces.get(d - 1):
        out.fail("collapse leaves d- or (d-1)-faces", D=[list(s) for s in D])
    b = betti_reduced(K, d - 1, p)
    if b:
        out.fail("reduced Betti number in dimension d-1 is nonzero", D=[list(s) for s in D], betti=b)
    rng = random.Random(_key(inst))
    if K.faces.get(d - 1):
        basis = kernel_basis(boundary_matrix(K, d - 1, p)).vectors
        z = Chain.zero(d - 1, p)
        for v in basis:
            z = z + rng.randrange(p) * v
        u = express_cycle_as_boundary(z, D, d)
        if boundary(u) != z or not u.support() <= set(D):
            out.fail("cycle not expressed as a boundary on D", D=[list(s) for s in D])
    out.obs = {"steps": len(cert.steps), "size": len(D)}
    out.group = f"d={d}"
    return out


def _removal_instances(spec: CheckSpec):
    """Exhaustive small removals on the octahedron and the 4x4 torus, sampled ones elsewhere."""
    ps = spec.pick("p", (3,))
    budget = 4 if spec.exhaustive else 2
    for base in ({"src": "cross", "d": 2}, {"src": "torus", "d": 2, "k": 4}):
        inst = {**base, "p": ps[0]}
        N = len(make_cycle(inst))
        for s in range(1, budget + 1):
            for S in combinations(range(N), s):
                yield {**inst, "S": list(S)}
    for d in (1, 2, 3):
        yield {"src": "cross", "d": d, "p": ps[0], "S": "class"}
    for d in spec.pick("d", (1, 2, 3)):
        for n in spec.pick("n", range(d + 2, 8)):
            if n < d + 2:
                continue
            for seed in range(spec.seeds):
                inst = {"src": "random", "n": n, "d": d, "p": ps[seed % len(ps)], "seed": seed}
                N = len(make_cycle(inst))
                rng = random.Random(_key(inst))
                for _ in range(5):
                    s = rng.randint(1, max(1, N - 1))
                    yield {**inst, "S": sorted(rng.sample(range(N), s))}


def _removal_set(inst: dict, g) -> list[int]:
    if inst["S"] == "class":
        color = two_coloring(g)
        return [i for i, c in enumerate(color) if c == 0]
    return list(inst["S"])


@register("toughness", "removing s facet-graph vertices leaves at most s components", _removal_instances)
def _run_toughness(inst: dict) -> Outcome:
    out = Outcome()
    g = cycle_graph(inst)
    S = _removal_set(inst, g)
    m = components_after_removal(g, S)
    if m > max(len(S), 1):
        out.fail("more components than removed vertices", S=S, components=m)
    if inst["S"] == "class" and m != len(S):
        out.fail("bipartition class removal is not tight", S=S, components=m)
    out.obs = {"components": m, "removed": len(S)}
    out.group = inst["src"]
    return out


@register("component-bound", "components after removing D number at most 1 + reduced Betti(d-1) of its closure", _removal_instances)
def _run_component_bound(inst: dict) -> Outcome:
    out = Outcome()
    z = make_cycle(inst)
    g = cycle_graph(inst)
    S = _removal_set(inst, g)
    m = components_after_removal(g, S)
    out.obs = {"components": m}
    if m > 1:
        b = betti_reduced(closure([g.vertices[i] for i in S]), z.dim - 1, z.p)
        out.obs["betti"] = b
        if m > 1 + b:
            out.fail("component count exceeds 1 + betti", S=S, components=m, betti=b)
    out.group = inst["src"]
    return out


def _localization_instances(spec: CheckSpec):
    for inst in _removal_instances(spec):
        if inst["S"] == "class" or len(inst["S"]) <= 6:
            yield inst


def _component_sets(g, S) -> list[list[int]]:
    alive = set(range(g.order)) - set(S)
    comps, seen = [], set()
    for s in sorted(alive):
        if s in seen:
            continue
        stack, comp = [s], []
        seen.add(s)
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in g.neighbors(x):
                if y in alive and y not in seen:
                    seen.add(y)
                    stack.append(y)
        comps.append(sorted(comp))
    return comps


@register("components-localization", "components after removal yield disjoint (d-1)-cycles on the removed closure", _localization_instances)
def _run_localization(inst: dict) -> Outcome:
    out = Outcome()
    z = make_cycle(inst)
    g = cycle_graph(inst)
    S = _removal_set(inst, g)
    comps = _component_sets(g, S)
    m = len(comps)
    out.obs = {"components": m}
    out.group = inst["src"]
    if m <= 1:
        return out
    p, d = z.p, z.dim
    D = [g.vertices[i] for i in S]
    KD = closure(D)
    cs = [boundary(z.restrict({g.vertices[i] for i in comp})) for comp in comps]
    for i, j in combinations(range(m), 2):
        if cs[i].support() & cs[j].support():
            out.fail("component cycles share a face", S=S, pair=[i, j])
    if any(not c.support() <= set(KD.faces.get(d - 1, ())) for c in cs):
        out.fail("component cycle leaves the closure of D", S=S)
    rows = sorted({f for c in cs for f in c.support()} | set(KD.faces.get(d - 1, ())))
    ri = {r: k for k, r in enumerate(rows)}

    def col(c):
        v = np.zeros(len(rows), dtype=np.int64)
        for s, x in c.terms.items():
            v[ri[s]] = x
        return v

    bcols = [col(boundary(Chain.of(s, 1, p))) for s in D]
    rb = rank_dense(np.array(bcols).T, p) if bcols else 0
    allc = [col(c) for c in cs]
    full = rank_dense(np.array(allc + bcols).T, p)
    if full != m - 1 + rb:
        out.fail("all component cycles are not dependent modulo boundaries", S=S)
    for leave in range(m):
        part = [allc[i] for i in range(m) if i != leave]
        if rank_dense(np.array(part + bcols).T, p) != m - 1 + rb:
            out.fail("m-1 component cycles are dependent modulo boundaries", S=S, left_out=leave)
    return out


def _betti_instances(spec: CheckSpec):
    for d in spec.pick("d", (1, 2, 3)):
        for n in spec.pick("n", range(d + 2, 9)):
            for seed in range(spec.seeds):
                yield {"kind": "crude", "n": n, "d": d, "p": spec.pick("p", (2, 3))[seed % len(spec.pick("p", (2, 3)))], "seed": seed}
    for n in range(2, 8):
        for r in range(0, n - 1):
            yield {"kind": "skeleton", "n": n, "r": r, "p": 2}
    for n in range(2, 8):
        for r in range(0, n):
            total = comb(n, r + 1)
            if total <= 15:
                for t in range(1, total + 1):
                    yield {"kind": "compressed", "n": n, "r": r, "t": t, "p": 2}


@register("betti-crude-bound", "reduced Betti(d-1) of K(D) is at most d|D|; skeleton and compressed-family extremes", _betti_instances)
def _run_betti(inst: dict) -> Outcome:
    out = Outcome()
    kind = inst["kind"]
    out.group = kind
    if kind == "crude":
        n, d, p = inst["n"], inst["d"], inst["p"]
        rng = random.Random(_key(inst))
        faces = d_faces(n, d)
        D = rng.sample(faces, rng.randint(1, min(len(faces), 3 * n)))
        b = betti_reduced(closure(D, n), d - 1, p)
        out.obs = {"betti": b, "slack": d * len(D) - b}
        if b > d * len(D):
            out.fail("betti exceeds d|D|", D=[list(s) for s in sorted(D)], betti=b)
    elif kind == "skeleton":
        n, r = inst["n"], inst["r"]
        got = cycle_space_dim(combinations(range(1, n + 1), r + 1), inst["p"])
        out.obs = {"dim": got}
        if got != comb(n - 1, r + 1):
            out.fail("full skeleton cycle space has the wrong dimension", got=got, expected=comb(n - 1, r + 1))
    else:
        n, r, t, p = inst["n"], inst["r"], inst["t"], inst["p"]
        best = max_cycle_dim_bruteforce(n, r, t, p)
        for order in ("colex", "revlex"):
            got = cycle_space_dim(compressed_family(n, r, t, order), p)
            if got != best:
                out.fail("compressed family is not optimal", order=order, got=got, best=best)
        out.obs = {"best": best}
    return out


# ---------------------------------------------------------------------------
# Hypersimplex graphs
# ---------------------------------------------------------------------------

def _hypersimplex_instances(spec: CheckSpec):
    for n in spec.pick("n", range(2, 8)):
        for d in spec.pick("d", range(0, n - 1)):
            if 0 <= d <= n - 2:
                yield {"n": n, "d": d}


@register("hypersimplex-connectivity", "the hypersimplex graph G(n, d+1) is (d+1)(n-d-1)-connected", _hypersimplex_instances)
def _run_hypersimplex(inst: dict) -> Outcome:
    out = Outcome()
    n, d = inst["n"], inst["d"]
    k = vertex_connectivity(hypersimplex_graph(n, d + 1))
    want = (d + 1) * (n - d - 1)
    out.obs = {"kappa": k}
    out.group = f"n={n}"
    if k != want:
        out.fail("connectivity differs from (d+1)(n-d-1)", kappa=k, expected=want)
    return out


# ---------------------------------------------------------------------------
# Cell complexes and open-face removal
# ---------------------------------------------------------------------------

def sphere_boundary(kind: str, d: int):
    """Boundary complex of the (d+1)-simplex on [d+2] or of the (d+1)-cross-polytope."""
    if kind == "simplex":
        return closure(combinations(range(1, d + 3), d + 1), d + 2)
    return closure(cross_polytope_cycle(d, 2).support(), 2 * d + 2)


def _mixed_conn_instances(spec: CheckSpec):
    for d in spec.pick("d", (1, 2, 3)):
        B = sphere_boundary("simplex", d)
        pool = [list(s) for s in B.all_faces() if s]
        for r in range(0, d):
            for size in range(0, d - r + 1):
                for F in combinations(pool, size):
                    yield {"B": "simplex", "d": d, "r": r, "F": list(F)}
        B = sphere_boundary("cross", d)
        pool = [list(s) for s in B.all_faces() if s]
        rng = random.Random(d)
        for r in range(0, d):
            for _ in range(spec.samples // 4):
                size = rng.randint(0, d - r)
                yield {"B": "cross", "d": d, "r": r, "F": sorted(rng.sample(pool, size))}


@lru_cache(maxsize=16)
def _sphere(kind: str, d: int):
    return sphere_boundary(kind, d)


@register("mixed-connectivity", "removing at most d-r open faces keeps a sphere boundary homologically r-connected", _mixed_conn_instances)
def _run_mixed_conn(inst: dict) -> Outcome:
    out = Outcome()
    d, r = inst["d"], inst["r"]
    B = _sphere(inst["B"], d)
    F = [tuple(f) for f in inst["F"]]
    R = open_face_removal(B, F)
    bettis = [betti_reduced(R, i, 2) for i in range(0, r + 1)]
    if any(bettis) or not R.faces.get(r):
        out.fail("not homologically r-connected", betti=bettis)
    if inst["B"] == "simplex":
        other = closure([complement(f, B.n) for f in F], B.n)
        dual_b = [betti_reduced(other, d - i - 1, 2) for i in range(0, r + 1)]
        if dual_b != bettis:
            out.fail("Alexander dual Betti numbers disagree", direct=bettis, dual=dual_b)
    out.obs = {"removed": len(F)}
    out.group = f"{inst['B']} d={d} r={r}"
    return out


@lru_cache(maxsize=64)
def named_poset(name: str, p: int):
    if name == "pillow":
        return pillow_poset(p)
    if name == "pentagon":
        return pentagon_cells(p)[0]
    if name.startswith("import-"):
        _, src, *rest = name.split("-")
        if src == "cross":
            z = cross_polytope_cycle(int(rest[0]), p)
        elif src == "torus":
            z = torus_cycle(int(rest[0]), p)
        else:
            n, d, seed = map(int, rest)
            z = random_simple_cycle(n, d, p, seed)
        return poset_from_complex(closure(z.support()), p)
    return cell_zoo(p)[name]


def _poset_names(spec: CheckSpec, with_bad: bool):
    names = list(cell_zoo(2)) + ["import-cross-1", "import-cross-2", "import-torus-4"]
    names += [f"import-random-{n}-{d}-{s}" for n, d in ((5, 2), (6, 2), (6, 3)) for s in range(min(spec.seeds, 5))]
    if with_bad:
        names += ["pillow", "pentagon"]
    for p in spec.pick("p", (2, 3)):
        for name in names:
            yield {"poset": name, "p": p}


@register("cell-axioms", "generated cell posets satisfy the lattice, boundary and simple-boundary axioms", lambda s: _poset_names(s, True))
def _run_cell_axioms(inst: dict) -> Outcome:
    out = Outcome()
    P = named_poset(inst["poset"], inst["p"])
    rep = validate_axioms(P)
    expect_a1 = inst["poset"] != "pillow"
    if rep.a1.ok != expect_a1 or not rep.a2.ok or not rep.a3.ok:
        out.fail("unexpected axiom outcome", a1=rep.a1.ok, a2=rep.a2.ok, a3=rep.a3.ok)
    if inst["poset"].startswith("import-"):
        top = max(P.dims.values())
        cells = P.cells(top)
        g1 = cell_facet_graph(P, cells)
        g2 = build_facet_graph([P.labels[c] for c in cells])
        if {frozenset(P.labels[c] for c in e) for e in g1.edge_pairs()} != g2.edge_pairs():
            out.fail("cell facet graph differs from the simplicial facet graph")
    out.group = "import" if inst["poset"].startswith("import-") else inst["poset"]
    return out


@register("cell-cycle-connectivity", "compatible simple cell cycles have size >= d+2 and (d+1)-connected facet graphs", lambda s: _poset_names(s, False))
def _run_cell_cycles(inst: dict) -> Outcome:
    out = Outcome()
    P = named_poset(inst["poset"], inst["p"])
    worst = None
    for c in P.cells():
        k = P.dims[c]
        if k < 1:
            continue
        z = P.boundary[c]
        d = k - 1
        chk = cell_cycle_check(P, z)
        if not (chk.is_cycle and chk.is_simple and chk.compatible and chk.min_size_ok):
            out.fail("cell boundary is not a compatible simple cycle of size >= d+2", cell=c, check=asdict(chk))
            continue
        kap = vertex_connectivity(cell_facet_graph(P, z))
        excess = kap - d - 1
        worst = excess if worst is None else min(worst, excess)
        if kap < d + 1:
            out.fail("cell cycle facet graph below d+1", cell=c, kappa=kap)
    out.obs = {"kappa_excess": worst if worst is not None else 0}
    return out


def _pentagon_instances(spec: CheckSpec):
    for p in spec.pick("p", (2, 3, 5)):
        yield {"p": p}


@register("pentagon", "the incompatible pentagon 2-cycle has a 2-connected but not 3-connected facet graph", _pentagon_instances)
def _run_pentagon(inst: dict) -> Outcome:
    out = Outcome()
    P, z = pentagon_cells(inst["p"])
    if not validate_axioms(P).ok:
        out.fail("pentagon poset violates the axioms")
    chk = cell_cycle_check(P, z)
    if not chk.is_cycle or not chk.is_simple:
        out.fail("pentagon chain is not a simple cycle")
    if is_compatible(P, z):
        out.fail("pentagon cells are compatible")
    k = vertex_connectivity(cell_facet_graph(P, z))
    out.obs = {"kappa": k}
    if k != 2:
        out.fail("pentagon facet graph connectivity is not 2", kappa=k)
    return out


# ---------------------------------------------------------------------------
# Running and reporting
# ---------------------------------------------------------------------------

def _workers() -> int:
    cap = os.environ.get("FACETLAB_THREADS")
    n = os.cpu_count() or 1
    if cap:
        try:
            n = min(n, max(1, int(cap)))
        except ValueError:
            pass
    return max(1, min(n, 8))


def build_instances(spec: CheckSpec) -> list[dict]:
    check = _lookup(spec.theorem_id)
    insts = list(islice(check.instances(spec), GRID_LIMIT + 1))
    if len(insts) > GRID_LIMIT:
        raise GridTooLarge(f"{spec.theorem_id}: grid exceeds {GRID_LIMIT} instances")
    return insts


def _lookup(theorem_id: str) -> Check:
    try:
        return REGISTRY[theorem_id]
    except KeyError:
        raise UnknownTheorem(theorem_id) from None


def _merge(report: CheckReport, inst: dict, o: Outcome):
    report.instances_run += 1
    for v in o.violations:
        report.violations.append({"theorem": report.theorem_id, "instance": inst, **v})
    for k, v in o.obs.items():
        lo, hi = report.extremes.get(k, (v, v))
        report.extremes[k] = [min(lo, v), max(hi, v)]
    if "kappa" in o.obs:
        grp = report.kappa_distribution.setdefault(o.group or "all", {})
        key = str(o.obs["kappa"])
        grp[key] = grp.get(key, 0) + 1


def run_check(spec: CheckSpec, threads: int | None = None) -> CheckReport:
    check = _lookup(spec.theorem_id)
    t0 = time.perf_counter()
    insts = build_instances(spec)
    report = CheckReport(spec.theorem_id)
    workers = threads or _workers()
    if workers > 1 and len(insts) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(check.run, insts))
    else:
        outcomes = [check.run(i) for i in insts]
    for inst, o in zip(insts, outcomes):
        _merge(report, inst, o)
    report.kappa_distribution = {g: dict(sorted(c.items(), key=lambda kv: int(kv[0]))) for g, c in sorted(report.kappa_distribution.items())}
    report.wall_time = time.perf_counter() - t0
    return report


def recheck(violation: dict) -> list[dict]:
    """Re-run the instance recorded in a violation; returns the fresh violations."""
    check = _lookup(violation["theorem"])
    return check.run(violation["instance"]).violations


def report_render(report: CheckReport, fmt: str = "text") -> str:
    if fmt == "json":
        return json.dumps(report.to_json(), sort_keys=True, indent=2)
    status = "PASS" if report.passed else "FAIL"
    lines = [f"{status} {report.theorem_id} {report.instances_run} instances ({report.wall_time:.2f}s)"]
    for k, (lo, hi) in sorted(report.extremes.items()):
        lines.append(f"  {k:<16} min {lo:<6} max {hi}")
    for grp, counts in report.kappa_distribution.items():
        dist = ", ".join(f"{k}:{v}" for k, v in counts.items())
        lines.append(f"  kappa [{grp}] {dist}")
    for v in report.violations[:10]:
        lines.append("  violation " + json.dumps(v, sort_keys=True))
    if len(report.violations) > 10:
        lines.append(f"  ... {len(report.violations) - 10} more")
    return "\n".join(lines)
