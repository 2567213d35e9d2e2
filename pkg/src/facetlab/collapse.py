"""Elementary collapses and the small-set elimination procedure.

A set ``D`` of at most ``d`` simplices of dimension at most ``d`` (``d >= 2``) spans a
complex whose d- and (d-1)-faces can all be removed by elementary (d-1)- and
(d-2)-collapses. :func:`collapse_small_set` produces such a sequence as a replayable
certificate, and :func:`express_cycle_as_boundary` turns it into an explicit chain
``U`` on ``D`` with ``boundary(U) == z`` for any (d-1)-cycle ``z`` on the closure.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .complex import (
    Chain,
    Complex,
    Simplex,
    boundary,
    closure,
    complex_from_faces,
    faces_of,
    facets_of,
    incidence_sign,
)
from .linalg import SparseMatrix, solve


class PreconditionViolated(ValueError):
    pass


class InternalInconsistency(RuntimeError):
    pass


@dataclass(frozen=True)
class CollapseStep:
    free: Simplex
    coface: Simplex

    @property
    def kind(self) -> int:
        """Dimension of the exposed face: ``i`` for an elementary i-collapse."""
        return len(self.free) - 1

    def to_json(self) -> dict:
        return {"free": list(self.free), "coface": list(self.coface)}


@dataclass(frozen=True)
class CollapseCertificate:
    start: Complex
    steps: tuple
    residual: Complex

    def to_json(self) -> dict:
        return {
            "steps": [s.to_json() for s in self.steps],
            "residual": [list(f) for f in self.residual.facets if f],
        }


class _Working:
    """Mutable face set with exposure bookkeeping."""

    def __init__(self, faces):
        self.faces = set(faces)

    def cofaces(self, f: Simplex) -> list[Simplex]:
        return [s for s in self.faces if len(s) == len(f) + 1 and set(f) <= set(s)]

    def is_exposed(self, f: Simplex) -> bool:
        return f in self.faces and len(self.cofaces(f)) == 1

    def apply(self, step: CollapseStep):
        if len(step.coface) != len(step.free) + 1 or not set(step.free) <= set(step.coface):
            raise InternalInconsistency(f"{step.coface} is not a coface of {step.free}")
        up = self.cofaces(step.free)
        if up != [step.coface]:
            raise InternalInconsistency(f"{step.free} is not exposed (cofaces {sorted(up)})")
        self.faces.discard(step.free)
        self.faces.discard(step.coface)


def exposed_faces(k: Complex, i: int) -> set[Simplex]:
    """i-faces of ``k`` lying in exactly one (i+1)-face."""
    count: dict = {}
    for s in k.faces.get(i + 1, ()):
        for f in facets_of(s):
            count[f] = count.get(f, 0) + 1
    return {f for f, c in count.items() if c == 1}


def replay(start: Complex, steps) -> Complex:
    """Apply collapse steps in order, checking exposure at each one."""
    work = _Working(start.all_faces())
    for step in steps:
        work.apply(step)
    return complex_from_faces(work.faces, start.n)


def _check_small_set(d: int, D) -> list[Simplex]:
    D = sorted(set(map(tuple, D)))
    if d < 2:
        raise PreconditionViolated("full elimination needs d >= 2")
    if len(D) > d:
        raise PreconditionViolated(f"{len(D)} simplices given, at most d={d} allowed")
    if any(len(s) - 1 > d for s in D):
        raise PreconditionViolated(f"simplices of dimension above d={d}")
    if any(not s for s in D):
        raise PreconditionViolated("the empty simplex is not a valid member of D")
    return D


def _peel_simplex(work: _Working, sigma: Simplex, others, steps: list):
    d = len(sigma) - 1
    marked: set = set()
    for x in others:
        marked.update(faces_of(tuple(sorted(set(sigma) & set(x)))))
    free_facets = [f for f in sorted(facets_of(sigma)) if f not in marked]
    if not free_facets:
        raise InternalInconsistency(f"every facet of {sigma} is marked")
    tau = free_facets[0]
    step = CollapseStep(tau, sigma)
    work.apply(step)
    steps.append(step)
    # blue/white process on the facet graph of the boundary of sigma
    blue = {tau}
    queue = deque([tau])
    while queue:
        u = queue.popleft()
        for w in free_facets:
            if w in blue:
                continue
            e = tuple(sorted(set(u) & set(w)))
            if len(e) != d - 1 or e in marked:
                continue
            step = CollapseStep(e, w)
            work.apply(step)
            steps.append(step)
            blue.add(w)
            queue.append(w)
    if len(blue) != len(free_facets):
        raise InternalInconsistency(f"unmarked facets of {sigma} are disconnected")


def collapse_small_set(d: int, D, greedy: bool = False) -> CollapseCertificate:
    """Collapse sequence removing every d- and (d-1)-face of the closure of ``D``.

    With ``greedy=True`` the size/dimension precondition is not enforced and the
    closure is collapsed greedily instead (the residual may then keep faces).
    """
    try:
        D = _check_small_set(d, D)
    except PreconditionViolated:
        if not greedy:
            raise
        return greedy_collapse(closure(D), d)
    start = closure(D)
    work = _Working(start.all_faces())
    steps: list[CollapseStep] = []
    remaining = list(D)
    while True:
        tops = sorted(s for s in remaining if len(s) == d + 1)
        if not tops:
            break
        sigma = tops[0]
        remaining.remove(sigma)
        _peel_simplex(work, sigma, remaining, steps)
    # only (d-1)-simplices of D carry (d-1)-faces now; each has its own exposed facet
    while True:
        ridges = sorted(f for f in work.faces if len(f) == d)
        if not ridges:
            break
        for tau in ridges:
            cand = [f for f in sorted(facets_of(tau)) if work.is_exposed(f)]
            if cand:
                step = CollapseStep(cand[0], tau)
                work.apply(step)
                steps.append(step)
                break
        else:
            raise InternalInconsistency(f"no exposed facet among {ridges}")
    return CollapseCertificate(start, tuple(steps), complex_from_faces(work.faces, start.n))


def greedy_collapse(k: Complex, d: int) -> CollapseCertificate:
    """Repeatedly perform the lexicographically first available (d-1)- or (d-2)-collapse."""
    work = _Working(k.all_faces())
    steps: list[CollapseStep] = []
    progress = True
    while progress:
        progress = False
        for i in (d - 1, d - 2):
            for f in sorted(x for x in work.faces if len(x) == i + 1):
                up = work.cofaces(f)
                if len(up) == 1:
                    step = CollapseStep(f, up[0])
                    work.apply(step)
                    steps.append(step)
                    progress = True
                    break
            if progress:
                break
    return CollapseCertificate(k, tuple(steps), complex_from_faces(work.faces, k.n))


def express_cycle_as_boundary(z: Chain, D, d: int) -> Chain:
    """Chain ``U`` supported on the d-simplices of ``D`` with ``boundary(U) == z``."""
    D = sorted(set(map(tuple, D)))
    if z.dim != d - 1:
        raise PreconditionViolated(f"expected a {d - 1}-cycle, got dimension {z.dim}")
    if boundary(z):
        raise PreconditionViolated("z is not a cycle")
    if len(D) > d or any(len(s) - 1 > d for s in D):
        raise PreconditionViolated("D must hold at most d simplices of dimension at most d")
    span = closure(D) if D else closure([])
    if any(s not in span for s in z.support()):
        raise PreconditionViolated("z is not supported on the closure of D")

    if d == 1:
        edges = [s for s in D if len(s) == 2]
        rows = sorted({v for e in edges for v in e} | {v for s in z.support() for v in s})
        rows = [(v,) for v in rows]
        idx = {r: i for i, r in enumerate(rows)}
        entries = {}
        for j, (a, b) in enumerate(edges):
            entries[(idx[(a,)], j)] = z.p - 1
            entries[(idx[(b,)], j)] = 1
        u = solve(SparseMatrix(rows, edges, entries, z.p), z)
        if u is None:
            raise InternalInconsistency("0-cycle is not a boundary")
        return u if edges else Chain.zero(1, z.p)

    cert = collapse_small_set(d, D)
    rest = z
    u = Chain.zero(d, z.p)
    for step in cert.steps:
        if step.kind == d - 1:
            c = rest[step.free]
            if c:
                a = incidence_sign(step.coface, step.free) * c
                u = u + Chain.of(step.coface, a, z.p)
                rest = rest - a * boundary(Chain.of(step.coface, 1, z.p))
        elif step.kind == d - 2 and rest[step.coface]:
            raise InternalInconsistency(f"cycle uses {step.coface} after its free face was collapsed")
    if rest:
        raise InternalInconsistency(f"residual still carries {rest}")
    return u
