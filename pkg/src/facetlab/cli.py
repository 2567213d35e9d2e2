"""Command-line interface: ``facetlab <subcommand> ...``.

Exit codes: 0 success, 1 domain error, 2 usage error, 3 verification failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import io
from .cell_complex import cell_facet_graph
from .collapse import collapse_small_set
from .complex import Chain, Complex, boundary_matrix
from .facet_graph import FacetGraph, components_after_removal, vertex_connectivity
from .generators import GENERATORS, generate
from .linalg import betti_reduced, rank
from .structures import dual, enumerate_circuits, hypertree_greedy, perturbed_hypertree, star_hypertree
from .verify import REGISTRY, CheckSpec, UnknownTheorem, report_render, run_check

EXIT_DOMAIN, EXIT_USAGE, EXIT_VERIFY = 1, 2, 3


class UsageError(Exception):
    pass


def _read(path: str):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise ValueError(f"cannot read {path}: {exc.strerror}") from None
    return io.load(text)


def _write(doc: dict, out: str | None):
    text = io.dumps(doc)
    if out and out != "-":
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _top_faces(kind: str, obj) -> list:
    if kind == "chain":
        return sorted(obj.support())
    if kind == "complex":
        return obj.skeleton(obj.dim) if obj.dim >= 0 else []
    raise UsageError("expected a complex or chain document")


def _parse_simplices(spec: str | None) -> list[tuple]:
    if not spec:
        return []
    try:
        return [tuple(sorted(int(v) for v in item.split("-"))) for item in spec.split(",") if item]
    except ValueError:
        raise UsageError(f"cannot parse simplex list {spec!r}; use dash-joined vertices, comma separated") from None


# -- subcommands -----------------------------------------------------------

def cmd_gen(a) -> int:
    params = {"n": a.n, "d": a.d, "k": a.k, "p": a.p, "seed": a.seed}
    if a.tau:
        params["tau"] = tuple(int(v) for v in a.tau.split("-"))
    inst = generate(a.name, **params)
    _write(io.instance_to_json(inst), a.output)
    return 0


def cmd_betti(a) -> int:
    kind, obj, _ = _read(a.file)
    k = obj if kind == "complex" else _complex_of(kind, obj)
    dims = [a.dim] if a.dim is not None else list(range(-1, k.dim + 1))
    vals = {d: betti_reduced(k, d, a.p) for d in dims}
    if a.dim is not None:
        print(vals[a.dim])
    else:
        print(json.dumps({str(d): v for d, v in vals.items()}))
    return 0


def _complex_of(kind, obj) -> Complex:
    from .complex import closure

    if kind == "chain":
        return closure(obj.support())
    raise UsageError("expected a complex or chain document")


def cmd_rank(a) -> int:
    kind, obj, _ = _read(a.file)
    k = obj if kind == "complex" else _complex_of(kind, obj)
    if a.dim not in k.faces or a.dim - 1 not in k.faces:
        print(0)
        return 0
    print(rank(boundary_matrix(k, a.dim, a.p)))
    return 0


def _reduced_graph(g: FacetGraph, drop_vertices: set, drop_labels: set) -> FacetGraph:
    keep = [i for i in range(g.order) if i not in drop_vertices]
    where = {v: k for k, v in enumerate(keep)}
    edges = {
        (where[i], where[j]): lab
        for (i, j), lab in g.edges.items()
        if i in where and j in where and lab not in drop_labels
    }
    return FacetGraph(tuple(g.vertices[i] for i in keep), edges)


def cmd_graph(a) -> int:
    kind, obj, _ = _read(a.file)
    if kind == "poset":
        top = max(obj.dims.values())
        g = cell_facet_graph(obj, obj.cells(top))
    else:
        from .facet_graph import build_facet_graph

        g = build_facet_graph(_top_faces(kind, obj))
    removed = _parse_simplices(a.remove)
    unknown = [s for s in removed if s not in g._index]
    if unknown:
        raise ValueError(f"--remove: {'-'.join(map(str, unknown[0]))} is not a facet-graph vertex")
    labels = set(_parse_simplices(a.remove_labels))
    h = _reduced_graph(g, {g.index(s) for s in removed}, labels)
    doc = {
        "kappa": vertex_connectivity(h),
        "components": components_after_removal(h, ()),
        "order": h.order,
        "size": h.size,
    }
    _write(doc, None)
    return 0


def cmd_collapse(a) -> int:
    kind, obj, _ = _read(a.file)
    faces = obj.facets if kind == "complex" else _top_faces(kind, obj)
    cert = collapse_small_set(a.d, [f for f in faces if f], greedy=a.greedy)
    _write(cert.to_json(), a.output)
    return 0


def cmd_dual(a) -> int:
    kind, obj, n = _read(a.file)
    if kind != "chain":
        raise UsageError("dual expects a chain document")
    n = a.n or n
    _write(io.chain_to_json(dual(obj, n), n), a.output)
    return 0


def cmd_circuits(a) -> int:
    kind, obj, extra = _read(a.file)
    faces = _top_faces(kind, obj)
    p = a.p if a.p is not None else (obj.p if isinstance(obj, Chain) else extra)
    circuits = enumerate_circuits(faces, p)
    doc = {
        "p": p,
        "circuits": [{"dim": z.dim, "terms": [{"s": list(s), "c": c} for s, c in z.sorted_terms()]} for z in circuits],
    }
    _write(doc, a.output)
    return 0


def cmd_hypertree(a) -> int:
    if a.kind == "star":
        t = star_hypertree(a.n, a.d, a.p)
    elif a.kind == "perturbed":
        t = perturbed_hypertree(a.n, a.d, a.p)
    else:
        t = hypertree_greedy(a.n, a.d, a.p, seed=a.seed if a.kind == "random" else None)
    _write({"n": t.n, "p": t.p, "facets": [list(s) for s in t.simplices]}, a.output)
    return 0


def cmd_verify(a) -> int:
    if a.list or not a.theorem:
        for tid in sorted(REGISTRY):
            print(f"{tid:<28} {REGISTRY[tid].summary}")
        return 0
    if a.theorem not in REGISTRY:
        raise UnknownTheorem(a.theorem)
    spec = CheckSpec(
        a.theorem,
        n=tuple(a.n) if a.n else None,
        d=tuple(a.d) if a.d else None,
        p=tuple(a.p) if a.p else None,
        seeds=a.seeds,
        exhaustive=a.exhaustive,
        samples=a.samples,
    )
    report = run_check(spec, threads=a.threads)
    print(report_render(report, "json" if a.json else "text"))
    return 0 if report.passed else EXIT_VERIFY


# -- parser ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="facetlab", description="Exact facet-graph and homology toolkit over GF(p).")
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a named complex, chain or cell poset")
    g.add_argument("name", choices=sorted(GENERATORS))
    g.add_argument("--n", type=int)
    g.add_argument("--d", type=int)
    g.add_argument("--k", type=int)
    g.add_argument("--p", type=int)
    g.add_argument("--seed", type=int)
    g.add_argument("--tau", help="dash-joined face for star-cut, e.g. 1-2")
    g.add_argument("-o", "--output")
    g.set_defaults(fn=cmd_gen)

    b = sub.add_parser("betti", help="reduced Betti numbers")
    b.add_argument("file")
    b.add_argument("--dim", type=int)
    b.add_argument("--p", type=int, default=2)
    b.set_defaults(fn=cmd_betti)

    r = sub.add_parser("rank", help="rank of a boundary matrix")
    r.add_argument("file")
    r.add_argument("--dim", type=int, required=True)
    r.add_argument("--p", type=int, default=2)
    r.set_defaults(fn=cmd_rank)

    gr = sub.add_parser("graph", help="facet graph statistics")
    gr.add_argument("file")
    gr.add_argument("--connectivity", action="store_true", help="accepted for clarity; kappa is always reported")
    gr.add_argument("--remove", help="facets to delete, e.g. 1-2-3,1-2-4")
    gr.add_argument("--remove-labels", help="shared faces whose edges are deleted, e.g. 1-2")
    gr.add_argument("--p", type=int, default=2)
    gr.set_defaults(fn=cmd_graph)

    c = sub.add_parser("collapse", help="collapse certificate for a small set of simplices")
    c.add_argument("file")
    c.add_argument("--d", type=int, required=True)
    c.add_argument("--greedy", action="store_true", help="collapse greedily when the size precondition fails")
    c.add_argument("-o", "--output")
    c.set_defaults(fn=cmd_collapse)

    du = sub.add_parser("dual", help="complement dual of a chain")
    du.add_argument("file")
    du.add_argument("--n", type=int, help="ambient vertex count (defaults to the file's n)")
    du.add_argument("-o", "--output")
    du.set_defaults(fn=cmd_dual)

    ci = sub.add_parser("circuits", help="enumerate simple cycles on a face set")
    ci.add_argument("file")
    ci.add_argument("--p", type=int)
    ci.add_argument("-o", "--output")
    ci.set_defaults(fn=cmd_circuits)

    h = sub.add_parser("hypertree", help="construct a hypertree")
    h.add_argument("--n", type=int, required=True)
    h.add_argument("--d", type=int, required=True)
    h.add_argument("--p", type=int, default=2)
    h.add_argument("--kind", choices=("star", "greedy", "perturbed", "random"), default="star")
    h.add_argument("--seed", type=int, default=0)
    h.add_argument("-o", "--output")
    h.set_defaults(fn=cmd_hypertree)

    v = sub.add_parser("verify", help="run a named theorem check")
    v.add_argument("theorem", nargs="?")
    v.add_argument("--list", action="store_true")
    v.add_argument("--n", type=int, nargs="+")
    v.add_argument("--d", type=int, nargs="+")
    v.add_argument("--p", type=int, nargs="+", help="moduli (default grid uses 2, 3, 5 where signs matter)")
    v.add_argument("--seeds", type=int, default=10)
    v.add_argument("--samples", type=int, default=200)
    v.add_argument("--exhaustive", action="store_true")
    v.add_argument("--json", action="store_true")
    v.add_argument("--threads", type=int)
    v.set_defaults(fn=cmd_verify)
    return ap


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.fn(args)
    except (UsageError, UnknownTheorem) as exc:
        msg = exc.args[0] if exc.args else exc
        prefix = "unknown theorem " if isinstance(exc, UnknownTheorem) else ""
        print(f"facetlab {args.command}: {prefix}{msg}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, ArithmeticError, KeyError) as exc:
        print(f"facetlab {args.command}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


def entry():  # console script
    sys.exit(main())
