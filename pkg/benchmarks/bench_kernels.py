"""Compare the numba kernels with the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Each kernel is run once untimed per backend so JIT compilation is excluded.
Results are checked for agreement before timings are printed.
"""
import argparse
import time
from itertools import combinations

import numpy as np

from facetlab._kernels import HAS_NUMBA, circuit_search, rref, vertex_connectivity_csr
from facetlab.complex import boundary_matrix, closure
from facetlab.facet_graph import build_facet_graph, hypersimplex_graph
from facetlab.generators import torus_cycle


def rref_case(n=9, d=3, p=5):
    k = closure(combinations(range(1, n + 1), d + 1), n)
    return (boundary_matrix(k, d, p).to_dense() % p).astype(np.int64), p


def kappa_cases():
    return [
        ("hypersimplex(8,4)", hypersimplex_graph(8, 4)),
        ("torus k=6", build_facet_graph(torus_cycle(6, 2))),
    ]


def circuit_case(n=7, p=3):
    k = closure(combinations(range(1, n + 1), 2), n)
    return (boundary_matrix(k, 1, p).to_dense() % p).astype(np.int64)[:, :12], p


def best_of(fn, repeat):
    fn()  # warm-up (compiles under numba)
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def _same(a, b):
    if isinstance(a, tuple):
        return all(_same(x, y) for x, y in zip(a, b))
    return np.array_equal(np.asarray(a), np.asarray(b))


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    backends = ["numpy"] + (["numba"] if HAS_NUMBA else [])

    A, p = rref_case()
    C, q = circuit_case()
    jobs = [(f"rref {A.shape[0]}x{A.shape[1]} mod {p}", lambda b: rref(A.copy(), p, backend=b))]
    for name, g in kappa_cases():
        n, indptr, indices = g.csr()
        jobs.append((f"kappa {name} ({g.order} vertices)", lambda b, a=(n, indptr, indices): vertex_connectivity_csr(*a, backend=b)))
    jobs.append((f"circuits {C.shape[0]}x{C.shape[1]} mod {q}", lambda b: circuit_search(C.copy(), q, backend=b)))

    print(f"{'kernel':<44}" + "".join(f"{b:>12}" for b in backends) + ("     speedup" if len(backends) > 1 else ""))
    for label, job in jobs:
        row, outs = [], []
        for b in backends:
            t, out = best_of(lambda: job(b), args.repeat)
            row.append(t)
            outs.append(out)
        if len(outs) == 2 and not _same(*outs):
            raise SystemExit(f"backends disagree on {label}")
        line = f"{label:<44}" + "".join(f"{t * 1e3:>10.2f}ms" for t in row)
        if len(row) == 2:
            line += f"{row[0] / row[1]:>11.1f}x"
        print(line)


if __name__ == "__main__":
    main()
