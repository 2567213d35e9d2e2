"""Hot numeric kernels with a numba backend and a numpy / pure-Python fallback.

The backend is chosen once at import time. Set ``FACETLAB_DISABLE_NUMBA=1`` (or run
without numba installed) to force the fallback path. Both implementations stay
importable as ``KERNELS["numba"]`` and ``KERNELS["numpy"]`` so tests and the
benchmark can compare them side by side.

All matrices are ``int64`` arrays whose entries are already reduced into ``[0, p)``.
"""
from __future__ import annotations

import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

_DISABLED = os.environ.get("FACETLAB_DISABLE_NUMBA", "").strip().lower() not in ("", "0", "false", "no")
HAS_NUMBA = numba is not None
BACKEND = "numba" if (HAS_NUMBA and not _DISABLED) else "numpy"


def _inv_mod(a, p):
    t, newt = 0, 1
    r, newr = p, a % p
    while newr != 0:
        q = r // newr
        t, newt = newt, t - q * newt
        r, newr = newr, r - q * newr
    if t < 0:
        t += p
    return t


# ---------------------------------------------------------------------------
# Row reduction
# ---------------------------------------------------------------------------

def _rref_loops(A, p):
    m, n = A.shape
    piv = np.empty(min(m, n), dtype=np.int64)
    r = 0
    for c in range(n):
        if r == m:
            break
        pr = -1
        for i in range(r, m):
            if A[i, c] != 0:
                pr = i
                break
        if pr < 0:
            continue
        if pr != r:
            for j in range(c, n):
                tmp = A[r, j]
                A[r, j] = A[pr, j]
                A[pr, j] = tmp
        inv = _inv_mod(A[r, c], p)
        if inv != 1:
            for j in range(c, n):
                A[r, j] = (A[r, j] * inv) % p
        for i in range(m):
            if i != r:
                f = A[i, c]
                if f != 0:
                    for j in range(c, n):
                        A[i, j] = (A[i, j] - f * A[r, j]) % p
        piv[r] = c
        r += 1
    return r, piv


def _rref_numpy(A, p):
    m, n = A.shape
    piv = np.empty(min(m, n), dtype=np.int64)
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            A[[r, pr], c:] = A[[pr, r], c:]
        inv = pow(int(A[r, c]), -1, p)
        if inv != 1:
            A[r, c:] = (A[r, c:] * inv) % p
        col = A[:, c].copy()
        col[r] = 0
        rows = np.flatnonzero(col)
        if rows.size:
            A[rows, c:] = (A[rows, c:] - np.outer(col[rows], A[r, c:])) % p
        piv[r] = c
        r += 1
    return r, piv


# ---------------------------------------------------------------------------
# Vertex connectivity by unit-capacity max-flow on the split graph
# ---------------------------------------------------------------------------

def _vertex_connectivity(n, indptr, indices):
    if n <= 1:
        return 0
    adj = np.zeros((n, n), dtype=np.bool_)
    mindeg = n
    for u in range(n):
        deg = indptr[u + 1] - indptr[u]
        if deg < mindeg:
            mindeg = deg
        for k in range(indptr[u], indptr[u + 1]):
            adj[u, indices[k]] = True

    # split graph: node 2v = v_in, 2v+1 = v_out
    nnodes = 2 * n
    narcs = 2 * (n + indptr[n])
    tail = np.empty(narcs, dtype=np.int64)
    head = np.empty(narcs, dtype=np.int64)
    cap0 = np.zeros(narcs, dtype=np.int64)
    a = 0
    for v in range(n):
        tail[a] = 2 * v
        head[a] = 2 * v + 1
        cap0[a] = 1
        tail[a + 1] = 2 * v + 1
        head[a + 1] = 2 * v
        a += 2
    for u in range(n):
        for k in range(indptr[u], indptr[u + 1]):
            v = indices[k]
            tail[a] = 2 * u + 1
            head[a] = 2 * v
            cap0[a] = 1
            tail[a + 1] = 2 * v
            head[a + 1] = 2 * u + 1
            a += 2
    # arcs come in (forward, reverse) pairs: partner of a is a ^ 1
    start = np.zeros(nnodes + 1, dtype=np.int64)
    for i in range(narcs):
        start[tail[i] + 1] += 1
    for i in range(nnodes):
        start[i + 1] += start[i]
    order = np.empty(narcs, dtype=np.int64)
    fill = start[:nnodes].copy()
    for i in range(narcs):
        order[fill[tail[i]]] = i
        fill[tail[i]] += 1

    cap = np.empty(narcs, dtype=np.int64)
    parent = np.empty(nnodes, dtype=np.int64)
    queue = np.empty(nnodes, dtype=np.int64)

    best = mindeg
    i = 0
    while i < n and i <= best:
        for j in range(i + 1, n):
            if adj[i, j]:
                continue
            # local connectivity between i and j, capped at the current best
            for x in range(narcs):
                cap[x] = cap0[x]
            src = 2 * i + 1
            snk = 2 * j
            flow = 0
            while flow < best:
                for x in range(nnodes):
                    parent[x] = -1
                parent[src] = -2
                qh = 0
                qt = 1
                queue[0] = src
                found = False
                while qh < qt and not found:
                    x = queue[qh]
                    qh += 1
                    for s in range(start[x], start[x + 1]):
                        arc = order[s]
                        if cap[arc] > 0:
                            y = head[arc]
                            if parent[y] == -1:
                                parent[y] = arc
                                if y == snk:
                                    found = True
                                    break
                                queue[qt] = y
                                qt += 1
                if not found:
                    break
                y = snk
                while y != src:
                    arc = parent[y]
                    cap[arc] -= 1
                    cap[arc ^ 1] += 1
                    y = tail[arc]
                flow += 1
            if flow < best:
                best = flow
        i += 1
    return best


# ---------------------------------------------------------------------------
# Circuit enumeration: depth-first search over independent column sets
# ---------------------------------------------------------------------------

def _circuit_search(A, p):
    rows, m = A.shape
    basis = np.zeros((m + 1, rows), dtype=np.int64)
    expr = np.zeros((m + 1, m), dtype=np.int64)
    bpiv = np.zeros(m + 1, dtype=np.int64)
    chosen = np.zeros(m + 1, dtype=np.int64)
    nxt = np.zeros(m + 2, dtype=np.int64)
    v = np.zeros(rows, dtype=np.int64)
    comb = np.zeros(m, dtype=np.int64)
    capacity = 64
    masks = np.zeros(capacity, dtype=np.int64)
    coefs = np.zeros((capacity, m), dtype=np.int64)
    count = 0
    k = 0
    nxt[0] = 0
    while True:
        if nxt[k] >= m:
            if k == 0:
                break
            k -= 1
            continue
        e = nxt[k]
        nxt[k] += 1
        for r in range(rows):
            v[r] = A[r, e]
        for c in range(m):
            comb[c] = 0
        comb[e] = 1
        for b in range(k):
            f = v[bpiv[b]]
            if f != 0:
                for r in range(rows):
                    v[r] = (v[r] - f * basis[b, r]) % p
                for c in range(m):
                    comb[c] = (comb[c] - f * expr[b, c]) % p
        pv = -1
        for r in range(rows):
            if v[r] != 0:
                pv = r
                break
        if pv < 0:
            full = True
            for b in range(k):
                if comb[chosen[b]] == 0:
                    full = False
                    break
            if full:
                if count == capacity:
                    capacity *= 2
                    nm = np.zeros(capacity, dtype=np.int64)
                    nc = np.zeros((capacity, m), dtype=np.int64)
                    nm[:count] = masks[:count]
                    nc[:count] = coefs[:count]
                    masks = nm
                    coefs = nc
                mask = np.int64(1) << e
                lead = e
                for b in range(k):
                    mask |= np.int64(1) << chosen[b]
                    if chosen[b] < lead:
                        lead = chosen[b]
                scale = _inv_mod(comb[lead], p)
                for c in range(m):
                    coefs[count, c] = (comb[c] * scale) % p
                masks[count] = mask
                count += 1
        else:
            inv = _inv_mod(v[pv], p)
            for r in range(rows):
                basis[k, r] = (v[r] * inv) % p
            for c in range(m):
                expr[k, c] = (comb[c] * inv) % p
            bpiv[k] = pv
            chosen[k] = e
            k += 1
            nxt[k] = e + 1
    return masks[:count], coefs[:count]


# ---------------------------------------------------------------------------
# Backend tables
# ---------------------------------------------------------------------------

KERNELS = {
    "numpy": {
        "rref": _rref_numpy,
        "vertex_connectivity": _vertex_connectivity,
        "circuit_search": _circuit_search,
    }
}

if HAS_NUMBA:
    _njit = numba.njit(cache=True, nogil=True)
    _inv_mod_nb = _njit(_inv_mod)
    # the loop kernels call _inv_mod by global name; numba resolves it to the
    # jitted dispatcher when compiling, the fallback keeps the Python function
    _g = dict(globals())
    _g["_inv_mod"] = _inv_mod_nb

    def _rejit(fn):
        import types

        clone = types.FunctionType(fn.__code__, _g, fn.__name__, fn.__defaults__, fn.__closure__)
        return _njit(clone)

    KERNELS["numba"] = {
        "rref": _rejit(_rref_loops),
        "vertex_connectivity": _rejit(_vertex_connectivity),
        "circuit_search": _rejit(_circuit_search),
    }

_active = KERNELS[BACKEND]


def rref(A: np.ndarray, p: int, backend: str | None = None):
    """Reduce ``A`` in place to reduced row echelon form mod ``p``.

    Returns ``(rank, pivot_columns)``.
    """
    fn = (KERNELS[backend] if backend else _active)["rref"]
    r, piv = fn(A, p)
    return int(r), piv[:r]


def vertex_connectivity_csr(n: int, indptr: np.ndarray, indices: np.ndarray, backend: str | None = None) -> int:
    fn = (KERNELS[backend] if backend else _active)["vertex_connectivity"]
    return int(fn(n, indptr, indices))


def circuit_search(A: np.ndarray, p: int, backend: str | None = None):
    """All circuits of the column matroid of ``A`` as ``(bitmasks, coefficient rows)``."""
    fn = (KERNELS[backend] if backend else _active)["circuit_search"]
    return fn(A, p)
