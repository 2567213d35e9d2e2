"""Independent reference implementations used as test oracles."""
from itertools import combinations


def naive_rank(rows, p):
    """Schoolbook elimination on Python lists; the independent rank oracle."""
    m = [[x % p for x in r] for r in rows]
    rank, col = 0, 0
    ncols = len(m[0]) if m else 0
    while rank < len(m) and col < ncols:
        piv = next((i for i in range(rank, len(m)) if m[i][col]), None)
        if piv is None:
            col += 1
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][col], p - 2, p)
        m[rank] = [x * inv % p for x in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][col]:
                f = m[i][col]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[rank])]
        rank += 1
        col += 1
    return rank


def all_faces_of(facets):
    out = {()}
    for f in facets:
        for k in range(1, len(f) + 1):
            out.update(combinations(f, k))
    return out
