"""Canonical JSON for complexes, chains and cell posets.

Serialization sorts keys and terms so that parse -> dump is byte-identical.
"""
from __future__ import annotations

import json
from typing import Any

from .cell_complex import CellPoset
from .complex import Chain, Complex, closure
from .field import NonPrimeModulus, field_context


class FormatError(ValueError):
    """Malformed input; the message names the offending field."""


def dumps(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True) + "\n"


def _need(d: dict, key: str, typ, where: str):
    if not isinstance(d, dict):
        raise FormatError(f"{where}: expected an object")
    if key not in d:
        raise FormatError(f"{where}.{key}: missing")
    v = d[key]
    if typ is int and (isinstance(v, bool) or not isinstance(v, int)):
        raise FormatError(f"{where}.{key}: expected an integer")
    if typ is not int and not isinstance(v, typ):
        raise FormatError(f"{where}.{key}: expected {typ.__name__}")
    return v


def _modulus(d: dict, where: str) -> int:
    p = _need(d, "p", int, where)
    try:
        field_context(p)
    except NonPrimeModulus as exc:
        raise FormatError(f"{where}.p: {exc}") from None
    return p


def _simplex(v: Any, where: str) -> tuple:
    if not isinstance(v, list) or any(isinstance(x, bool) or not isinstance(x, int) for x in v):
        raise FormatError(f"{where}: expected a list of integers")
    if any(a >= b for a, b in zip(v, v[1:])):
        raise FormatError(f"{where}: vertices must be strictly increasing")
    if v and v[0] < 1:
        raise FormatError(f"{where}: vertices are numbered from 1")
    return tuple(v)


# -- complexes -------------------------------------------------------------

def complex_to_json(k: Complex, p: int = 2) -> dict:
    return {"n": k.n, "p": p, "facets": [list(f) for f in k.facets if f]}


def complex_from_json(d: dict) -> tuple[Complex, int]:
    n = _need(d, "n", int, "complex")
    p = _modulus(d, "complex")
    facets = _need(d, "facets", list, "complex")
    fs = [_simplex(f, f"complex.facets[{i}]") for i, f in enumerate(facets)]
    for i, f in enumerate(fs):
        if f and f[-1] > n:
            raise FormatError(f"complex.facets[{i}]: vertex {f[-1]} exceeds n={n}")
    return closure(fs, n), p


# -- chains ----------------------------------------------------------------

def chain_to_json(z: Chain, n: int) -> dict:
    return {
        "n": n,
        "p": z.p,
        "dim": z.dim,
        "terms": [{"s": list(s), "c": c} for s, c in z.sorted_terms()],
    }


def chain_from_json(d: dict) -> tuple[Chain, int]:
    n = _need(d, "n", int, "chain")
    p = _modulus(d, "chain")
    dim = _need(d, "dim", int, "chain")
    terms = _need(d, "terms", list, "chain")
    out = {}
    for i, t in enumerate(terms):
        where = f"chain.terms[{i}]"
        s = _simplex(_need(t, "s", list, where), f"{where}.s")
        c = _need(t, "c", int, where)
        if not 0 <= c < p:
            raise FormatError(f"{where}.c: coefficient must satisfy 0 <= c < p")
        if len(s) != dim + 1:
            raise FormatError(f"{where}.s: expected {dim + 1} vertices")
        if s and s[-1] > n:
            raise FormatError(f"{where}.s: vertex {s[-1]} exceeds n={n}")
        if s in out:
            raise FormatError(f"{where}.s: duplicate simplex")
        out[s] = c
    return Chain(dim, out, p), n


# -- cell posets -----------------------------------------------------------

def poset_to_json(P: CellPoset) -> dict:
    return {
        "p": P.p,
        "cells": [{"id": c, "dim": P.dims[c]} for c in sorted(P.dims)],
        "covers": [list(pair) for pair in P.covers],
        "boundary": {
            c: [{"id": f, "c": v} for f, v in sorted(chain.items())]
            for c, chain in sorted(P.boundary.items())
            if P.dims[c] >= 1
        },
    }


def poset_from_json(d: dict) -> CellPoset:
    p = _modulus(d, "poset")
    cells = _need(d, "cells", list, "poset")
    dims = {}
    for i, c in enumerate(cells):
        cid = _need(c, "id", str, f"poset.cells[{i}]")
        dims[cid] = _need(c, "dim", int, f"poset.cells[{i}]")
    covers = []
    for i, pair in enumerate(_need(d, "covers", list, "poset")):
        if not (isinstance(pair, list) and len(pair) == 2 and all(isinstance(x, str) for x in pair)):
            raise FormatError(f"poset.covers[{i}]: expected [idLow, idHigh]")
        covers.append(tuple(pair))
    bd = {}
    for cid, terms in _need(d, "boundary", dict, "poset").items():
        if not isinstance(terms, list):
            raise FormatError(f"poset.boundary.{cid}: expected a list")
        bd[cid] = {
            _need(t, "id", str, f"poset.boundary.{cid}[{i}]"): _need(t, "c", int, f"poset.boundary.{cid}[{i}]")
            for i, t in enumerate(terms)
        }
    try:
        return CellPoset(dims, tuple(covers), bd, p)
    except ValueError as exc:
        raise FormatError(f"poset: {exc}") from None


# -- dispatch --------------------------------------------------------------

def detect_kind(d: dict) -> str:
    if not isinstance(d, dict):
        raise FormatError("document: expected a JSON object")
    if "terms" in d:
        return "chain"
    if "facets" in d:
        return "complex"
    if "cells" in d:
        return "poset"
    raise FormatError("document: expected one of the fields terms, facets or cells")


def load(text: str):
    """Parse a document; returns ``(kind, object, extra)`` where extra is n or p."""
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"document: invalid JSON ({exc.msg} at line {exc.lineno})") from None
    kind = detect_kind(d)
    if kind == "chain":
        z, n = chain_from_json(d)
        return kind, z, n
    if kind == "complex":
        k, p = complex_from_json(d)
        return kind, k, p
    return kind, poset_from_json(d), None


def instance_to_json(inst) -> dict:
    if inst.kind == "complex":
        return complex_to_json(inst.payload, inst.meta.get("p", 2))
    if inst.kind == "chain":
        return chain_to_json(inst.payload, inst.meta["n"])
    if inst.kind == "poset":
        return poset_to_json(inst.payload)
    raise FormatError(f"cannot serialize kind {inst.kind!r}")
