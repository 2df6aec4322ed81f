"""Bound quiver isomorphism by backtracking with degree-sequence pruning.

A hit maps vertices and arrows bijectively, preserves incidence, and
carries every relation block span onto the corresponding span (checked by
RREF equality after transport).  The search is deterministic: candidates
are tried in sorted order and the first complete match wins.
"""

from __future__ import annotations

from itertools import permutations
from typing import Optional

from .linalg import ZERO, span_rref
from .quiver import BoundQuiver, relation_block_spans


def _signature(bq: BoundQuiver, v: str):
    out = bq.out_arrows(v)
    into = bq.in_arrows(v)
    out_deg = sorted((len(bq.out_arrows(a.target)), len(bq.in_arrows(a.target))) for a in out)
    in_deg = sorted((len(bq.out_arrows(a.source)), len(bq.in_arrows(a.source))) for a in into)
    return (len(out), len(into), tuple(out_deg), tuple(in_deg))


def _arrow_counts(bq: BoundQuiver):
    counts: dict[tuple[str, str], list[str]] = {}
    for a in bq.arrows:
        counts.setdefault((a.source, a.target), []).append(a.id)
    for ids in counts.values():
        ids.sort()
    return counts


def quiver_isomorphism(a: BoundQuiver, b: BoundQuiver) -> Optional[tuple[dict, dict]]:
    """Return (vertex_map, arrow_map) from a to b, or None."""
    if len(a.vertices) != len(b.vertices) or len(a.arrows) != len(b.arrows):
        return None
    sig_a = {v: _signature(a, v) for v in a.vertices}
    sig_b = {v: _signature(b, v) for v in b.vertices}
    if sorted(sig_a.values()) != sorted(sig_b.values()):
        return None
    spans_a = relation_block_spans(a)
    spans_b = relation_block_spans(b)
    if sorted((d, len(rows)) for (_, _, d), rows in spans_a.items()) != sorted(
        (d, len(rows)) for (_, _, d), rows in spans_b.items()
    ):
        return None

    counts_a = _arrow_counts(a)
    counts_b = _arrow_counts(b)
    order = sorted(a.vertices, key=lambda v: (sig_a[v], v))
    candidates = {v: sorted(w for w in b.vertices if sig_b[w] == sig_a[v]) for v in order}

    vmap: dict[str, str] = {}
    used: set[str] = set()

    def consistent(v: str, w: str) -> bool:
        for u, x in vmap.items():
            if len(counts_a.get((v, u), [])) != len(counts_b.get((w, x), [])):
                return False
            if len(counts_a.get((u, v), [])) != len(counts_b.get((x, w), [])):
                return False
        return True

    def assign(k: int) -> Optional[tuple[dict, dict]]:
        if k == len(order):
            return _match_arrows(a, b, vmap, counts_a, counts_b, spans_a, spans_b)
        v = order[k]
        for w in candidates[v]:
            if w in used or not consistent(v, w):
                continue
            vmap[v] = w
            used.add(w)
            hit = assign(k + 1)
            if hit is not None:
                return hit
            del vmap[v]
            used.discard(w)
        return None

    return assign(0)


def _match_arrows(a, b, vmap, counts_a, counts_b, spans_a, spans_b):
    pairs = sorted(counts_a)
    choices: list[list[tuple[tuple[str, ...], tuple[str, ...]]]] = []
    for (u, v) in pairs:
        ids_a = tuple(counts_a[(u, v)])
        ids_b = tuple(counts_b.get((vmap[u], vmap[v]), []))
        if len(ids_a) != len(ids_b):
            return None
        choices.append([(ids_a, perm) for perm in sorted(permutations(ids_b))])

    def fill(k: int, amap: dict) -> Optional[dict]:
        if k == len(choices):
            return dict(amap) if _relations_transport(a, b, vmap, amap, spans_a, spans_b) else None
        for ids_a, perm in choices[k]:
            for aid, bid in zip(ids_a, perm):
                amap[aid] = bid
            hit = fill(k + 1, amap)
            if hit is not None:
                return hit
            for aid in ids_a:
                del amap[aid]
        return None

    amap = fill(0, {})
    if amap is None:
        return None
    return dict(vmap), amap


def _relations_transport(a, b, vmap, amap, spans_a, spans_b) -> bool:
    seen = set()
    for (src, tgt, deg), rows in spans_a.items():
        paths_a = a.block_paths(src, tgt, deg)
        bsrc, btgt = vmap[src], vmap[tgt]
        paths_b = b.block_paths(bsrc, btgt, deg)
        if len(paths_a) != len(paths_b):
            return False
        index_b = {p: k for k, p in enumerate(paths_b)}
        transported = []
        for row in rows:
            new = [ZERO] * len(paths_b)
            for k, x in enumerate(row):
                if x:
                    image = tuple(amap[aid] for aid in paths_a[k])
                    if image not in index_b:
                        return False
                    new[index_b[image]] += x
            transported.append(new)
        key_b = (bsrc, btgt, deg)
        seen.add(key_b)
        if span_rref(transported, len(paths_b)) != spans_b.get(key_b, []):
            return False
    return all(key in seen for key in spans_b)
