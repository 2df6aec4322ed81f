"""Independent oracles used by the test suite.

The slice-count oracle scans orbit transversals of a width-3(n+1) level
band, prunes with necessary conditions of path-closed connected
transversals, and filters through is_complete_slice.  It never touches
the mutation BFS, so agreement between the two is meaningful.

Pruning soundness: in a path-closed transversal, orbits joined by an
arrow of the returning-arrow quiver cannot sit more than a hammock
diameter apart (a longer gap forces a connecting ambient path that
revisits an orbit, contradicting transversality), so candidate levels are
intersected over placed neighbors with a +/- (n+1) window; and a pair of
placed vertices with an ambient path through an orbit placed at a
different level already violates path closure.  The scan asserts that
nothing it accepts sits near the pruning edge.
"""

from collections import deque

from quivermute.extension import build_zq
from quivermute.iso import quiver_isomorphism
from quivermute.mutation import SliceEmbedding, _reachability, is_complete_slice, truncation


def scan_complete_slices(base, n):
    """All complete tau-slices with levels in a width-3(n+1) band, up to shift.

    Returns (normalized_subsets, class_representatives): frozensets of
    (orbit, level) with minimum level zero, and pairwise non-isomorphic
    truncated bound quivers.
    """
    width = 3 * (n + 1)
    zq = build_zq(base, (-(n + 2), width + n + 1))
    bq = zq.quiver
    reach = _reachability(bq)
    inv_reach = {v: set() for v in bq.vertices}
    for v, targets in reach.items():
        for w in targets:
            inv_reach[w].add(v)

    neighbors = {o: [] for o in zq.base.vertices}
    for arrow in zq.te.quiver.arrows:
        w = zq.te.arrow_weight(arrow.id)
        neighbors[arrow.source].append((arrow.target, w, "out"))
        neighbors[arrow.target].append((arrow.source, w, "in"))

    order = []
    first = sorted(zq.base.vertices)[0]
    seen = {first}
    queue = deque([first])
    while queue:
        o = queue.popleft()
        order.append(o)
        for v, _, _ in sorted(neighbors[o]):
            if v not in seen:
                seen.add(v)
                queue.append(v)
    assert len(order) == len(zq.base.vertices), "base quiver must be connected"

    K = n + 1
    band_lo, band_hi = 0, width - 1
    found = set()
    assignment: dict = {}

    def candidate_levels(o):
        lo_c, hi_c = band_lo, band_hi
        for v, w, kind in neighbors[o]:
            if v not in assignment:
                continue
            # arrow o -> v: level(v) = level(o) + w, so center at level(v) - w;
            # arrow v -> o: center at level(v) + w
            center = assignment[v] - w if kind == "out" else assignment[v] + w
            lo_c = max(lo_c, center - K)
            hi_c = min(hi_c, center + K)
        return range(lo_c, hi_c + 1)

    def escape_violation(o, l):
        placed = {**assignment, o: l}
        x = zq.vertex(o, l)
        for u, lu in assignment.items():
            y = zq.vertex(u, lu)
            for a, b in ((y, x), (x, y)):
                if b in reach[a]:
                    for z in reach[a] & inv_reach[b]:
                        zo, zl = zq.orbit_level(z)
                        if zo in placed and placed[zo] != zl:
                            return True
        return False

    def dfs(k):
        if k == len(order):
            subset = frozenset(zq.vertex(o, l) for o, l in assignment.items())
            ok, _ = is_complete_slice(SliceEmbedding(zq, subset))
            if ok:
                shift = min(assignment.values())
                found.add(frozenset((o, l - shift) for o, l in assignment.items()))
            return
        o = order[k]
        for l in candidate_levels(o):
            if escape_violation(o, l):
                continue
            assignment[o] = l
            dfs(k + 1)
            del assignment[o]

    dfs(0)

    arrows_between = {}
    for arrow in zq.te.quiver.arrows:
        arrows_between.setdefault((arrow.source, arrow.target), []).append(
            zq.te.arrow_weight(arrow.id)
        )
    for subset in found:
        levels = dict(subset)
        for (u, v), weights in arrows_between.items():
            for w in weights:
                assert abs(levels[v] - (levels[u] + w)) <= K - 1, (
                    "oracle pruning window too small",
                    subset,
                )

    reps = []
    for subset in sorted(found, key=sorted):
        emb = SliceEmbedding(zq, frozenset(zq.vertex(o, l) for o, l in subset))
        quiv = truncation(zq, emb.subset)
        if not any(quiver_isomorphism(quiv, r) is not None for r in reps):
            reps.append(quiv)
    return found, reps
