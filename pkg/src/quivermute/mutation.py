"""Convex truncations, movable vertices, tau-mutations and tilt reports.

A slice embedding is a vertex subset of an ambient translation quiver.
Mutation s^- removes a forward movable sink i and adds tau(i); s^+ removes
a backward movable source and adds its inverse translate.  Completeness of
a slice asks for an orbit transversal whose induced subquiver is closed
under ambient paths between its vertices.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Any, Optional

from .basis import GradedBasis, grade_to_top
from .dual import quadratic_dual
from .errors import (
    ConvexityRequiredError,
    NotMovableError,
    NotReachableError,
    QuiverError,
    WindowClippedError,
    WindowTooSmallError,
)
from .iso import quiver_isomorphism
from .quiver import BoundQuiver, canonical_quiver, make_lincomb
from .translation import ENDING, STARTING, KoszulProfile, TranslationData, hammock, koszul_profile

MINUS = "minus"
PLUS = "plus"


@dataclass(frozen=True)
class FiniteAmbient:
    """A finite translation quiver used directly as mutation ambient."""

    quiver: BoundQuiver
    td: TranslationData
    levels: Any = None
    orbits: Any = None

    def __post_init__(self):
        if self.orbits is None:
            object.__setattr__(self, "orbits", _tau_orbits(self.quiver, self.td))

    def gb(self) -> GradedBasis:
        cached = getattr(self, "_gb", None)
        if cached is None:
            cached = grade_to_top(self.quiver)
            object.__setattr__(self, "_gb", cached)
        return cached

    def vertex(self, orbit: str, level: int) -> str:
        lookup = getattr(self, "_vertex_lookup", None)
        if lookup is None:
            if self.levels is None:
                raise QuiverError("ambient carries no level structure")
            lookup = {(self.orbits[v], self.levels[v]): v for v in self.quiver.vertices}
            object.__setattr__(self, "_vertex_lookup", lookup)
        try:
            return lookup[(orbit, level)]
        except KeyError:
            raise WindowClippedError(f"no vertex for orbit {orbit} at level {level}")

    def orbit_level(self, v: str):
        return self.orbits[v], self.levels[v]

    @property
    def window(self):
        return self.quiver.window

    def ensure_window(self, lo: int, hi: int):
        return self

    def same_ambient(self, other) -> bool:
        return (
            getattr(other, "quiver", None) is not None
            and self.quiver.vertices == other.quiver.vertices
            and self.quiver.arrows == other.quiver.arrows
            and self.quiver.relations == other.quiver.relations
        )


def _tau_orbits(bq: BoundQuiver, td: TranslationData) -> dict:
    orbit = {}
    for v in bq.vertices:
        if v in orbit:
            continue
        chain = [v]
        w = v
        while td.tau_of(w) is not None and td.tau_of(w) not in chain:
            w = td.tau_of(w)
            chain.append(w)
        w = v
        while td.tau_inv(w) is not None and td.tau_inv(w) not in chain:
            w = td.tau_inv(w)
            chain.append(w)
        rep = min(chain)
        for u in chain:
            orbit[u] = rep
    return orbit


@dataclass(frozen=True)
class SliceEmbedding:
    ambient: Any
    subset: frozenset

    def __post_init__(self):
        missing = [v for v in self.subset if v not in self.ambient.quiver.vertices]
        if missing:
            raise QuiverError(f"subset vertices {sorted(missing)} are not in the ambient")

    def vertices(self) -> list:
        return sorted(self.subset)

    def orbit_levels(self):
        """subset as a set of (orbit, level) pairs; needs a leveled ambient."""
        amb = self.ambient
        return frozenset((amb.orbits[v], amb.levels[v]) for v in self.subset)


# -- reachability ------------------------------------------------------------


def _reachability(bq: BoundQuiver) -> dict:
    cached = getattr(bq, "_reach_cache", None)
    if cached is not None:
        return cached
    order = bq.topological_order()
    if order is None:
        raise QuiverError("ambient quiver must be acyclic")
    reach: dict = {v: set() for v in bq.vertices}
    for v in reversed(order):
        acc = reach[v]
        for a in bq.out_arrows(v):
            acc.add(a.target)
            acc |= reach[a.target]
    object.__setattr__(bq, "_reach_cache", reach)
    return reach


def _some_path(bq: BoundQuiver, start: str, goal: str, allowed=None) -> Optional[list]:
    """Arrow-id list of one path start -> goal staying inside `allowed`."""
    queue = deque([start])
    parent: dict = {start: None}
    while queue:
        v = queue.popleft()
        for a in bq.out_arrows(v):
            w = a.target
            if allowed is not None and w != goal and w not in allowed:
                continue
            if w not in parent:
                parent[w] = (v, a.id)
                if w == goal:
                    queue.clear()
                    break
                queue.append(w)
    if goal not in parent:
        return None
    path = []
    v = goal
    while parent[v] is not None:
        v, aid = parent[v]
        path.append(aid)
    path.reverse()
    return path


# -- convexity ---------------------------------------------------------------


def is_convex(ambient, subset) -> tuple[bool, Optional[list]]:
    """Paper convexity: once one path between two subset vertices lies in the
    subset, every ambient path between them must.  Witness: an escaping path."""
    bq = ambient.quiver if hasattr(ambient, "quiver") else ambient
    sub = frozenset(subset)
    if not sub:
        raise QuiverError("subset must be nonempty")
    reach = _reachability(bq)
    inside_reach = _subset_reachability(bq, sub)
    for x in sorted(sub):
        for y in sorted(sub):
            if y not in inside_reach[x]:
                continue
            for z in sorted(reach[x] - sub):
                if y in reach[z]:
                    first = _some_path(bq, x, z)
                    second = _some_path(bq, z, y)
                    return False, first + second
    return True, None


def _subset_reachability(bq: BoundQuiver, sub: frozenset) -> dict:
    reach: dict = {v: set() for v in sub}
    order = [v for v in bq.topological_order() if v in sub]
    for v in reversed(order):
        acc = reach[v]
        for a in bq.out_arrows(v):
            if a.target in sub:
                acc.add(a.target)
                acc |= reach[a.target]
    return reach


def _path_closed(bq: BoundQuiver, sub: frozenset) -> tuple[bool, Optional[dict]]:
    """No ambient path between subset vertices may leave the subset at all."""
    reach = _reachability(bq)
    for x in sorted(sub):
        for z in sorted(reach[x] - sub):
            hits = reach[z] & sub
            if hits:
                return False, {"from": x, "through": z, "to": min(hits)}
    return True, None


def _connected(bq: BoundQuiver, sub: frozenset) -> bool:
    if not sub:
        return True
    start = min(sub)
    seen = {start}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for a in bq.out_arrows(v):
            if a.target in sub and a.target not in seen:
                seen.add(a.target)
                queue.append(a.target)
        for a in bq.in_arrows(v):
            if a.source in sub and a.source not in seen:
                seen.add(a.source)
                queue.append(a.source)
    return seen == sub


# -- truncation --------------------------------------------------------------


def truncation(ambient, subset) -> BoundQuiver:
    """Full bound subquiver on the subset with blockwise-restricted relations."""
    bq = ambient.quiver if hasattr(ambient, "quiver") else ambient
    sub = frozenset(subset)
    arrows = [a for a in bq.arrows if a.source in sub and a.target in sub]
    keep = {a.id for a in arrows}
    relations = []
    for rel in bq.relations:
        if rel.source not in sub or rel.target not in sub:
            continue
        terms = [(c, p) for c, p in rel.terms if all(aid in keep for aid in p)]
        if terms:
            lc = make_lincomb(rel.source, rel.target, terms)
            if lc.terms:
                relations.append(lc)
    name = (bq.name + "|slice") if bq.name else "slice"
    return canonical_quiver(sorted(sub), arrows, relations, name=name)


@dataclass
class TruncationReport:
    convex: bool
    dims_match: bool
    ideals_match: bool
    mismatches: list

    @property
    def agree(self) -> bool:
        return self.dims_match and self.ideals_match


def truncation_algebras_agree(ambient, subset) -> TruncationReport:
    """Compare the idempotent subalgebra with the restricted bound quiver algebra.

    For a convex subset every block between subset vertices is either fully
    inside or carries no subset path at all, so the two algebras can be
    compared path list against path list: equal ideal spans give equal
    dimensions and equal structure constants.
    """
    ok, witness = is_convex(ambient, subset)
    if not ok:
        raise ConvexityRequiredError("truncation comparison needs a convex subset", witness=witness)
    bq = ambient.quiver if hasattr(ambient, "quiver") else ambient
    amb_gb = ambient.gb() if hasattr(ambient, "gb") else grade_to_top(bq)
    sub = frozenset(subset)
    trunc = truncation(ambient, subset)
    tr_gb = grade_to_top(trunc)

    mismatches = []
    dims_ok = True
    ideals_ok = True
    top = tr_gb.loewy_length() or tr_gb.max_degree
    for t in range(top + 1):
        for i in sorted(sub):
            for j in sorted(sub):
                inner = tr_gb.block_paths(i, j, t)
                outer = bq.block_paths(i, j, t) if t <= amb_gb.max_degree else []
                dim_sub = amb_gb.dim(i, j, t) if t <= amb_gb.max_degree else 0
                dim_quo = tr_gb.dim(i, j, t)
                if dim_sub != dim_quo:
                    dims_ok = False
                    mismatches.append({"block": (i, j, t), "subalgebra": dim_sub, "quotient": dim_quo})
                    continue
                if inner and inner == outer:
                    span_amb = amb_gb.ideal.get((i, j, t), [])
                    span_tr = tr_gb.ideal.get((i, j, t), [])
                    if span_amb != span_tr:
                        ideals_ok = False
                        mismatches.append({"block": (i, j, t), "ideal_mismatch": True})
    return TruncationReport(True, dims_ok, ideals_ok, mismatches)


# -- movability --------------------------------------------------------------


@dataclass(frozen=True)
class MovableVertex:
    vertex: str
    is_sink: bool
    is_source: bool
    leakage: tuple = ()


def _induced_degrees(bq: BoundQuiver, sub: frozenset, v: str) -> tuple[int, int]:
    out_deg = sum(1 for a in bq.out_arrows(v) if a.target in sub)
    in_deg = sum(1 for a in bq.in_arrows(v) if a.source in sub)
    return out_deg, in_deg


def _cached_hammock(amb, center: str, direction: str):
    cache = getattr(amb, "_hammock_cache", None)
    if cache is None:
        cache = {}
        object.__setattr__(amb, "_hammock_cache", cache)
    key = (center, direction)
    hit = cache.get(key)
    if hit is None:
        hit = hammock(amb.quiver, amb.td, center, direction, gb=amb.gb(), levels=amb.levels)
        cache[key] = hit
    return hit


def _hammock_with_expansion(emb: SliceEmbedding, center: str, direction: str):
    amb = emb.ambient
    try:
        return amb, _cached_hammock(amb, center, direction)
    except WindowClippedError:
        if amb.levels is None or amb.window is None:
            raise
        lo, hi = amb.window
        n = amb.td.n
        bigger = amb.ensure_window(lo - (n + 1), hi + (n + 1))
        if bigger is amb:
            raise
        return bigger, _cached_hammock(bigger, center, direction)


def movable_vertices(emb: SliceEmbedding, tau_perp: Optional[dict] = None):
    """Forward and backward movable vertices of the slice, sink/source flagged.

    Forward movable: the hammock ending at the vertex sticks out of the
    subset exactly at its translate (and the optional dual translate stays
    outside).  Backward movable dually with the starting hammock.
    """
    amb = emb.ambient
    bq = amb.quiver
    sub = emb.subset
    forward: list[MovableVertex] = []
    backward: list[MovableVertex] = []
    for v in sorted(sub):
        out_deg, in_deg = _induced_degrees(bq, sub, v)
        tv = amb.td.tau_of(v)
        if tv is not None and (tau_perp is None or tau_perp.get(v) not in sub):
            try:
                _, ham = _hammock_with_expansion(emb, v, ENDING)
                outside = ham.vertex_set() - sub
                if outside == {tv}:
                    forward.append(MovableVertex(v, out_deg == 0, in_deg == 0))
            except WindowClippedError as err:
                raise WindowClippedError(
                    f"hammock at {v} does not fit even after window expansion", witness=err.witness
                )
        uv = amb.td.tau_inv(v)
        if uv is not None and (tau_perp is None or _inv_tau_perp(tau_perp, v) not in sub):
            try:
                _, ham = _hammock_with_expansion(emb, v, STARTING)
                outside = ham.vertex_set() - sub
                if outside == {uv}:
                    backward.append(MovableVertex(v, out_deg == 0, in_deg == 0))
            except WindowClippedError as err:
                raise WindowClippedError(
                    f"hammock at {v} does not fit even after window expansion", witness=err.witness
                )
    return forward, backward


def _inv_tau_perp(tau_perp: dict, v: str):
    for key, val in tau_perp.items():
        if val == v:
            return key
    return None


# -- mutation ----------------------------------------------------------------


def mutate(emb: SliceEmbedding, vertex: str, direction: str) -> SliceEmbedding:
    """Replace a forward movable sink by its translate (minus) or a backward
    movable source by its inverse translate (plus)."""
    if direction not in (MINUS, PLUS):
        raise QuiverError(f"direction must be {MINUS!r} or {PLUS!r}")
    if vertex not in emb.subset:
        raise NotMovableError(f"{vertex} is not in the slice", witness=vertex)
    amb = emb.ambient
    bq = amb.quiver
    out_deg, in_deg = _induced_degrees(bq, emb.subset, vertex)
    if direction == MINUS and out_deg != 0:
        raise NotMovableError(f"{vertex} is not a sink of the slice", witness=vertex)
    if direction == PLUS and in_deg != 0:
        raise NotMovableError(f"{vertex} is not a source of the slice", witness=vertex)

    if direction == MINUS:
        target = amb.td.tau_of(vertex)
        ham_dir = ENDING
    else:
        target = amb.td.tau_inv(vertex)
        ham_dir = STARTING
    if target is None:
        raise NotMovableError(
            f"translate of {vertex} is undefined; cannot mutate {direction}", witness=vertex
        )
    new_amb, ham = _hammock_with_expansion(emb, vertex, ham_dir)
    leakage = sorted(ham.vertex_set() - emb.subset - {target})
    if leakage:
        raise NotMovableError(
            f"{vertex} is not {'forward' if direction == MINUS else 'backward'} movable: "
            f"hammock leaks outside the slice",
            witness=leakage,
        )
    new_subset = frozenset(emb.subset - {vertex} | {target})
    result = SliceEmbedding(new_amb, new_subset)
    result = _with_margin(result)
    ok, witness = is_convex(result.ambient, result.subset)
    if not ok:
        raise QuiverError(f"mutation at {vertex} produced a non-convex subset", witness=witness)
    return result


def _with_margin(emb: SliceEmbedding) -> SliceEmbedding:
    amb = emb.ambient
    if amb.levels is None or amb.window is None:
        return emb
    n = amb.td.n
    lv = [amb.levels[v] for v in emb.subset]
    lo, hi = amb.window
    want_lo, want_hi = min(lv) - (n + 1), max(lv) + (n + 1)
    if want_lo < lo or want_hi > hi:
        bigger = amb.ensure_window(min(lo, want_lo), max(hi, want_hi))
        if bigger is not amb:
            return SliceEmbedding(bigger, emb.subset)
    return emb


# -- complete slices ---------------------------------------------------------


def is_complete_slice(emb: SliceEmbedding) -> tuple[bool, Optional[dict]]:
    """Convex orbit transversal, closed under ambient paths and connected.

    The conditional convexity of `is_convex` is not enough here: a
    transversal with an unreachable stray vertex would slip through and
    never be produced by mutation, so completeness demands full path
    closure between subset vertices (which implies the conditional form).
    """
    amb = emb.ambient
    bq = amb.quiver
    sub = emb.subset
    if amb.levels is not None and amb.window is not None:
        lo, hi = amb.window
        lv = [amb.levels[v] for v in sub]
        if min(lv) - 1 < lo or max(lv) + 1 > hi:
            raise WindowTooSmallError(
                "window must span at least one translation step beyond the subset",
                witness={"window": [lo, hi], "levels": [min(lv), max(lv)]},
            )
    orbits = amb.orbits
    count: dict = {}
    for v in sub:
        count[orbits[v]] = count.get(orbits[v], 0) + 1
    missing = sorted(set(orbits.values()) - set(count))
    doubled = sorted(o for o, c in count.items() if c > 1)
    if missing or doubled:
        return False, {"missing_orbits": missing, "doubled_orbits": doubled}
    closed, witness = _path_closed(bq, sub)
    if not closed:
        return False, {"escape": witness}
    if not _connected(bq, sub):
        return False, {"disconnected": True}
    return True, None


# -- enumeration -------------------------------------------------------------


@dataclass
class SliceClass:
    index: int
    subset: frozenset  # normalized (orbit, level) pairs
    quiver: BoundQuiver


@dataclass
class Enumeration:
    classes: list
    edges: list  # (from_class, orbit, to_class), deduplicated and sorted
    subsets: dict  # normalized subset -> class index
    start_class: int

    def class_count(self) -> int:
        return len(self.classes)

    def as_dict(self) -> dict:
        return {
            "class_count": len(self.classes),
            "start_class": self.start_class,
            "classes": [
                {"id": c.index, "subset": sorted([o, l] for (o, l) in c.subset)} for c in self.classes
            ],
            "edges": [{"from": a, "sink": o, "to": b} for (a, o, b) in self.edges],
        }


def normalize_subset(emb: SliceEmbedding) -> frozenset:
    pairs = emb.orbit_levels()
    base = min(l for _, l in pairs)
    return frozenset((o, l - base) for o, l in pairs)


def _materialize(amb, pairs: frozenset) -> SliceEmbedding:
    subset = frozenset(amb.vertex(o, l) for o, l in pairs)
    return _with_margin(SliceEmbedding(amb, subset))


def enumerate_slices(start: SliceEmbedding, max_classes: int = 10_000) -> Enumeration:
    """Breadth-first closure of a complete tau-slice under sink mutations.

    Slices are keyed by their (orbit, level) shape with the lowest level
    shifted to 0; classes merge shapes whose truncated bound quivers are
    isomorphic.  The closure of s^- alone visits the whole component.
    """
    ok, why = is_complete_slice(start)
    if not ok:
        raise QuiverError(f"enumeration must start from a complete tau-slice: {why}")
    amb = start.ambient
    classes: list[SliceClass] = []
    subsets: dict = {}
    edges: set = set()

    def classify(pairs: frozenset, emb: SliceEmbedding) -> int:
        if pairs in subsets:
            return subsets[pairs]
        quiv = truncation(emb.ambient, emb.subset)
        for cls in classes:
            if quiver_isomorphism(quiv, cls.quiver) is not None:
                subsets[pairs] = cls.index
                return cls.index
        cls = SliceClass(len(classes), pairs, quiv)
        classes.append(cls)
        subsets[pairs] = cls.index
        return cls.index

    start_pairs = normalize_subset(start)
    start_emb = _materialize(amb, start_pairs)
    start_class = classify(start_pairs, start_emb)
    queue = deque([start_pairs])
    seen = {start_pairs}
    while queue:
        pairs = queue.popleft()
        emb = _materialize(amb, pairs)
        amb = emb.ambient  # keep the widest window seen so far
        cur_class = subsets[pairs]
        bq = emb.ambient.quiver
        for v in emb.vertices():
            out_deg, _ = _induced_degrees(bq, emb.subset, v)
            if out_deg != 0:
                continue
            nxt = mutate(emb, v, MINUS)
            amb = nxt.ambient if nxt.ambient.levels is not None else amb
            npairs = normalize_subset(nxt)
            ncls = classify(npairs, nxt)
            edges.add((cur_class, emb.ambient.orbits[v], ncls))
            if npairs not in seen:
                seen.add(npairs)
                queue.append(npairs)
                if len(seen) > max_classes:
                    raise QuiverError("slice enumeration exceeded the safety cap")
    return Enumeration(classes, sorted(edges), subsets, start_class)


def mutation_path(a: SliceEmbedding, b: SliceEmbedding):
    """A concrete labeled mutation sequence from a to b, or NotReachable."""
    if not a.ambient.same_ambient(b.ambient):
        raise NotReachableError("slices live in different ambient quivers")
    for emb in (a, b):
        ok, why = is_complete_slice(emb)
        if not ok:
            raise QuiverError(f"mutation path endpoints must be complete slices: {why}")
    goal = normalize_subset(b)
    start_pairs = normalize_subset(a)
    if start_pairs == goal:
        return []
    amb = a.ambient
    queue = deque([start_pairs])
    back: dict = {start_pairs: None}
    found = False
    while queue and not found:
        pairs = queue.popleft()
        emb = _materialize(amb, pairs)
        amb = emb.ambient
        bq = emb.ambient.quiver
        moves = []
        for v in emb.vertices():
            out_deg, in_deg = _induced_degrees(bq, emb.subset, v)
            if out_deg == 0:
                moves.append((v, MINUS))
            if in_deg == 0:
                moves.append((v, PLUS))
        for v, direction in moves:
            try:
                nxt = mutate(emb, v, direction)
            except (NotMovableError, WindowClippedError):
                continue
            amb = nxt.ambient if nxt.ambient.levels is not None else amb
            npairs = normalize_subset(nxt)
            if npairs not in back:
                back[npairs] = (pairs, emb.ambient.orbits[v], direction)
                if npairs == goal:
                    found = True
                    break
                queue.append(npairs)
    if goal not in back:
        raise NotReachableError("no mutation sequence connects the two slices")
    labels = []
    cur = goal
    while back[cur] is not None:
        prev, orbit, direction = back[cur]
        labels.append((orbit, direction))
        cur = prev
    labels.reverse()

    # replay on the actual starting slice to produce concrete vertices
    steps = []
    emb = a
    for orbit, direction in labels:
        vertex = next(v for v in emb.vertices() if emb.ambient.orbits[v] == orbit)
        steps.append((vertex, direction))
        emb = mutate(emb, vertex, direction)
    return steps


# -- tilt reports ------------------------------------------------------------


@dataclass
class TiltReport:
    direction: str
    pivot: str
    kept: tuple
    new_vertex: str
    presentation: dict  # profile degree -> ((vertex, multiplicity), ...)
    profile: KoszulProfile
    dimension_vector: dict
    subset_after: frozenset
    dual_quiver: Optional[BoundQuiver]
    is_n_apr: bool

    def as_dict(self) -> dict:
        return {
            "direction": self.direction,
            "pivot": self.pivot,
            "kept": sorted(self.kept),
            "new_vertex": self.new_vertex,
            "presentation": {str(d): [[v, m] for v, m in entries] for d, entries in self.presentation.items()},
            "dimension_vector": {v: m for v, m in sorted(self.dimension_vector.items())},
            "subset_after": sorted(self.subset_after),
            "is_n_apr": self.is_n_apr,
        }


def tau_tilt(emb: SliceEmbedding, vertex: str, direction: str) -> TiltReport:
    """Tilt report for the mutation at a movable vertex.

    The endomorphism algebra of the tilting module is the dual bound quiver
    of the mutated truncation; the report carries its combinatorial shadow:
    kept projective summands, the presentation profile of the new summand
    (Koszul profile of the new vertex at the two degrees next to the top)
    and the dimension vector of the new summand over the dual ambient.
    """
    if direction not in (MINUS, PLUS):
        raise QuiverError(f"direction must be {MINUS!r} or {PLUS!r}")
    amb = emb.ambient
    forward, backward = movable_vertices(emb)
    movables = {MINUS: {m.vertex: m for m in forward}, PLUS: {m.vertex: m for m in backward}}
    if vertex not in movables[direction]:
        raise NotMovableError(
            f"{vertex} is not {'forward' if direction == MINUS else 'backward'} movable",
            witness=vertex,
        )
    record = movables[direction][vertex]
    is_n_apr = (direction == MINUS and record.is_sink) or (direction == PLUS and record.is_source)

    new_vertex = amb.td.tau_of(vertex) if direction == MINUS else amb.td.tau_inv(vertex)
    new_subset = frozenset(emb.subset - {vertex} | {new_vertex})
    result = _with_margin(SliceEmbedding(amb, new_subset))
    amb = result.ambient
    convex, witness = is_convex(amb, new_subset)
    dual = None
    if convex:
        dual = quadratic_dual(truncation(amb, new_subset))
    elif is_n_apr:
        raise QuiverError(f"sink/source mutation at {vertex} produced a non-convex subset", witness=witness)

    if direction == MINUS:
        profile = koszul_profile(amb.quiver, amb.td, new_vertex, gb=amb.gb(), levels=amb.levels)
    else:
        profile = _ending_profile(amb, new_vertex)
    presentation = {1: profile.at(1), 2: profile.at(2)}

    dual_amb_gb = _dual_ambient_gb(amb)
    dimension_vector = {}
    for v in sorted(new_subset):
        total = 0
        for t in range(dual_amb_gb.max_degree + 1):
            total += dual_amb_gb.dim(new_vertex, v, t)
        if total:
            dimension_vector[v] = total

    return TiltReport(
        direction=direction,
        pivot=vertex,
        kept=tuple(sorted(emb.subset - {vertex})),
        new_vertex=new_vertex,
        presentation=presentation,
        profile=profile,
        dimension_vector=dimension_vector,
        subset_after=new_subset,
        dual_quiver=dual,
        is_n_apr=is_n_apr,
    )


def _ending_profile(amb, center: str) -> KoszulProfile:
    ham = hammock(amb.quiver, amb.td, center, ENDING, gb=amb.gb(), levels=amb.levels)
    degrees = []
    for t in range(amb.td.n + 2):
        degrees.append(tuple(ham.at_distance(amb.td.n + 1 - t)))
    return KoszulProfile(center, amb.td.n, tuple(degrees))


def _dual_ambient_gb(amb) -> GradedBasis:
    if hasattr(amb, "dual_gb"):
        return amb.dual_gb()
    cached = getattr(amb, "_dual_gb_cache", None)
    if cached is None:
        cached = grade_to_top(quadratic_dual(amb.quiver))
        object.__setattr__(amb, "_dual_gb_cache", cached)
    return cached
