"""n-translation structure: tau detection, condition checks, hammocks.

Orientation conventions used everywhere in the engine (the paper's formal
statements swap tau and its inverse relative to its own examples; the
examples win, see the repository notes):

* maximal bound paths run from tau(i) to i and have length n+1;
* tau is defined away from the projective vertices (no maximal bound path
  ends there), tau^{-1} away from the injective ones;
* the hammock ending at i covers the diamond [tau(i), i] and needs tau(i);
  the hammock starting at i covers [i, tau^{-1}(i)] and needs tau^{-1}(i);
* ending-at-i equals starting-at-tau(i) with distances reversed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .basis import GradedBasis, grade_to_top, maximal_bound_paths
from fractions import Fraction

from .errors import (
    NotTranslationQuiverError,
    UndefinedTranslateError,
    WindowClippedError,
)
from .linalg import ZERO, rank
from .quiver import BoundQuiver, LinComb, make_lincomb, require_acyclic

ENDING = "ending"
STARTING = "starting"


@dataclass(frozen=True)
class TranslationData:
    n: int
    tau: dict
    projectives: frozenset
    injectives: frozenset
    indeterminate: frozenset = frozenset()

    def __post_init__(self):
        if self.n < 1:
            raise NotTranslationQuiverError(f"translation needs n >= 1, got {self.n}")
        object.__setattr__(self, "_inv", {w: v for v, w in self.tau.items()})

    def tau_of(self, v: str) -> Optional[str]:
        return self.tau.get(v)

    def tau_inv(self, v: str) -> Optional[str]:
        return self._inv.get(v)


def _boundary_vertices(bq: BoundQuiver, levels: Optional[dict]) -> frozenset:
    if levels is None or bq.window is None:
        return frozenset()
    lo, hi = bq.window
    return frozenset(v for v in bq.vertices if levels[v] in (lo, hi))


def detect_translation(
    bq: BoundQuiver,
    gb: Optional[GradedBasis] = None,
    levels: Optional[dict] = None,
) -> TranslationData:
    """Read the n-translation off the maximal bound paths.

    n+1 is the common maximal bound path length and tau(i) is the unique
    start vertex of the maximal bound paths ending at i.  Vertices on the
    outermost window levels are left indeterminate (their maximal paths
    may be clipped).
    """
    require_acyclic(bq)
    if gb is None:
        gb = grade_to_top(bq)
    boundary = _boundary_vertices(bq, levels)
    maxima = [
        (p, t)
        for (p, t) in maximal_bound_paths(bq, gb)
        if bq.path_source(p) not in boundary and bq.path_target(p) not in boundary
    ]
    if not maxima:
        n = bq.declared_n or 1
        interior = frozenset(bq.vertices) - boundary
        return TranslationData(n, {}, interior, interior, boundary)

    lengths = sorted({t for _, t in maxima})
    if len(lengths) != 1:
        shortest = next(p for p, t in maxima if t == lengths[0])
        longest = next(p for p, t in maxima if t == lengths[-1])
        raise NotTranslationQuiverError(
            f"maximal bound paths of different lengths {lengths}",
            witness={"lengths": lengths, "paths": [list(shortest), list(longest)]},
        )
    n = lengths[0] - 1
    if n < 1:
        raise NotTranslationQuiverError(
            f"maximal bound paths have length {lengths[0]}; need length >= 2", witness=lengths
        )

    tau: dict = {}
    for p, _ in maxima:
        src, tgt = bq.path_source(p), bq.path_target(p)
        if tau.get(tgt, src) != src:
            raise NotTranslationQuiverError(
                f"two maximal bound paths into {tgt} start at {tau[tgt]} and {src}",
                witness={"target": tgt, "sources": sorted({tau[tgt], src})},
            )
        tau[tgt] = src
    sources_seen: dict = {}
    for tgt, src in tau.items():
        if src in sources_seen:
            raise NotTranslationQuiverError(
                f"maximal bound paths from {src} end at both {sources_seen[src]} and {tgt}",
                witness={"source": src, "targets": sorted({sources_seen[src], tgt})},
            )
        sources_seen[src] = tgt

    interior = [v for v in bq.vertices if v not in boundary]
    projectives = frozenset(v for v in interior if v not in tau)
    injectives = frozenset(v for v in interior if v not in sources_seen)
    return TranslationData(n, tau, projectives, injectives, boundary)


# -- hammocks ---------------------------------------------------------------


@dataclass(frozen=True)
class Hammock:
    center: str
    direction: str
    entries: tuple  # (vertex, distance, mu)
    arrows: tuple  # (arrow_id, distance)

    def vertex_set(self) -> frozenset:
        return frozenset(v for v, _, _ in self.entries)

    def mu(self, vertex: str, distance: int) -> int:
        for v, t, m in self.entries:
            if v == vertex and t == distance:
                return m
        return 0

    def at_distance(self, distance: int) -> list:
        return sorted((v, m) for v, t, m in self.entries if t == distance)


def hammock(
    bq: BoundQuiver,
    td: TranslationData,
    center: str,
    direction: str,
    gb: Optional[GradedBasis] = None,
    levels: Optional[dict] = None,
) -> Hammock:
    """The tau-hammock at a vertex.

    ``ending``: entries (j, t, mu) with mu = dim e_center Lambda_t e_j,
    the bound paths into the center; defined when tau(center) exists.
    ``starting``: mu = dim e_j Lambda_t e_center, paths out of the center;
    defined when tau^{-1}(center) exists.
    """
    if direction not in (ENDING, STARTING):
        raise ValueError(f"direction must be {ENDING!r} or {STARTING!r}")
    if gb is None:
        gb = grade_to_top(bq)
    anchor = td.tau_of(center) if direction == ENDING else td.tau_inv(center)
    if anchor is None:
        kind = "tau" if direction == ENDING else "tau^{-1}"
        raise UndefinedTranslateError(
            f"{kind}({center}) is undefined; the {direction} hammock does not close",
            witness=center,
        )

    n = td.n
    entries = []
    for t in range(n + 2):
        for v in bq.vertices:
            mu = gb.dim(v, center, t) if direction == ENDING else gb.dim(center, v, t)
            if mu:
                entries.append((v, t, mu))

    boundary = _boundary_vertices(bq, levels)
    touched = sorted(v for v, _, _ in entries if v in boundary)
    if touched:
        raise WindowClippedError(
            f"hammock at {center} touches the window boundary", witness=touched
        )

    arrows = []
    for a in bq.arrows:
        for t in range(n + 1):
            if direction == ENDING:
                # (a, t): composing a bound path p from a.target into the
                # center (length t) after the arrow stays nonzero.
                for lc in gb.block_basis(a.target, center, t):
                    if gb.mult(lc, _unit_arrow(bq, a)).terms:
                        arrows.append((a.id, t))
                        break
            else:
                for lc in gb.block_basis(center, a.source, t):
                    if gb.mult(_unit_arrow(bq, a), lc).terms:
                        arrows.append((a.id, t))
                        break
    return Hammock(center, direction, tuple(sorted(entries)), tuple(sorted(arrows)))


def _unit_arrow(bq: BoundQuiver, a) -> LinComb:
    return make_lincomb(a.source, a.target, [(Fraction(1), (a.id,))])


# -- Koszul profiles ---------------------------------------------------------


@dataclass(frozen=True)
class KoszulProfile:
    center: str
    n: int
    degrees: tuple  # index t in 0..n+1 -> tuple of (vertex, multiplicity)

    def at(self, t: int):
        return self.degrees[t]


def koszul_profile(
    bq: BoundQuiver,
    td: TranslationData,
    center: str,
    gb: Optional[GradedBasis] = None,
    levels: Optional[dict] = None,
) -> KoszulProfile:
    """Projective multiplicity profile of the Koszul complex at a vertex.

    Degree t of the complex collects (j, mu(j, n+1-t)) from the hammock
    starting at the center, so degree n+1 is {(center, 1)} and degree 0 is
    {(tau^{-1} center, 1)}.
    """
    ham = hammock(bq, td, center, STARTING, gb=gb, levels=levels)
    degrees = []
    for t in range(td.n + 2):
        degrees.append(tuple(ham.at_distance(td.n + 1 - t)))
    return KoszulProfile(center, td.n, tuple(degrees))


# -- verification ------------------------------------------------------------


@dataclass
class ConditionReport:
    passed: bool = True
    witnesses: list = field(default_factory=list)

    def fail(self, witness):
        self.passed = False
        self.witnesses.append(witness)


@dataclass
class TranslationReport:
    n: int
    condition1: ConditionReport
    condition2: ConditionReport
    condition3: ConditionReport
    interior: frozenset
    indeterminate: frozenset
    interior_projectives: frozenset
    interior_injectives: frozenset

    @property
    def all_passed(self) -> bool:
        return self.condition1.passed and self.condition2.passed and self.condition3.passed

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "conditions": {
                "maximal_paths_uniform": self.condition1.passed,
                "top_blocks_one_dimensional": self.condition2.passed,
                "pairings_non_degenerate": self.condition3.passed,
            },
            "witnesses": {
                "condition1": self.condition1.witnesses,
                "condition2": self.condition2.witnesses,
                "condition3": self.condition3.witnesses,
            },
            "interior": sorted(self.interior),
            "indeterminate": sorted(self.indeterminate),
            "interior_projectives": sorted(self.interior_projectives),
            "interior_injectives": sorted(self.interior_injectives),
        }


def verify_n_translation(
    bq: BoundQuiver,
    td: TranslationData,
    gb: Optional[GradedBasis] = None,
    levels: Optional[dict] = None,
    margin: Optional[int] = None,
) -> TranslationReport:
    """Check the three n-translation quiver conditions, with witnesses.

    On windowed quivers only vertices whose hammocks fit with the margin
    (default n+1 levels) are checked; the rest are reported indeterminate
    rather than failed.
    """
    if gb is None:
        gb = grade_to_top(bq)
    n = td.n
    if levels is not None and bq.window is not None:
        m = n + 1 if margin is None else margin
        lo, hi = bq.window
        interior = frozenset(v for v in bq.vertices if lo + m <= levels[v] <= hi - m)
    else:
        interior = frozenset(bq.vertices) - td.indeterminate
    indeterminate = frozenset(bq.vertices) - interior

    c1 = ConditionReport()
    c2 = ConditionReport()
    c3 = ConditionReport()

    for p, t in maximal_bound_paths(bq, gb):
        src, tgt = bq.path_source(p), bq.path_target(p)
        if src not in interior or tgt not in interior:
            continue
        if t != n + 1:
            c1.fail({"path": list(p), "length": t, "expected": n + 1})
        elif td.tau_of(tgt) != src:
            c1.fail({"path": list(p), "target": tgt, "tau": td.tau_of(tgt), "source": src})

    for i in sorted(interior):
        ti = td.tau_of(i)
        if ti is None:
            continue
        top = gb.dim(ti, i, n + 1)
        if top != 1:
            c2.fail({"vertex": i, "tau": ti, "top_dim": top})
            continue
        top_basis = gb.block_basis(ti, i, n + 1)[0]
        top_path_index = {p: k for k, p in enumerate(top_basis.paths())}
        for t in range(n + 2):
            for j in bq.vertices:
                into = gb.block_basis(j, i, t)
                out = gb.block_basis(ti, j, n + 1 - t)
                if not into and not out:
                    continue
                if len(into) != len(out):
                    c3.fail({"vertex": i, "through": j, "t": t, "dims": [len(into), len(out)]})
                    continue
                if not into:
                    continue
                rows = [
                    [_top_coefficient(gb, gb.mult(x, y), top_basis) for y in out]
                    for x in into
                ]
                if rank(rows, len(out)) != len(into):
                    c3.fail({"vertex": i, "through": j, "t": t, "degenerate": True})
    interior_proj = td.projectives & interior
    interior_inj = td.injectives & interior
    return TranslationReport(n, c1, c2, c3, interior, indeterminate, interior_proj, interior_inj)


def _top_coefficient(gb: GradedBasis, product: LinComb, top_basis: LinComb):
    """Coordinate of a product class over the 1-dimensional top basis element."""
    reduced = gb.reduce(product)
    if not reduced.terms:
        return ZERO
    ref = {p: c for c, p in top_basis.terms}
    scale = None
    for c, p in reduced.terms:
        base = ref.get(p)
        if base is None or base == 0:
            raise AssertionError("class does not lie in the top block span")
        ratio = c / base
        if scale is None:
            scale = ratio
        elif scale != ratio:
            raise AssertionError("top block is not one dimensional where expected")
    return scale if scale is not None else ZERO
