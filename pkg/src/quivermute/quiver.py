"""Bound quivers: vertices, arrows, paths and normalized homogeneous relations.

Paths are stored in traversal order (first arrow first).  The algebra
composes right-to-left, so the product of the classes of ``[a]`` and
``[b]`` with ``a: 1 -> 2`` and ``b: 2 -> 3`` is the class of ``[a, b]``,
written ``ba`` in algebraic notation.  All formulas are translated at this
boundary and serialized files always use traversal order.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Any, Iterable, Optional, Sequence

from .errors import (
    CompositionError,
    CyclicQuiverError,
    DuplicateIdError,
    HomogeneityError,
    NormalizationError,
    UnknownIdError,
)
from .linalg import ZERO, frac, span_rref

DEFAULT_DEGREE_CAP = 32
DEGREE_CAP_ENV = "QUIVERMUTE_DEGREE_CAP"


def degree_cap() -> int:
    raw = os.environ.get(DEGREE_CAP_ENV)
    if raw is None:
        return DEFAULT_DEGREE_CAP
    try:
        cap = int(raw)
    except ValueError:
        return DEFAULT_DEGREE_CAP
    return cap if cap > 0 else DEFAULT_DEGREE_CAP


Path = tuple[str, ...]


@dataclass(frozen=True, order=True)
class Arrow:
    id: str
    source: str
    target: str


@dataclass(frozen=True)
class LinComb:
    """Linear combination of parallel equal-length paths.

    Normalized: all paths share source and target, all have the same
    length, no zero coefficients, no duplicate paths, terms sorted by the
    canonical (lexicographic arrow-id sequence) path order.
    """

    source: str
    target: str
    terms: tuple[tuple[Fraction, Path], ...]

    @property
    def degree(self) -> int:
        return len(self.terms[0][1]) if self.terms else 0

    def paths(self) -> list[Path]:
        return [p for _, p in self.terms]

    def __str__(self) -> str:
        bits = []
        for c, p in self.terms:
            word = "*".join(p)
            bits.append(f"({c})·{word}" if c != 1 else word)
        return " + ".join(bits) if bits else "0"


def make_lincomb(source: str, target: str, terms: Iterable[tuple[Fraction, Sequence[str]]]) -> LinComb:
    """Collect, drop zeros and sort terms into the canonical order."""
    acc: dict[Path, Fraction] = {}
    for c, p in terms:
        key = tuple(p)
        acc[key] = acc.get(key, ZERO) + frac(c)
    clean = tuple((c, p) for p, c in sorted(acc.items()) if c != 0)
    return LinComb(source, target, clean)


@dataclass(frozen=True)
class BoundQuiver:
    """A quiver with normalized homogeneous relations, immutable once built."""

    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]
    relations: tuple[LinComb, ...] = ()
    name: str = ""
    declared_n: Optional[int] = None
    translation: Any = None
    window: Optional[tuple[int, int]] = None

    def __post_init__(self):
        by_id = {}
        out: dict[str, list[Arrow]] = {v: [] for v in self.vertices}
        into: dict[str, list[Arrow]] = {v: [] for v in self.vertices}
        for a in self.arrows:
            by_id[a.id] = a
            if a.source in out:
                out[a.source].append(a)
            if a.target in into:
                into[a.target].append(a)
        object.__setattr__(self, "_by_id", by_id)
        object.__setattr__(self, "_out", {v: tuple(sorted(l)) for v, l in out.items()})
        object.__setattr__(self, "_in", {v: tuple(sorted(l)) for v, l in into.items()})

    def arrow(self, arrow_id: str) -> Arrow:
        try:
            return self._by_id[arrow_id]
        except KeyError:
            raise UnknownIdError(f"unknown arrow id {arrow_id!r}", witness=arrow_id)

    def out_arrows(self, v: str) -> tuple[Arrow, ...]:
        return self._out.get(v, ())

    def in_arrows(self, v: str) -> tuple[Arrow, ...]:
        return self._in.get(v, ())

    def path_source(self, p: Path) -> str:
        return self.arrow(p[0]).source

    def path_target(self, p: Path) -> str:
        return self.arrow(p[-1]).target

    def path_is_composable(self, p: Path) -> bool:
        for k in range(len(p) - 1):
            if self.arrow(p[k]).target != self.arrow(p[k + 1]).source:
                return False
        return True

    def is_acyclic(self) -> bool:
        return self.topological_order() is not None

    def topological_order(self) -> Optional[list[str]]:
        indeg = {v: 0 for v in self.vertices}
        for a in self.arrows:
            indeg[a.target] += 1
        queue = sorted(v for v, d in indeg.items() if d == 0)
        order = []
        while queue:
            v = queue.pop(0)
            order.append(v)
            added = []
            for a in self.out_arrows(v):
                indeg[a.target] -= 1
                if indeg[a.target] == 0:
                    added.append(a.target)
            for w in sorted(added):
                queue.append(w)
        return order if len(order) == len(self.vertices) else None

    def sinks(self) -> list[str]:
        return [v for v in self.vertices if not self.out_arrows(v)]

    def sources(self) -> list[str]:
        return [v for v in self.vertices if not self.in_arrows(v)]

    def paths_of_length(self, t: int) -> dict[tuple[str, str], list[Path]]:
        """All plain paths of length t, grouped by (source, target) block."""
        blocks: dict[tuple[str, str], list[Path]] = {}
        if t == 0:
            for v in self.vertices:
                blocks[(v, v)] = [()]
            return blocks
        frontier: list[tuple[str, Path]] = [(a.source, (a.id,)) for a in sorted(self.arrows)]
        for _ in range(t - 1):
            nxt = []
            for src, p in frontier:
                tail = self.arrow(p[-1]).target
                for a in self.out_arrows(tail):
                    nxt.append((src, p + (a.id,)))
            frontier = nxt
        for src, p in frontier:
            blocks.setdefault((src, self.path_target(p)), []).append(p)
        for block in blocks.values():
            block.sort()
        return blocks

    def block_paths(self, source: str, target: str, t: int) -> list[Path]:
        return self.paths_of_length(t).get((source, target), [])


@dataclass
class ValidationReport:
    errors: list = field(default_factory=list)
    canonical: Optional[BoundQuiver] = None

    @property
    def ok(self) -> bool:
        return not self.errors

    def raise_if_invalid(self):
        if self.errors:
            raise self.errors[0]


def validate(bq: BoundQuiver) -> ValidationReport:
    """Check the structural invariants and canonicalize the relation set.

    On success the report carries a quiver whose relations are in RREF
    canonical form within each (source, target, degree) block, blocks
    ordered lexicographically.  Validation is idempotent.
    """
    report = ValidationReport()
    seen = set()
    for v in bq.vertices:
        if not v:
            report.errors.append(DuplicateIdError("empty vertex label"))
        if v in seen:
            report.errors.append(DuplicateIdError(f"duplicate vertex {v!r}", witness=v))
        seen.add(v)
    arrow_ids = set()
    for a in bq.arrows:
        if a.id in arrow_ids or a.id in seen:
            report.errors.append(DuplicateIdError(f"duplicate id {a.id!r}", witness=a.id))
        arrow_ids.add(a.id)
        if a.source not in seen or a.target not in seen:
            report.errors.append(UnknownIdError(f"arrow {a.id!r} touches unknown vertex", witness=a.id))
    if report.errors:
        return report

    for idx, rel in enumerate(bq.relations):
        label = f"relation #{idx} ({rel})"
        if not rel.terms:
            report.errors.append(NormalizationError(f"{label}: empty relation", witness=idx))
            continue
        degrees = set()
        for c, p in rel.terms:
            if c == 0:
                report.errors.append(NormalizationError(f"{label}: zero coefficient", witness=idx))
            for aid in p:
                if aid not in arrow_ids:
                    report.errors.append(UnknownIdError(f"{label}: unknown arrow {aid!r}", witness=aid))
                    break
            else:
                if not bq.path_is_composable(p):
                    report.errors.append(CompositionError(f"{label}: non-composable path {p}", witness=list(p)))
                    continue
                degrees.add(len(p))
                if bq.path_source(p) != rel.source or bq.path_target(p) != rel.target:
                    report.errors.append(
                        NormalizationError(f"{label}: path {p} does not run {rel.source} -> {rel.target}", witness=list(p))
                    )
        if len(degrees) > 1:
            report.errors.append(HomogeneityError(f"{label}: mixed path lengths {sorted(degrees)}", witness=sorted(degrees)))
        elif degrees and min(degrees) < 2:
            report.errors.append(NormalizationError(f"{label}: relations must have degree >= 2", witness=idx))
        if len({(bq.path_source(p), bq.path_target(p)) for _, p in rel.terms if bq.path_is_composable(p)}) > 1:
            report.errors.append(NormalizationError(f"{label}: paths start or end at different vertices", witness=idx))
    if report.errors:
        return report

    report.canonical = replace(bq, relations=canonical_relations(bq, bq.relations))
    return report


def canonical_relations(bq: BoundQuiver, relations: Iterable[LinComb]) -> tuple[LinComb, ...]:
    """RREF-canonical form of a relation set, blockwise."""
    grouped: dict[tuple[str, str, int], list[LinComb]] = {}
    for rel in relations:
        grouped.setdefault((rel.source, rel.target, rel.degree), []).append(rel)
    out: list[LinComb] = []
    for (src, tgt, deg) in sorted(grouped):
        paths = bq.block_paths(src, tgt, deg)
        index = {p: k for k, p in enumerate(paths)}
        rows = []
        for rel in grouped[(src, tgt, deg)]:
            row = [ZERO] * len(paths)
            for c, p in rel.terms:
                row[index[p]] += c
            rows.append(row)
        for row in span_rref(rows, len(paths)):
            out.append(make_lincomb(src, tgt, [(c, paths[k]) for k, c in enumerate(row) if c != 0]))
    return tuple(out)


def canonical_quiver(
    vertices: Iterable[str],
    arrows: Iterable[Arrow],
    relations: Iterable[LinComb] = (),
    **meta,
) -> BoundQuiver:
    """Build and validate a quiver, returning the canonical form."""
    bq = BoundQuiver(tuple(sorted(vertices)), tuple(sorted(arrows)), tuple(relations), **meta)
    report = validate(bq)
    report.raise_if_invalid()
    return report.canonical


def relation_block_spans(bq: BoundQuiver) -> dict[tuple[str, str, int], list[list[Fraction]]]:
    """Relation coordinate spans per block, in RREF, over sorted block paths."""
    grouped: dict[tuple[str, str, int], list[LinComb]] = {}
    for rel in bq.relations:
        grouped.setdefault((rel.source, rel.target, rel.degree), []).append(rel)
    spans = {}
    for key, rels in grouped.items():
        src, tgt, deg = key
        paths = bq.block_paths(src, tgt, deg)
        index = {p: k for k, p in enumerate(paths)}
        rows = []
        for rel in rels:
            row = [ZERO] * len(paths)
            for c, p in rel.terms:
                row[index[p]] += c
            rows.append(row)
        spans[key] = span_rref(rows, len(paths))
    return spans


def require_acyclic(bq: BoundQuiver):
    if not bq.is_acyclic():
        raise CyclicQuiverError(f"quiver {bq.name or '?'} contains an oriented cycle")
