"""Degreewise bases of the bound quiver algebra kQ/(rho).

The ideal generated by the relations is expanded degree by degree
(new span = arrows * old span + old span * arrows + relations of that
degree) and each (source, target, degree) block is reduced to a canonical
set of representative paths: the non-pivot columns of the RREF of the
ideal span.  Every class is re-expressed over those representatives, which
gives exact structure constants for multiplication.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import DegreeOverflowError, NotProperlyGradedError
from .linalg import ZERO, span_rref
from .quiver import BoundQuiver, LinComb, Path, degree_cap, make_lincomb, require_acyclic

Block = tuple[str, str]


@dataclass
class GradedBasis:
    quiver: BoundQuiver
    max_degree: int
    paths: list[dict[Block, list[Path]]]
    ideal: dict[tuple[str, str, int], list[list[Fraction]]]
    free: dict[tuple[str, str, int], list[int]]

    def __post_init__(self):
        self._path_index = [
            {block: {p: k for k, p in enumerate(plist)} for block, plist in level.items()}
            for level in self.paths
        ]
        # pivot -> expression over free columns, per block
        self._pivot_expr: dict[tuple[str, str, int], dict[int, list[Fraction]]] = {}
        for key, rows in self.ideal.items():
            free = self.free[key]
            pos = {c: k for k, c in enumerate(free)}
            table = {}
            for row in rows:
                pc = next(i for i, x in enumerate(row) if x != 0)
                expr = [ZERO] * len(free)
                for c, x in enumerate(row):
                    if c != pc and x != 0:
                        expr[pos[c]] = -x
                table[pc] = expr
            self._pivot_expr[key] = table

    # -- dimensions ----------------------------------------------------

    def dim(self, source: str, target: str, t: int) -> int:
        if t > self.max_degree:
            raise DegreeOverflowError(f"degree {t} beyond computed maximum {self.max_degree}")
        return len(self.free.get((source, target, t), []))

    def dims_table(self) -> dict[tuple[str, str, int], int]:
        return {key: len(f) for key, f in self.free.items() if f}

    def total_dim(self) -> int:
        return sum(len(f) for f in self.free.values())

    def degree_dim(self, t: int) -> int:
        return sum(len(f) for (s, g, d), f in self.free.items() if d == t)

    def loewy_length(self) -> Optional[int]:
        """Number of nonzero layers, i.e. the first degree with Lambda_t = 0."""
        for t in range(self.max_degree + 1):
            if self.degree_dim(t) == 0:
                return t
        return None

    # -- bases and reduction -------------------------------------------

    def block_paths(self, source: str, target: str, t: int) -> list[Path]:
        return self.paths[t].get((source, target), [])

    def block_basis(self, source: str, target: str, t: int) -> list[LinComb]:
        plist = self.block_paths(source, target, t)
        return [make_lincomb(source, target, [(Fraction(1), plist[k])]) for k in self.free.get((source, target, t), [])]

    def reduce_coords(self, source: str, target: str, t: int, coords: list[Fraction]) -> list[Fraction]:
        """Coordinates over all block paths -> coordinates over the free paths."""
        key = (source, target, t)
        free = self.free.get(key, [])
        pos = {c: k for k, c in enumerate(free)}
        out = [ZERO] * len(free)
        table = self._pivot_expr.get(key, {})
        for c, x in enumerate(coords):
            if x == 0:
                continue
            if c in pos:
                out[pos[c]] += x
            else:
                expr = table[c]
                for k, e in enumerate(expr):
                    if e:
                        out[k] += x * e
        return out

    def reduce(self, lc: LinComb) -> LinComb:
        """Canonical representative of the class of a linear combination."""
        if not lc.terms:
            return lc
        t = lc.degree
        key = (lc.source, lc.target)
        plist = self.block_paths(lc.source, lc.target, t)
        index = self._path_index[t].get(key, {})
        coords = [ZERO] * len(plist)
        for c, p in lc.terms:
            coords[index[p]] += c
        out = self.reduce_coords(lc.source, lc.target, t, coords)
        free = self.free.get((lc.source, lc.target, t), [])
        return make_lincomb(lc.source, lc.target, [(x, plist[free[k]]) for k, x in enumerate(out) if x != 0])

    def is_zero(self, lc: LinComb) -> bool:
        return not self.reduce(lc).terms

    def path_class(self, p: Path) -> LinComb:
        src = self.quiver.path_source(p)
        tgt = self.quiver.path_target(p)
        return self.reduce(make_lincomb(src, tgt, [(Fraction(1), p)]))

    def mult(self, a: LinComb, b: LinComb) -> LinComb:
        """Algebra product a*b (b acts first); zero when not composable."""
        if not a.terms or not b.terms:
            return make_lincomb(a.source, a.target, [])
        if b.target != a.source:
            return make_lincomb(b.source, a.target, [])
        terms = []
        for ca, pa in a.terms:
            for cb, pb in b.terms:
                terms.append((ca * cb, pb + pa))
        return self.reduce(make_lincomb(b.source, a.target, terms))


def graded_basis(bq: BoundQuiver, t_max: int, path_cap: int = 200_000) -> GradedBasis:
    """Compute bases of every block of kQ/(rho) up to the given degree."""
    cap = degree_cap()
    if t_max > cap:
        raise DegreeOverflowError(f"t_max {t_max} exceeds degree cap {cap} ({bq.name or 'quiver'})", witness=t_max)

    paths: list[dict[Block, list[Path]]] = []
    level0 = {(v, v): [()] for v in bq.vertices}
    paths.append(level0)
    rel_by_degree: dict[int, list[LinComb]] = {}
    for rel in bq.relations:
        rel_by_degree.setdefault(rel.degree, []).append(rel)

    ideal: dict[tuple[str, str, int], list[list[Fraction]]] = {}
    free: dict[tuple[str, str, int], list[int]] = {}
    for (v, w), plist in level0.items():
        free[(v, w, 0)] = [0]

    prev: dict[Block, list[Path]] = level0
    for t in range(1, t_max + 1):
        level: dict[Block, list[Path]] = {}
        for (src, _tgt), plist in prev.items():
            for p in plist:
                tail = bq.path_target(p) if p else src
                for a in bq.out_arrows(tail):
                    level.setdefault((src, a.target), []).append(p + (a.id,))
        total = sum(len(v) for v in level.values())
        if total > path_cap:
            raise DegreeOverflowError(
                f"{total} paths in degree {t} exceed the cap {path_cap}; ideal may not be admissible",
                witness={"degree": t, "paths": total},
            )
        for block in level.values():
            block.sort()
        index = {block: {p: k for k, p in enumerate(plist)} for block, plist in level.items()}

        spans: dict[Block, list[list[Fraction]]] = {}

        def add_row(block: Block, row):
            spans.setdefault(block, []).append(row)

        # arrows * previous ideal and previous ideal * arrows
        for (src, tgt, d), rows in list(ideal.items()):
            if d != t - 1:
                continue
            old_paths = paths[t - 1][(src, tgt)]
            for a in bq.out_arrows(tgt):
                block = (src, a.target)
                idx = index.get(block, {})
                for row in rows:
                    new = [ZERO] * len(level.get(block, []))
                    for k, x in enumerate(row):
                        if x:
                            new[idx[old_paths[k] + (a.id,)]] += x
                    add_row(block, new)
            for a in bq.in_arrows(src):
                block = (a.source, tgt)
                idx = index.get(block, {})
                for row in rows:
                    new = [ZERO] * len(level.get(block, []))
                    for k, x in enumerate(row):
                        if x:
                            new[idx[(a.id,) + old_paths[k]]] += x
                    add_row(block, new)
        for rel in rel_by_degree.get(t, []):
            block = (rel.source, rel.target)
            idx = index.get(block, {})
            row = [ZERO] * len(level.get(block, []))
            for c, p in rel.terms:
                row[idx[p]] += c
            add_row(block, row)

        for block, plist in level.items():
            rows = span_rref(spans.get(block, []), len(plist))
            key = (block[0], block[1], t)
            if rows:
                ideal[key] = rows
            pivots = {next(i for i, x in enumerate(row) if x != 0) for row in rows}
            free[key] = [k for k in range(len(plist)) if k not in pivots]
        paths.append(level)
        prev = level

    return GradedBasis(bq, t_max, paths, ideal, free)


def grade_to_top(bq: BoundQuiver, path_cap: int = 200_000) -> GradedBasis:
    """Basis computed until the algebra dies; errors past the degree cap."""
    cap = degree_cap()
    t_max = min(4, cap)
    while True:
        gb = graded_basis(bq, t_max, path_cap=path_cap)
        for t in range(t_max + 1):
            if gb.degree_dim(t) == 0:
                return gb
        if t_max == cap:
            raise DegreeOverflowError(
                f"algebra {bq.name or '?'} still alive at the degree cap {cap}", witness=cap
            )
        t_max = min(2 * t_max, cap)


def maximal_bound_paths(bq: BoundQuiver, gb: Optional[GradedBasis] = None) -> list[tuple[Path, int]]:
    """All maximal bound paths (as plain paths) with their lengths.

    A path of length >= 1 is maximal when its class is nonzero and every
    one-arrow extension, on either side, has zero class.
    """
    if gb is None:
        gb = grade_to_top(bq)
    out = []
    top = gb.loewy_length()
    top = gb.max_degree if top is None else top
    for t in range(1, top):
        for (src, tgt), plist in gb.paths[t].items():
            for p in plist:
                if gb.is_zero(make_lincomb(src, tgt, [(Fraction(1), p)])):
                    continue
                extendable = False
                for a in bq.out_arrows(tgt):
                    if t + 1 <= gb.max_degree and not gb.is_zero(
                        make_lincomb(src, a.target, [(Fraction(1), p + (a.id,))])
                    ):
                        extendable = True
                        break
                if not extendable:
                    for a in bq.in_arrows(src):
                        if t + 1 <= gb.max_degree and not gb.is_zero(
                            make_lincomb(a.source, tgt, [(Fraction(1), (a.id,) + p)])
                        ):
                            extendable = True
                            break
                if not extendable:
                    out.append((p, t))
    return out


def is_properly_graded(bq: BoundQuiver, gb: Optional[GradedBasis] = None):
    """(True, n) when every maximal bound path has length exactly n.

    Otherwise (False, witness) where the witness holds two maximal bound
    paths of different lengths.
    """
    require_acyclic(bq)
    if gb is None:
        gb = grade_to_top(bq)
    maxima = maximal_bound_paths(bq, gb)
    lengths = sorted({t for _, t in maxima})
    if not lengths:
        return True, 0
    if len(lengths) == 1:
        return True, lengths[0]
    shortest = next(p for p, t in maxima if t == lengths[0])
    longest = next(p for p, t in maxima if t == lengths[-1])
    return False, {"lengths": lengths, "paths": [shortest, longest]}


def max_bound_paths(bq: BoundQuiver, gb: Optional[GradedBasis] = None) -> list[LinComb]:
    """Canonical basis of the top-degree component, the set of maximal bound paths.

    Requires the quiver to be properly graded; each element is a class
    representative tagged with source and target through its LinComb.
    """
    if gb is None:
        gb = grade_to_top(bq)
    ok, n = is_properly_graded(bq, gb)
    if not ok:
        raise NotProperlyGradedError("maximal bound paths have different lengths", witness=n)
    if n == 0:
        return []
    basis = []
    for (src, tgt) in sorted(gb.paths[n]):
        basis.extend(gb.block_basis(src, tgt, n))
    return basis
