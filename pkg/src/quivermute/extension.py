"""Returning-arrow quiver, trivial extension and the windowed Z|_{n-1}Q.

The trivial extension multiplication is the ground truth: the relations of
the returning-arrow quiver are computed as kernels of the evaluation map
kQ~ -> Lambda x DLambda, and the Z|_{n-1}Q relation families are
instantiated from the degree-2 kernel, level by level, rather than
transcribed.  When the kernel is quadratic the instances split into the
three expected families (base relations, double returning arrows, mixed
terms) by the returning-arrow weight.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .basis import GradedBasis, grade_to_top, is_properly_graded, max_bound_paths
from .dual import quadratic_dual
from .errors import (
    NotProperlyGradedError,
    NotQuadraticTildeError,
    NotTranslationQuiverError,
    WindowTooSmallError,
)
from .linalg import ZERO, kernel_basis, span_rref
from .quiver import Arrow, BoundQuiver, LinComb, Path, canonical_quiver, make_lincomb
from .translation import TranslationData, detect_translation

ONE = Fraction(1)

PKind = tuple  # ("p", source, target, degree, index)
DKind = tuple  # ("d", source, target, degree, index) -- dual of that class


def returning_arrow_quiver(base: BoundQuiver, gb: Optional[GradedBasis] = None) -> BoundQuiver:
    """Q~: the base quiver plus one arrow t(p) -> s(p) per maximal bound path."""
    te = trivial_extension(base, gb)
    return te.quiver


@dataclass
class TrivialExtension:
    base: BoundQuiver
    gb: GradedBasis
    n: int
    quiver: BoundQuiver  # returning-arrow skeleton, no relations
    returning: list  # (arrow_id, top LinComb)

    def __post_init__(self):
        self._arrow_key = {}
        for a in self.base.arrows:
            plist = self.gb.block_paths(a.source, a.target, 1)
            free = self.gb.free[(a.source, a.target, 1)]
            k = free.index(plist.index((a.id,)))
            self._arrow_key[a.id] = ("p", a.source, a.target, 1, k)
        for aid, top in self.returning:
            key = self._class_key(top)
            self._arrow_key[aid] = ("d",) + key[1:]
        self._mult_cache: dict = {}

    def _class_key(self, lc: LinComb):
        reduced = self.gb.reduce(lc)
        basis = self.gb.block_basis(lc.source, lc.target, lc.degree)
        for k, b in enumerate(basis):
            if b == reduced:
                return ("p", lc.source, lc.target, lc.degree, k)
        raise AssertionError("class is not a basis representative")

    # -- element bookkeeping -------------------------------------------

    def element_keys(self):
        keys = []
        for (src, tgt, t), free in self.gb.free.items():
            for k in range(len(free)):
                keys.append(("p", src, tgt, t, k))
                keys.append(("d", src, tgt, t, k))
        return keys

    def info(self, key):
        """(source, target, degree, weight) of a basis element of the extension."""
        kind, src, tgt, t, _ = key
        if kind == "p":
            return (src, tgt, t, 0)
        return (tgt, src, self.n + 1 - t, 1)

    def total_dim(self) -> int:
        return 2 * self.gb.total_dim()

    def degree_dim(self, d: int) -> int:
        return sum(1 for key in self.element_keys() if self.info(key)[2] == d)

    # -- multiplication --------------------------------------------------

    def _p_class(self, key) -> LinComb:
        _, src, tgt, t, k = key
        return self.gb.block_basis(src, tgt, t)[k]

    def _dual_coefficient(self, key, lc: LinComb) -> Fraction:
        """Value of the dual functional on a class of the same block."""
        _, src, tgt, t, k = key
        if not lc.terms:
            return ZERO
        reduced = self.gb.reduce(lc)
        basis = self.gb.block_basis(src, tgt, t)
        coeffs = {p: c for c, p in reduced.terms}
        rep = basis[k].terms[0][1]
        return coeffs.get(rep, ZERO)

    def mult_keys(self, kx, ky) -> dict:
        """Product of two basis elements (right factor acts first)."""
        cached = self._mult_cache.get((kx, ky))
        if cached is not None:
            return cached
        out = self._mult_keys(kx, ky)
        self._mult_cache[(kx, ky)] = out
        return out

    def _mult_keys(self, kx, ky) -> dict:
        sx, _tx, _dx, _wx = self.info(kx)
        _sy, ty, _dy, _wy = self.info(ky)
        if sx != ty:
            return {}
        if kx[0] == "p" and ky[0] == "p":
            prod = self.gb.mult(self._p_class(kx), self._p_class(ky))
            if not prod.terms:
                return {}
            out = {}
            coeffs = {p: c for c, p in prod.terms}
            free_basis = self.gb.block_basis(prod.source, prod.target, prod.degree)
            for k, b in enumerate(free_basis):
                rep = b.terms[0][1]
                c = coeffs.get(rep, ZERO)
                if c:
                    out[("p", prod.source, prod.target, prod.degree, k)] = c
            return out
        if kx[0] == "d" and ky[0] == "d":
            return {}
        if kx[0] == "p":
            # a * f with a = kx, f = ky dual of a class u: (a f)(x) = f(x a)
            a = self._p_class(kx)
            _, fu_src, fu_tgt, fu_deg, _ = ky
            t = fu_deg - a.degree
            if t < 0:
                return {}
            out = {}
            for k, x in enumerate(self.gb.block_basis(a.target, fu_tgt, t)):
                c = self._dual_coefficient(ky, self.gb.mult(x, a))
                if c:
                    out[("d", a.target, fu_tgt, t, k)] = c
            return out
        # f * b with f = kx dual of u, b = ky: (f b)(y) = f(b y)
        b = self._p_class(ky)
        _, fu_src, fu_tgt, fu_deg, _ = kx
        t = fu_deg - b.degree
        if t < 0:
            return {}
        out = {}
        for k, y in enumerate(self.gb.block_basis(fu_src, b.source, t)):
            c = self._dual_coefficient(kx, self.gb.mult(b, y))
            if c:
                out[("d", fu_src, b.source, t, k)] = c
        return out

    def mult(self, xs: dict, ys: dict) -> dict:
        acc: dict = {}
        for kx, cx in xs.items():
            for ky, cy in ys.items():
                for key, c in self.mult_keys(kx, ky).items():
                    acc[key] = acc.get(key, ZERO) + cx * cy * c
        return {k: v for k, v in acc.items() if v != 0}

    def eval_arrow(self, arrow_id: str) -> dict:
        return {self._arrow_key[arrow_id]: ONE}

    def eval_path(self, path: Path) -> dict:
        acc = None
        for aid in path:
            step = self.eval_arrow(aid)
            acc = step if acc is None else self.mult(step, acc)
        return acc if acc is not None else {}

    def arrow_weight(self, arrow_id: str) -> int:
        return 1 if self._arrow_key[arrow_id][0] == "d" else 0


def trivial_extension(base: BoundQuiver, gb: Optional[GradedBasis] = None) -> TrivialExtension:
    """Lambda x DLambda with the returning-arrow quiver as its degree-1 skeleton."""
    if gb is None:
        gb = grade_to_top(base)
    ok, n = is_properly_graded(base, gb)
    if not ok:
        raise NotProperlyGradedError(
            "trivial extension grading needs equal maximal bound path lengths", witness=n
        )
    if n == 0:
        raise NotProperlyGradedError("base algebra has no arrows to extend", witness=0)
    tops = max_bound_paths(base, gb)
    returning = []
    arrows = list(base.arrows)
    for top in tops:
        rep = top.terms[0][1]
        aid = "ret_" + "_".join(rep)
        arrows.append(Arrow(aid, top.target, top.source))
        returning.append((aid, top))
    skeleton = canonical_quiver(base.vertices, arrows, [], name=(base.name + "~") if base.name else "")
    return TrivialExtension(base, gb, n, skeleton, returning)


@dataclass
class TildeRelations:
    extension: TrivialExtension
    kernel2: tuple  # canonical degree-2 relations of the extension, as LinCombs over Q~
    generators_by_degree: dict  # degree -> minimal new generators beyond the quadratic part
    quadratic: bool
    families: dict  # "rho" | "rho_M" | "rho_0" -> tuple of LinCombs (when quadratic)


def tilde_relations(te: TrivialExtension) -> TildeRelations:
    """Kernels of kQ~ -> Lambda x DLambda per degree, minimal generators, families."""
    skeleton = te.quiver
    n = te.n

    kernels: dict[int, dict] = {}
    paths_by_degree: dict[int, dict] = {}
    for d in range(2, n + 3):
        blocks = skeleton.paths_of_length(d)
        paths_by_degree[d] = blocks
        kernels[d] = {}
        for (src, tgt), paths in blocks.items():
            images = [te.eval_path(p) for p in paths]
            keys = sorted({k for img in images for k in img}, key=repr)
            pos = {k: c for c, k in enumerate(keys)}
            rows = []
            for img in images:
                row = [ZERO] * len(keys)
                for k, v in img.items():
                    row[pos[k]] = v
                rows.append(row)
            # kernel of the evaluation, over path coordinates
            mat = [[rows[i][c] for i in range(len(paths))] for c in range(len(keys))]
            kern = kernel_basis(mat, len(paths))
            if kern:
                kernels[d][(src, tgt)] = span_rref(kern, len(paths))

    def to_lincombs(d, block, rows):
        paths = paths_by_degree[d][block]
        return [
            make_lincomb(block[0], block[1], [(c, paths[k]) for k, c in enumerate(row) if c != 0])
            for row in rows
        ]

    kernel2 = []
    for block in sorted(kernels[2]):
        kernel2.extend(to_lincombs(2, block, kernels[2][block]))

    # grow the ideal generated degreewise and collect new generators
    generators: dict[int, list] = {}
    ideal: dict[tuple, list] = {}
    for block, rows in kernels[2].items():
        ideal[(block[0], block[1], 2)] = list(rows)
    for d in range(3, n + 3):
        blocks = paths_by_degree[d]
        index = {block: {p: k for k, p in enumerate(paths)} for block, paths in blocks.items()}
        grown: dict[tuple, list] = {}
        for (src, tgt, dd), rows in ideal.items():
            if dd != d - 1:
                continue
            old_paths = paths_by_degree[d - 1][(src, tgt)]
            for a in skeleton.out_arrows(tgt):
                block = (src, a.target)
                if block not in blocks:
                    continue
                for row in rows:
                    new = [ZERO] * len(blocks[block])
                    for k, x in enumerate(row):
                        if x:
                            new[index[block][old_paths[k] + (a.id,)]] += x
                    grown.setdefault(block, []).append(new)
            for a in skeleton.in_arrows(src):
                block = (a.source, tgt)
                if block not in blocks:
                    continue
                for row in rows:
                    new = [ZERO] * len(blocks[block])
                    for k, x in enumerate(row):
                        if x:
                            new[index[block][(a.id,) + old_paths[k]]] += x
                    grown.setdefault(block, []).append(new)
        news = []
        for block, rows in kernels[d].items():
            have = span_rref(grown.get(block, []), len(blocks[block]))
            whole = span_rref(have + rows, len(blocks[block]))
            if len(whole) > len(have):
                pivots_have = {next(i for i, x in enumerate(r) if x) for r in have}
                for r in whole:
                    pc = next(i for i, x in enumerate(r) if x)
                    if pc not in pivots_have:
                        news.extend(to_lincombs(d, block, [r]))
            ideal[(block[0], block[1], d)] = whole
        for block, rows in grown.items():
            key = (block[0], block[1], d)
            if key not in ideal:
                ideal[key] = span_rref(rows, len(blocks[block]))
        if news:
            generators[d] = news

    quadratic = not generators
    families = {"rho": (), "rho_M": (), "rho_0": ()}
    if quadratic:
        fam: dict[str, list] = {"rho": [], "rho_M": [], "rho_0": []}
        for rel in kernel2:
            weights = {sum(te.arrow_weight(a) for a in p) for p in rel.paths()}
            if len(weights) != 1:
                raise AssertionError("degree-2 kernel element mixes returning-arrow weights")
            w = weights.pop()
            fam[("rho", "rho_0", "rho_M")[w]].append(rel)
        families = {k: tuple(v) for k, v in fam.items()}
    return TildeRelations(te, tuple(kernel2), generators, quadratic, families)


# -- the windowed ambient ----------------------------------------------------


def level_label(orbit: str, level: int) -> str:
    return f"{orbit}@{level}"


def split_label(label: str) -> tuple[str, int]:
    orbit, _, level = label.rpartition("@")
    return orbit, int(level)


@dataclass
class WindowedZQ:
    base: BoundQuiver
    window: tuple[int, int]
    quiver: BoundQuiver
    levels: dict
    orbits: dict
    td: TranslationData
    te: TrivialExtension
    relations: TildeRelations
    _gb: Optional[GradedBasis] = field(default=None, repr=False)
    _dual: Optional[BoundQuiver] = field(default=None, repr=False)
    _dual_gb: Optional[GradedBasis] = field(default=None, repr=False)

    @property
    def n(self) -> int:
        return self.te.n

    def gb(self) -> GradedBasis:
        if self._gb is None:
            self._gb = grade_to_top(self.quiver)
        return self._gb

    def vertex(self, orbit: str, level: int) -> str:
        return level_label(orbit, level)

    def orbit_level(self, v: str) -> tuple[str, int]:
        return self.orbits[v], self.levels[v]

    def ensure_window(self, lo: int, hi: int) -> "WindowedZQ":
        a, b = self.window
        if a <= lo and hi <= b:
            return self
        return build_zq(self.base, (min(a, lo), max(b, hi)), relations=self.relations)

    def dual(self) -> BoundQuiver:
        if self._dual is None:
            self._dual = quadratic_dual(self.quiver)
        return self._dual

    def dual_gb(self) -> GradedBasis:
        if self._dual_gb is None:
            self._dual_gb = grade_to_top(self.dual())
        return self._dual_gb

    def same_ambient(self, other) -> bool:
        base = getattr(other, "base", None)
        if base is None:
            return False
        return (
            self.base.vertices == base.vertices
            and self.base.arrows == base.arrows
            and self.base.relations == base.relations
        )


def build_zq(
    base: BoundQuiver,
    window: tuple[int, int],
    gb: Optional[GradedBasis] = None,
    relations: Optional[TildeRelations] = None,
) -> WindowedZQ:
    """Instantiate Z|_{n-1}Q on a closed level interval.

    Vertices are (orbit, level); the base arrows are copied level by level
    and each maximal bound path contributes a level-raising returning
    arrow.  Relations are the degree-2 kernel of the trivial extension,
    one copy per level that fits inside the window.  Refuses when that
    kernel does not generate the full relation ideal.
    """
    lo, hi = window
    if hi - lo < 1:
        raise WindowTooSmallError(f"window {window} has no room for a returning arrow")
    if relations is None:
        te = trivial_extension(base, gb)
        relations = tilde_relations(te)
    else:
        te = relations.extension
    if not relations.quadratic:
        raise NotQuadraticTildeError(
            "the trivial extension relations are not quadratic; Z|_{n-1}Q needs a quadratic base",
            witness={d: [str(r) for r in rels] for d, rels in relations.generators_by_degree.items()},
        )

    weight = {a.id: te.arrow_weight(a.id) for a in te.quiver.arrows}
    vertices = []
    levels = {}
    orbits = {}
    for v in base.vertices:
        for l in range(lo, hi + 1):
            label = level_label(v, l)
            vertices.append(label)
            levels[label] = l
            orbits[label] = v
    arrows = []
    for a in te.quiver.arrows:
        w = weight[a.id]
        for l in range(lo, hi + 1 - w):
            arrows.append(Arrow(f"{a.id}@{l}", level_label(a.source, l), level_label(a.target, l + w)))

    rels = []
    for rel in relations.kernel2:
        w_total = sum(weight[a] for a in rel.paths()[0])
        for l in range(lo, hi + 1 - w_total):
            terms = []
            for c, p in rel.terms:
                x, y = p
                terms.append((c, (f"{x}@{l}", f"{y}@{l + weight[x]}")))
            rels.append(
                make_lincomb(level_label(rel.source, l), level_label(rel.target, l + w_total), terms)
            )

    name = f"Z{te.n - 1}|{base.name}" if base.name else f"Z{te.n - 1}|Q"
    quiver = canonical_quiver(vertices, arrows, rels, name=name, declared_n=te.n, window=(lo, hi))
    wgb = grade_to_top(quiver)
    detected = detect_translation(quiver, wgb, levels)
    if detected.tau and detected.n != te.n:
        raise NotTranslationQuiverError(
            f"window detects n = {detected.n} but the base is {te.n}-properly-graded",
            witness=detected.n,
        )
    for v, w in detected.tau.items():
        if w != level_label(orbits[v], levels[v] - 1):
            raise NotTranslationQuiverError(
                "detected translation disagrees with the level shift",
                witness={"vertex": v, "tau": w},
            )
    # store the full structural translation; the boundary levels stay clipped
    full_tau = {
        level_label(v, l): level_label(v, l - 1)
        for v in base.vertices
        for l in range(lo + 1, hi + 1)
    }
    td = TranslationData(
        te.n,
        full_tau,
        frozenset(level_label(v, lo) for v in base.vertices),
        frozenset(level_label(v, hi) for v in base.vertices),
        frozenset(x for x in quiver.vertices if levels[x] in (lo, hi)),
    )
    zq = WindowedZQ(base, (lo, hi), quiver, levels, orbits, td, te, relations)
    zq._gb = wgb
    return zq


def embed_base_slice(zq: WindowedZQ, level: int):
    """The level copy of the base quiver as a complete tau-slice embedding."""
    from .mutation import SliceEmbedding, is_complete_slice

    lo, hi = zq.window
    if not (lo < level < hi):
        raise WindowTooSmallError(
            f"level {level} needs one spare level on each side of window {zq.window}",
            witness=level,
        )
    subset = frozenset(zq.vertex(v, level) for v in zq.base.vertices)
    emb = SliceEmbedding(zq, subset)
    ok, why = is_complete_slice(emb)
    if not ok:
        raise AssertionError(f"base slice at level {level} is not complete: {why}")
    return emb
