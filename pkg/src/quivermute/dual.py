"""The dual pairing on equal-length paths and the quadratic dual quiver.

Basis paths are self-dual under the pairing, so on coordinates the pairing
is the plain dot product in the canonical path order of each block, and
the dual relation set is the orthogonal complement of the relation span
inside each length-2 block.
"""

from __future__ import annotations

from dataclasses import replace
from fractions import Fraction

from .errors import BlockMismatchError, NotQuadraticError
from .linalg import ZERO, orthogonal_complement
from .quiver import BoundQuiver, LinComb, make_lincomb


def pairing(p: LinComb, q: LinComb) -> Fraction:
    """Dual-basis pairing of two homogeneous combinations of parallel paths."""
    if not p.terms or not q.terms:
        if p.terms or q.terms:
            raise BlockMismatchError("cannot pair against an empty combination")
        return ZERO
    if (p.source, p.target, p.degree) != (q.source, q.target, q.degree):
        raise BlockMismatchError(
            f"pairing blocks differ: ({p.source}->{p.target}, deg {p.degree}) vs "
            f"({q.source}->{q.target}, deg {q.degree})"
        )
    coeffs = {path: c for c, path in q.terms}
    acc = ZERO
    for c, path in p.terms:
        other = coeffs.get(path)
        if other is not None:
            acc += c * other
    return acc


def quadratic_dual(bq: BoundQuiver) -> BoundQuiver:
    """Same vertices and arrows, relations replaced by the blockwise complement."""
    for rel in bq.relations:
        if rel.degree != 2:
            raise NotQuadraticError(
                f"relation of degree {rel.degree} in {bq.name or 'quiver'}; dual needs a quadratic algebra",
                witness=str(rel),
            )
    by_block: dict[tuple[str, str], list[LinComb]] = {}
    for rel in bq.relations:
        by_block.setdefault((rel.source, rel.target), []).append(rel)

    dual_relations: list[LinComb] = []
    for (src, tgt), paths in sorted(_two_path_blocks(bq).items()):
        index = {p: k for k, p in enumerate(paths)}
        rows = []
        for rel in by_block.get((src, tgt), []):
            row = [ZERO] * len(paths)
            for c, p in rel.terms:
                row[index[p]] += c
            rows.append(row)
        for row in orthogonal_complement(rows, len(paths)):
            dual_relations.append(make_lincomb(src, tgt, [(c, paths[k]) for k, c in enumerate(row) if c != 0]))

    name = bq.name[:-2] if bq.name.endswith("^!") else (bq.name + "^!" if bq.name else "")
    return replace(
        bq,
        relations=tuple(dual_relations),
        name=name,
        declared_n=None,
        translation=bq.translation,
    )


def _two_path_blocks(bq: BoundQuiver) -> dict[tuple[str, str], list]:
    return bq.paths_of_length(2)
