"""Deterministic DOT export: levels as ranks, relations as comments."""

from __future__ import annotations

from typing import Optional

from .quiver import BoundQuiver


def _quote(s: str) -> str:
    return '"' + s.replace('"', '\\"') + '"'


def export_dot(obj, name: Optional[str] = None, include_relations: bool = True) -> str:
    """DOT text for a bound quiver or a slice embedding.

    Output is byte-stable across runs: vertices, arrows and rank groups are
    emitted in sorted order.  When level information is available the
    levels become same-rank groups, so rendered figures line up with the
    level structure of the ambient quiver.
    """
    levels = None
    if hasattr(obj, "subset") and hasattr(obj, "ambient"):
        amb = obj.ambient
        from .mutation import truncation

        bq = truncation(amb, obj.subset)
        if amb.levels is not None:
            levels = {v: amb.levels[v] for v in obj.subset}
    elif isinstance(obj, BoundQuiver):
        bq = obj
    else:
        raise TypeError(f"cannot export {type(obj).__name__} as DOT")

    title = name or bq.name or "quiver"
    lines = [f"digraph {_quote(title)} {{", "  rankdir=LR;", "  node [shape=circle];"]
    for v in sorted(bq.vertices):
        lines.append(f"  {_quote(v)};")
    if levels is not None:
        by_level: dict = {}
        for v, l in levels.items():
            by_level.setdefault(l, []).append(v)
        for l in sorted(by_level):
            group = "; ".join(_quote(v) for v in sorted(by_level[l]))
            lines.append(f"  {{ rank=same; {group}; }}")
    for a in sorted(bq.arrows):
        lines.append(f"  {_quote(a.source)} -> {_quote(a.target)} [label={_quote(a.id)}];")
    if include_relations:
        for rel in bq.relations:
            lines.append(f"  // relation: {rel}")
    lines.append("}")
    return "\n".join(lines) + "\n"
