"""The QuiverFile JSON schema: canonical, round-trip stable serialization.

Coefficients are strings like "2", "-1" or "1/3"; paths are arrow-id lists
in traversal order.  Unknown fields are rejected.  The serializer emits a
canonical form (vertices sorted, relations blockwise RREF, keys sorted) so
equal quivers produce byte-identical files.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Optional

from .errors import ParseError
from .quiver import Arrow, BoundQuiver, canonical_quiver, make_lincomb, validate
from .translation import TranslationData

_TOP_KEYS = {"name", "vertices", "arrows", "relations", "translation", "window"}


def parse_coefficient(raw, where: str) -> Fraction:
    if not isinstance(raw, str):
        raise ParseError(f"{where}: coefficient must be a string like '1' or '2/3'", witness=raw)
    try:
        value = Fraction(raw)
    except (ValueError, ZeroDivisionError) as err:
        raise ParseError(f"{where}: bad rational {raw!r} ({err})", witness=raw)
    return value


def quiver_to_dict(bq: BoundQuiver, td: Optional[TranslationData] = None) -> dict:
    out: dict = {
        "name": bq.name,
        "vertices": sorted(bq.vertices),
        "arrows": [
            {"id": a.id, "from": a.source, "to": a.target} for a in sorted(bq.arrows)
        ],
        "relations": [
            [{"coeff": _frac_str(c), "path": list(p)} for c, p in rel.terms]
            for rel in bq.relations
        ],
    }
    if td is None:
        td = bq.translation
    if td is not None:
        out["translation"] = {"n": td.n, "tau": {v: td.tau[v] for v in sorted(td.tau)}}
    if bq.window is not None:
        out["window"] = {"from": bq.window[0], "to": bq.window[1]}
    return out


def _frac_str(c: Fraction) -> str:
    return str(c)


def serialize(bq: BoundQuiver, td: Optional[TranslationData] = None) -> str:
    report = validate(bq)
    report.raise_if_invalid()
    return dumps(quiver_to_dict(report.canonical, td))


def dumps(obj) -> str:
    """The one JSON writer: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def quiver_from_dict(data: dict, where: str = "$") -> BoundQuiver:
    if not isinstance(data, dict):
        raise ParseError(f"{where}: expected an object")
    unknown = set(data) - _TOP_KEYS
    if unknown:
        raise ParseError(f"{where}: unknown fields {sorted(unknown)}", witness=sorted(unknown))
    for key in ("vertices", "arrows", "relations"):
        if key not in data:
            raise ParseError(f"{where}: missing field {key!r}")
    name = data.get("name", "")
    if not isinstance(name, str):
        raise ParseError(f"{where}.name: expected a string")
    vertices = data["vertices"]
    if not isinstance(vertices, list) or not all(isinstance(v, str) for v in vertices):
        raise ParseError(f"{where}.vertices: expected a list of strings")

    arrows = []
    for k, raw in enumerate(data["arrows"]):
        loc = f"{where}.arrows[{k}]"
        if not isinstance(raw, dict) or set(raw) != {"id", "from", "to"}:
            raise ParseError(f"{loc}: expected an object with id/from/to", witness=raw)
        arrows.append(Arrow(raw["id"], raw["from"], raw["to"]))

    arrow_by_id = {a.id: a for a in arrows}
    relations = []
    for k, raw_rel in enumerate(data["relations"]):
        loc = f"{where}.relations[{k}]"
        if not isinstance(raw_rel, list) or not raw_rel:
            raise ParseError(f"{loc}: expected a nonempty list of terms")
        terms = []
        for j, term in enumerate(raw_rel):
            tloc = f"{loc}[{j}]"
            if not isinstance(term, dict) or set(term) != {"coeff", "path"}:
                raise ParseError(f"{tloc}: expected an object with coeff/path", witness=term)
            coeff = parse_coefficient(term["coeff"], tloc + ".coeff")
            path = term["path"]
            if not isinstance(path, list) or not all(isinstance(x, str) for x in path):
                raise ParseError(f"{tloc}.path: expected a list of arrow ids")
            for aid in path:
                if aid not in arrow_by_id:
                    raise ParseError(f"{tloc}.path: unknown arrow {aid!r}", witness=aid)
            terms.append((coeff, tuple(path)))
        first = terms[0][1]
        if not first:
            raise ParseError(f"{loc}: empty path in relation")
        src = arrow_by_id[first[0]].source
        tgt = arrow_by_id[first[-1]].target
        lc = make_lincomb(src, tgt, terms)
        if lc.terms:
            relations.append(lc)

    window = None
    if "window" in data:
        raw = data["window"]
        if not isinstance(raw, dict) or set(raw) != {"from", "to"}:
            raise ParseError(f"{where}.window: expected an object with from/to", witness=raw)
        if not isinstance(raw["from"], int) or not isinstance(raw["to"], int):
            raise ParseError(f"{where}.window: bounds must be integers")
        window = (raw["from"], raw["to"])

    translation = None
    declared_n = None
    if "translation" in data:
        raw = data["translation"]
        if not isinstance(raw, dict) or set(raw) != {"n", "tau"}:
            raise ParseError(f"{where}.translation: expected an object with n/tau", witness=raw)
        if not isinstance(raw["n"], int) or raw["n"] < 1:
            raise ParseError(f"{where}.translation.n: expected a positive integer")
        tau = raw["tau"]
        if not isinstance(tau, dict):
            raise ParseError(f"{where}.translation.tau: expected an object")
        vertex_set = set(vertices)
        for v, w in tau.items():
            if v not in vertex_set or w not in vertex_set:
                raise ParseError(f"{where}.translation.tau: unknown vertex in {v!r} -> {w!r}")
        declared_n = raw["n"]
        translation = TranslationData(
            raw["n"],
            dict(tau),
            frozenset(vertex_set - set(tau)),
            frozenset(vertex_set - set(tau.values())),
        )

    try:
        bq = canonical_quiver(
            vertices,
            arrows,
            relations,
            name=name,
            declared_n=declared_n,
            translation=translation,
            window=window,
        )
    except Exception as err:
        raise ParseError(f"{where}: {err}", witness=str(err))
    return bq


def parse(text: str) -> BoundQuiver:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as err:
        raise ParseError(f"line {err.lineno}, column {err.colno}: {err.msg}", witness=[err.lineno, err.colno])
    return quiver_from_dict(data)


def load(path) -> BoundQuiver:
    with open(path, "r", encoding="utf-8") as fh:
        return parse(fh.read())


def save(path, bq: BoundQuiver, td: Optional[TranslationData] = None):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize(bq, td))
