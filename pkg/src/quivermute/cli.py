"""Command-line driver.

Exit codes: 0 success, 1 domain error (structured diagnostic on stderr),
2 usage error.  All payloads go to stdout as canonical JSON; diagnostics
are JSON objects with code/message/witness.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import files
from .basis import grade_to_top, is_properly_graded
from .dot import export_dot
from .dual import quadratic_dual
from .errors import NotProperlyGradedError, ParseError, QuiverError
from .extension import build_zq, embed_base_slice
from .files import dumps
from .homology import Algebra, minimal_projective_resolution, simple_module, verify_n_apr_conditions
from .mutation import (
    FiniteAmbient,
    SliceEmbedding,
    enumerate_slices,
    is_complete_slice,
    mutate,
    tau_tilt,
)
from .service import serve_session, slice_state
from .translation import ENDING, STARTING, detect_translation, hammock, verify_n_translation


def _emit(payload: dict) -> int:
    sys.stdout.write(dumps(payload))
    return 0


def _leveled_ambient(bq) -> FiniteAmbient:
    """Reconstruct levels and orbits of a windowed ambient from its tau chains."""
    td = bq.translation
    lo, hi = bq.window
    levels = {}
    orbits = {}
    tops = [v for v in bq.vertices if td.tau_inv(v) is None]
    for top in tops:
        chain = [top]
        v = top
        while td.tau_of(v) is not None:
            v = td.tau_of(v)
            chain.append(v)
        if len(chain) != hi - lo + 1:
            raise ParseError(
                f"tau orbit through {top} has {len(chain)} vertices; window {bq.window} needs {hi - lo + 1}",
                witness=chain,
            )
        prefix = {v.rpartition("@")[0] for v in chain}
        orbit = prefix.pop() if len(prefix) == 1 and "" not in prefix else min(chain)
        for k, v in enumerate(chain):
            levels[v] = hi - k
            orbits[v] = orbit
    missing = set(bq.vertices) - set(levels)
    if missing:
        raise ParseError(f"vertices outside every full tau orbit: {sorted(missing)}")
    return FiniteAmbient(bq, td, levels, orbits)


def _load_ambient(path):
    """An ambient for mutation work: a prebuilt window, or Z|_{n-1}Q of a base."""
    bq = files.load(path)
    if bq.window is not None and bq.translation is not None:
        return _leveled_ambient(bq)
    ok, n = is_properly_graded(bq)
    if not ok:
        raise NotProperlyGradedError(
            "ambient input must be a windowed translation quiver or a properly graded base",
            witness=n,
        )
    return build_zq(bq, (-(n + 2), 2 * (n + 1) + 1))


def _load_slice(ambient, spec: str) -> SliceEmbedding:
    if spec.startswith("level:"):
        level = int(spec.split(":", 1)[1])
        if hasattr(ambient, "base"):
            return embed_base_slice(ambient, level)
        subset = frozenset(v for v in ambient.quiver.vertices if ambient.levels[v] == level)
        return SliceEmbedding(ambient, subset)
    with open(spec, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict) or "subset" not in data or not isinstance(data["subset"], list):
        raise ParseError(f"{spec}: slice files carry a 'subset' list")
    return SliceEmbedding(ambient, frozenset(data["subset"]))


def cmd_dualize(args) -> int:
    bq = files.load(args.input)
    out = files.serialize(quadratic_dual(bq))
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(out)
        return 0
    sys.stdout.write(out)
    return 0


def cmd_check_ntq(args) -> int:
    bq = files.load(args.input)
    gb = grade_to_top(bq)
    levels = None
    if bq.window is not None and bq.translation is not None:
        levels = _leveled_ambient(bq).levels
    td = detect_translation(bq, gb, levels)
    report = verify_n_translation(bq, td, gb, levels)
    return _emit(report.as_dict())


def cmd_hammock(args) -> int:
    bq = files.load(args.input)
    gb = grade_to_top(bq)
    levels = None
    if bq.window is not None and bq.translation is not None:
        levels = _leveled_ambient(bq).levels
    td = bq.translation if bq.translation is not None else detect_translation(bq, gb, levels)
    direction = STARTING if args.dir == "up" else ENDING
    ham = hammock(bq, td, args.vertex, direction, gb=gb, levels=levels)
    return _emit(
        {
            "center": ham.center,
            "direction": "up" if direction == STARTING else "down",
            "entries": [[v, t, mu] for v, t, mu in ham.entries],
            "arrows": [[a, t] for a, t in ham.arrows],
        }
    )


def cmd_zq(args) -> int:
    bq = files.load(args.input)
    lo, hi = args.window.split("..", 1)
    zq = build_zq(bq, (int(lo), int(hi)))
    out = files.serialize(zq.quiver, zq.td)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(out)
        return 0
    sys.stdout.write(out)
    return 0


def cmd_mutate(args) -> int:
    ambient = _load_ambient(args.ambient)
    emb = _load_slice(ambient, args.slice)
    result = mutate(emb, args.at, args.dir)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(dumps({"subset": sorted(result.subset)}))
    return _emit(slice_state(result))


def cmd_slices(args) -> int:
    ambient = _load_ambient(args.ambient)
    start = _load_slice(ambient, args.start)
    ok, why = is_complete_slice(start)
    if not ok:
        raise QuiverError(f"start is not a complete tau-slice: {why}")
    enum = enumerate_slices(start)
    if args.emit_dot:
        os.makedirs(args.emit_dot, exist_ok=True)
        for cls in enum.classes:
            path = os.path.join(args.emit_dot, f"class{cls.index}.dot")
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(export_dot(cls.quiver, name=f"class{cls.index}"))
    return _emit(enum.as_dict())


def cmd_tilt(args) -> int:
    ambient = _load_ambient(args.ambient)
    emb = _load_slice(ambient, args.slice)
    report = tau_tilt(emb, args.at, args.dir)
    doc = report.as_dict()
    if report.dual_quiver is not None:
        doc["dual"] = files.quiver_to_dict(report.dual_quiver)
    return _emit(doc)


def cmd_resolve(args) -> int:
    alg = Algebra(files.load(args.input))
    profile = minimal_projective_resolution(alg, simple_module(alg, args.simple), args.max_len)
    return _emit(profile.as_dict())


def cmd_verify_napr(args) -> int:
    alg = Algebra(files.load(args.input))
    report = verify_n_apr_conditions(alg, args.vertex, args.n)
    return _emit(report.as_dict())


def cmd_serve(args) -> int:
    ambient = _load_ambient(args.ambient)
    start = _load_slice(ambient, args.start)
    ok, why = is_complete_slice(start)
    if not ok:
        raise QuiverError(f"start is not a complete tau-slice: {why}")
    server = serve_session(args.port, start.ambient, start.subset)
    sys.stderr.write(f"serving on 127.0.0.1:{server.server_address[1]}\n")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        server.shutdown()
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quivermute", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dualize", help="quadratic dual of a bound quiver file")
    p.add_argument("input")
    p.add_argument("-o", "--output")
    p.set_defaults(fn=cmd_dualize)

    p = sub.add_parser("check-ntq", help="detect and verify the n-translation conditions")
    p.add_argument("input")
    p.set_defaults(fn=cmd_check_ntq)

    p = sub.add_parser("hammock", help="tau-hammock at a vertex")
    p.add_argument("input")
    p.add_argument("--vertex", required=True)
    p.add_argument("--dir", choices=["up", "down"], required=True)
    p.set_defaults(fn=cmd_hammock)

    p = sub.add_parser("zq", help="build a window of Z|_{n-1}Q from a properly graded base")
    p.add_argument("input")
    p.add_argument("--window", required=True, metavar="A..B")
    p.add_argument("-o", "--output")
    p.set_defaults(fn=cmd_zq)

    p = sub.add_parser("mutate", help="tau-mutation of a complete slice")
    p.add_argument("ambient")
    p.add_argument("--slice", required=True, help="slice JSON file or level:K")
    p.add_argument("--at", required=True)
    p.add_argument("--dir", choices=["plus", "minus"], required=True)
    p.add_argument("-o", "--output", help="write the mutated subset to this file")
    p.set_defaults(fn=cmd_mutate)

    p = sub.add_parser("slices", help="enumerate complete tau-slices up to shift and isomorphism")
    p.add_argument("ambient")
    p.add_argument("--start", required=True)
    p.add_argument("--emit-dot", metavar="DIR")
    p.set_defaults(fn=cmd_slices)

    p = sub.add_parser("tilt", help="n-APR tilt report for a mutation")
    p.add_argument("ambient")
    p.add_argument("--slice", required=True)
    p.add_argument("--at", required=True)
    p.add_argument("--dir", choices=["plus", "minus"], required=True)
    p.set_defaults(fn=cmd_tilt)

    p = sub.add_parser("resolve", help="minimal projective resolution of a simple")
    p.add_argument("input")
    p.add_argument("--simple", required=True)
    p.add_argument("--max-len", type=int, default=16)
    p.set_defaults(fn=cmd_resolve)

    p = sub.add_parser("verify-napr", help="check the n-APR tilting conditions at a vertex")
    p.add_argument("input")
    p.add_argument("--vertex", required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(fn=cmd_verify_napr)

    p = sub.add_parser("serve", help="session service for the explorer UI")
    p.add_argument("--port", type=int, default=8787)
    p.add_argument("--ambient", required=True)
    p.add_argument("--start", required=True)
    p.set_defaults(fn=cmd_serve)

    return parser


def run(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return 0 if err.code in (0, None) else 2
    try:
        return args.fn(args)
    except QuiverError as err:
        sys.stderr.write(dumps(err.as_diagnostic()))
        return 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))
