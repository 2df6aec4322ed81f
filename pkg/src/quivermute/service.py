"""Session state and the HTTP service behind the explorer UI.

The session is replayable by construction: the current slice is always
derived by replaying the mutation history from the initial slice, so
there is no hidden mutable cache to drift.  Mutations are serialized by a
lock; concurrent mutations carrying a stale version get 409.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass, field
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from typing import Optional

from .dual import quadratic_dual
from .errors import QuiverError
from .files import dumps, quiver_to_dict
from .mutation import (
    MINUS,
    PLUS,
    SliceEmbedding,
    enumerate_slices,
    movable_vertices,
    mutate,
    normalize_subset,
    truncation,
)


def slice_state(emb: SliceEmbedding) -> dict:
    """The canonical state document for a slice: quiver, dual, movables."""
    amb = emb.ambient
    trunc = truncation(amb, emb.subset)
    dual = quadratic_dual(trunc)
    forward, backward = movable_vertices(emb)
    state = {
        "subset": sorted(emb.subset),
        "slice": quiver_to_dict(trunc),
        "dual": quiver_to_dict(dual),
        "movable": {
            "forward": [
                {"vertex": m.vertex, "sink": m.is_sink, "source": m.is_source} for m in forward
            ],
            "backward": [
                {"vertex": m.vertex, "sink": m.is_sink, "source": m.is_source} for m in backward
            ],
        },
    }
    if amb.levels is not None:
        state["levels"] = {v: amb.levels[v] for v in sorted(emb.subset)}
    return state


@dataclass
class SessionState:
    ambient: object
    initial: frozenset
    history: list = field(default_factory=list)

    @property
    def version(self) -> int:
        return len(self.history)

    def replay(self, upto: Optional[int] = None) -> SliceEmbedding:
        emb = SliceEmbedding(self.ambient, self.initial)
        steps = self.history if upto is None else self.history[:upto]
        for vertex, direction in steps:
            emb = mutate(emb, vertex, direction)
            self.ambient = emb.ambient  # keep any window growth
        return emb

    def current(self) -> SliceEmbedding:
        return self.replay()

    def apply(self, vertex: str, direction: str) -> SliceEmbedding:
        emb = mutate(self.current(), vertex, direction)
        self.ambient = emb.ambient
        self.history.append((vertex, direction))
        return emb

    def undo(self) -> SliceEmbedding:
        if not self.history:
            raise QuiverError("history is empty")
        self.history.pop()
        return self.current()


class SessionService:
    def __init__(self, ambient, start_subset: frozenset):
        self.session = SessionState(ambient, frozenset(start_subset))
        self.lock = threading.Lock()
        self._enumeration = None

    def state_document(self) -> dict:
        emb = self.session.current()
        return {
            "state": slice_state(emb),
            "version": self.session.version,
            "history": [[v, d] for v, d in self.session.history],
        }

    def enumeration_document(self) -> dict:
        if self._enumeration is None:
            start = SliceEmbedding(self.session.ambient, self.session.initial)
            self._enumeration = enumerate_slices(start)
        enum = self._enumeration
        current = normalize_subset(self.session.current())
        doc = enum.as_dict()
        doc["current_class"] = enum.subsets.get(current)
        return doc

    def layout_document(self) -> dict:
        emb = self.session.current()
        amb = emb.ambient
        rows = {o: i for i, o in enumerate(sorted(set(amb.orbits.values())))}
        positions = {}
        for v in sorted(emb.subset):
            positions[v] = {
                "x": amb.levels[v] if amb.levels is not None else 0,
                "y": rows[amb.orbits[v]],
            }
        return {"positions": positions}


class _Handler(BaseHTTPRequestHandler):
    service: SessionService  # set by serve_session

    def log_message(self, fmt, *args):  # quiet by default
        pass

    def _send(self, status: int, payload: dict):
        body = dumps(payload).encode()
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def _read_json(self) -> dict:
        length = int(self.headers.get("Content-Length", "0") or "0")
        raw = self.rfile.read(length) if length else b"{}"
        try:
            data = json.loads(raw.decode() or "{}")
        except json.JSONDecodeError as err:
            raise QuiverError(f"bad request body: {err.msg}")
        if not isinstance(data, dict):
            raise QuiverError("request body must be a JSON object")
        return data

    def do_GET(self):
        try:
            with self.service.lock:
                if self.path == "/api/slice":
                    self._send(200, self.service.state_document())
                elif self.path == "/api/slice/state":
                    # bare state, byte-identical to the CLI's mutate output
                    self._send(200, self.service.state_document()["state"])
                elif self.path == "/api/enumeration":
                    self._send(200, self.service.enumeration_document())
                elif self.path == "/api/layout":
                    self._send(200, self.service.layout_document())
                else:
                    self._send(404, {"code": "NOT_FOUND", "message": self.path})
        except QuiverError as err:
            self._send(400, err.as_diagnostic())

    def do_POST(self):
        try:
            body = self._read_json()
            with self.service.lock:
                if self.path == "/api/mutate":
                    want = body.get("version")
                    if want is not None and want != self.service.session.version:
                        self._send(
                            409,
                            {
                                "code": "CONFLICT",
                                "message": "session advanced past the requested version",
                                "witness": self.service.session.version,
                            },
                        )
                        return
                    vertex = body.get("vertex")
                    direction = body.get("direction")
                    if direction not in (MINUS, PLUS) or not isinstance(vertex, str):
                        raise QuiverError("mutate needs a vertex and a direction of minus or plus")
                    self.service.session.apply(vertex, direction)
                    self._send(200, self.service.state_document())
                elif self.path == "/api/undo":
                    self.service.session.undo()
                    self._send(200, self.service.state_document())
                else:
                    self._send(404, {"code": "NOT_FOUND", "message": self.path})
        except QuiverError as err:
            self._send(400, err.as_diagnostic())



def serve_session(port: int, ambient, start_subset: frozenset) -> ThreadingHTTPServer:
    """Bind the session service; the caller decides when to serve_forever."""
    service = SessionService(ambient, start_subset)
    handler = type("BoundHandler", (_Handler,), {"service": service})
    server = ThreadingHTTPServer(("127.0.0.1", port), handler)
    server.service = service
    return server
