"""Structured errors shared across the engine.

Every domain error carries a stable machine-readable ``code`` and an
optional ``witness`` payload so the CLI and the HTTP service can emit
diagnostics without string scraping.
"""

from __future__ import annotations

from typing import Any


class QuiverError(Exception):
    code = "QUIVER_ERROR"

    def __init__(self, message: str, witness: Any = None):
        super().__init__(message)
        self.message = message
        self.witness = witness

    def as_diagnostic(self) -> dict:
        diag = {"code": self.code, "message": self.message}
        if self.witness is not None:
            diag["witness"] = _jsonable(self.witness)
        return diag


def _jsonable(value):
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    if isinstance(value, (list, tuple, set, frozenset)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    return str(value)


class NormalizationError(QuiverError):
    code = "NORMALIZATION"


class HomogeneityError(QuiverError):
    code = "HOMOGENEITY"


class CompositionError(QuiverError):
    code = "COMPOSITION"


class DuplicateIdError(QuiverError):
    code = "DUPLICATE_ID"


class UnknownIdError(QuiverError):
    code = "UNKNOWN_ID"


class CyclicQuiverError(QuiverError):
    code = "CYCLIC_QUIVER"


class DegreeOverflowError(QuiverError):
    code = "DEGREE_OVERFLOW"


class NotProperlyGradedError(QuiverError):
    code = "NOT_PROPERLY_GRADED"


class BlockMismatchError(QuiverError):
    code = "BLOCK_MISMATCH"


class NotQuadraticError(QuiverError):
    code = "NOT_QUADRATIC"


class NotTranslationQuiverError(QuiverError):
    code = "NOT_TRANSLATION_QUIVER"


class UndefinedTranslateError(QuiverError):
    code = "UNDEFINED_TRANSLATE"


class WindowClippedError(QuiverError):
    code = "WINDOW_CLIPPED"


class WindowTooSmallError(QuiverError):
    code = "WINDOW_TOO_SMALL"


class ConvexityRequiredError(QuiverError):
    code = "CONVEXITY_REQUIRED"


class NotMovableError(QuiverError):
    code = "NOT_MOVABLE"


class NotReachableError(QuiverError):
    code = "NOT_REACHABLE"


class NotQuadraticTildeError(QuiverError):
    code = "NOT_QUADRATIC_TILDE"


class NotSimpleProjectiveError(QuiverError):
    code = "NOT_SIMPLE_PROJECTIVE"


class InfiniteDimensionalError(QuiverError):
    code = "INFINITE_DIMENSIONAL"


class LengthExceededError(QuiverError):
    code = "LENGTH_EXCEEDED"


class ParseError(QuiverError):
    code = "PARSE_ERROR"
