"""Exact dense linear algebra over the rationals.

Everything downstream (relation canonicalization, graded bases, kernels,
orthogonal complements, resolutions) reduces to these routines.  Matrices
are plain lists of rows of :class:`fractions.Fraction`; all arithmetic is
exact, there is no floating point anywhere in the engine.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Vector = list[Fraction]
Rows = list[Vector]

ZERO = Fraction(0)
ONE = Fraction(1)


def frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def zero_vector(n: int) -> Vector:
    return [ZERO] * n


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    acc = ZERO
    for a, b in zip(u, v):
        if a and b:
            acc += a * b
    return acc


def mat_vec(rows: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> Vector:
    return [dot(row, v) for row in rows]


def mat_mul(a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]]) -> Rows:
    if not a or not b:
        return []
    cols_b = len(b[0])
    return [[dot(row, [b[k][c] for k in range(len(b))]) for c in range(cols_b)] for row in a]


def mat_identity(n: int) -> Rows:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def zero_matrix(rows: int, cols: int) -> Rows:
    return [[ZERO] * cols for _ in range(rows)]


def rref(rows: Iterable[Sequence[Fraction]], ncols: int | None = None):
    """Reduced row echelon form.

    Returns ``(rref_rows, pivot_columns, rank)`` where ``rref_rows`` holds
    only the nonzero rows.  The output is the unique canonical RREF, used
    everywhere a subspace needs a deterministic representative.
    """
    work = [list(map(frac, row)) for row in rows]
    if ncols is None:
        ncols = len(work[0]) if work else 0
    for row in work:
        if len(row) != ncols:
            raise ValueError("ragged matrix")
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, len(work)):
            if work[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        work[r], work[pivot_row] = work[pivot_row], work[r]
        inv = ONE / work[r][c]
        if inv != 1:
            work[r] = [x * inv for x in work[r]]
        for i in range(len(work)):
            if i != r and work[i][c] != 0:
                f = work[i][c]
                work[i] = [a - f * b for a, b in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
        if r == len(work):
            break
    return work[:r], pivots, r


def kernel_basis(rows: Iterable[Sequence[Fraction]], ncols: int) -> Rows:
    """Canonical kernel basis read off the RREF.

    One vector per free column: the free coordinate is 1 and pivot
    coordinates are filled in from the reduced rows.
    """
    red, pivots, _ = rref(rows, ncols)
    pivot_set = set(pivots)
    basis: Rows = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = zero_vector(ncols)
        v[free] = ONE
        for r, pc in enumerate(pivots):
            if red[r][free] != 0:
                v[pc] = -red[r][free]
        basis.append(v)
    return basis


def span_rref(vectors: Iterable[Sequence[Fraction]], ncols: int) -> Rows:
    """Canonical representative of the span: its RREF rows."""
    red, _, _ = rref(vectors, ncols)
    return red


def orthogonal_complement(vectors: Iterable[Sequence[Fraction]], dim: int) -> Rows:
    """Canonical basis of the orthogonal complement under the dot pairing.

    The complement of span(vectors) inside the coordinate space of the
    given dimension, returned in RREF canonical form.
    """
    vecs = [list(map(frac, v)) for v in vectors]
    for v in vecs:
        if len(v) != dim:
            raise ValueError("vector length does not match ambient dimension")
    return span_rref(kernel_basis(vecs, dim), dim)


def rank(rows: Iterable[Sequence[Fraction]], ncols: int | None = None) -> int:
    return rref(rows, ncols)[2]


def in_span(vector: Sequence[Fraction], span_rows: Sequence[Sequence[Fraction]]) -> bool:
    """Membership test against rows already in RREF."""
    v = list(map(frac, vector))
    for row in span_rows:
        pc = next((i for i, x in enumerate(row) if x != 0), None)
        if pc is not None and v[pc] != 0:
            f = v[pc]
            v = [a - f * b for a, b in zip(v, row)]
    return all(x == 0 for x in v)


def spans_equal(a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]], ncols: int) -> bool:
    return span_rref(a, ncols) == span_rref(b, ncols)


def solve(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]):
    """One solution of ``rows * x = rhs`` or None when inconsistent."""
    ncols = len(rows[0]) if rows else 0
    aug = [list(map(frac, row)) + [frac(b)] for row, b in zip(rows, rhs)]
    red, pivots, _ = rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    x = zero_vector(ncols)
    for r, pc in enumerate(pivots):
        x[pc] = red[r][ncols]
    return x
