"""Backend selection for the elimination kernels.

At import time this picks the compiled kernel (catcohom._speedups) when it is
available, unless CATCOHOM_PURE=1 forces the pure-Python routines.  The
compiled kernel works on int64 and raises OverflowError when entries grow past
that range; such calls transparently retry on the pure backend.
"""

from __future__ import annotations

import os

from . import snf as _pure
from .matrix import Mat
from .rings import ZZ

_fast = None
if os.environ.get("CATCOHOM_PURE", "") not in ("1", "true", "yes"):
    try:
        from catcohom import _speedups as _fast  # type: ignore
    except ImportError:
        _fast = None

_I64_MAX = 2**62  # conservative margin below int64


def backend_name() -> str:
    return "compiled" if _fast is not None else "pure"


def _fits_i64(rows) -> bool:
    return all(-_I64_MAX < x < _I64_MAX for row in rows for x in row)


def snf_raw(mat_rows, m, n, need_u=True, need_v=True, need_w=False):
    """(U, S, V, diag) on list-of-lists input; dispatches to the backend."""
    if _fast is not None and _fits_i64(mat_rows):
        try:
            return _fast.snf_i64(mat_rows, m, n, need_u, need_v, need_w)
        except OverflowError:
            pass
    return _pure.snf_with_transforms(mat_rows, m, n, need_u, need_v, need_w)


def snf(A: Mat, need_u=True, need_v=True):
    """Smith normal form (U, S, V) with A = U @ S @ V over the integers."""
    if A.ring != ZZ:
        raise ValueError("snf is defined over the integers")
    U, S, V, _ = snf_raw(A.data, A.rows, A.cols, need_u, need_v)
    u = Mat(ZZ, A.rows, A.rows, U) if U is not None else None
    v = Mat(ZZ, A.cols, A.cols, V) if V is not None else None
    return u, Mat(ZZ, A.rows, A.cols, S), v


def snf_diagonal(A: Mat):
    if A.ring != ZZ:
        raise ValueError("snf is defined over the integers")
    _, _, _, diag = snf_raw(A.data, A.rows, A.cols, False, False)
    return diag


def int_rank(A: Mat) -> int:
    """Rank of an integer matrix (via the Smith diagonal)."""
    return len(snf_diagonal(A))


def int_kernel_basis(A: Mat) -> Mat:
    """Columns form a lattice basis of ker A over the integers (hence a basis
    of the rational kernel): the trailing columns of V^-1."""
    if A.ring != ZZ:
        raise ValueError("int_kernel_basis is defined over the integers")
    if A.rows == 0 or A.cols == 0:
        return Mat.identity(ZZ, A.cols)
    _, S, W, diag = snf_raw(A.data, A.rows, A.cols, need_u=False,
                            need_v=False, need_w=True)
    r = len(diag)
    out = Mat(ZZ, A.cols, A.cols - r)
    for i in range(A.cols):
        row = W[i]
        for k in range(A.cols - r):
            out.data[i][k] = row[r + k]
    return out


def field_rank(A: Mat) -> int:
    ring = A.ring
    if ring.kind == "fp" and _fast is not None and A.rows and A.cols:
        return _fast.rank_mod_p(A.data, A.rows, A.cols, ring.p)
    return _pure.field_rank(A)


def rref(ring, rows):
    """In-place reduced row echelon form; returns pivot columns.  Routes
    prime-field input through the compiled kernel."""
    if not rows or not rows[0]:
        return []
    if ring.kind == "fp" and _fast is not None:
        new_rows, pivots = _fast.rref_mod_p(rows, len(rows), len(rows[0]), ring.p)
        rows[:] = new_rows
        return pivots
    return _pure._rref(ring, rows)
