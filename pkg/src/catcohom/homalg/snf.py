"""Pure-Python exact elimination: Smith normal form over the integers and
Gaussian elimination over fields.

This is the reference backend.  `catcohom.homalg.kernel` routes large integer
matrices through the compiled twin in `catcohom._speedups` when available and
falls back here (the compiled twin raises OverflowError beyond 64-bit range;
this module uses unbounded ints and never overflows).
"""

from __future__ import annotations

from .matrix import Mat
from .rings import Ring, ZZ


# ---------------------------------------------------------------------------
# Smith normal form over the integers
# ---------------------------------------------------------------------------

def snf_with_transforms(mat_rows, m, n, need_u=True, need_v=True, need_w=False):
    """Smith normal form of an integer matrix given as list-of-lists.

    Returns (U, S, V, diag) as lists-of-lists plus the nonzero diagonal, with
    A = U @ S @ V, U and V unimodular, S diagonal with each entry dividing the
    next.  U and/or V are None when not requested.  With need_w, V is replaced
    by W = V^-1 (tracked by mirroring the column operations of S), whose
    columns past the rank form a lattice basis of ker A.
    """
    S = [row[:] for row in mat_rows]
    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)] if need_u else None
    if need_w and need_v:
        raise ValueError("request either V or its inverse, not both")
    need_vtrack = need_v or need_w
    V = [[1 if i == j else 0 for j in range(n)] for i in range(n)] if need_vtrack else None
    track_inverse = need_w

    t = 0
    while t < m and t < n:
        # locate a pivot of minimal absolute value in S[t:, t:]
        pi = pj = -1
        best = 0
        for i in range(t, m):
            row = S[i]
            for j in range(t, n):
                x = row[j]
                if x:
                    a = x if x > 0 else -x
                    if best == 0 or a < best:
                        best = a
                        pi, pj = i, j
                        if a == 1:
                            break
            if best == 1:
                break
        if pi < 0:
            break
        _swap_rows(S, U, t, pi)
        _swap_cols(S, V, t, pj, track_inverse)

        while True:
            # clear column t below the pivot
            dirty = False
            piv = S[t][t]
            for i in range(t + 1, m):
                x = S[i][t]
                if x:
                    q = x // piv
                    if q:
                        _row_sub(S, U, i, t, q)
                    if S[i][t]:
                        _swap_rows(S, U, t, i)
                        piv = S[t][t]
                        dirty = True
            if dirty:
                continue
            # clear row t right of the pivot
            piv = S[t][t]
            for j in range(t + 1, n):
                x = S[t][j]
                if x:
                    q = x // piv
                    if q:
                        _col_sub(S, V, j, t, q, m, track_inverse)
                    if S[t][j]:
                        _swap_cols(S, V, t, j, track_inverse)
                        piv = S[t][t]
                        dirty = True
            if dirty:
                continue
            # divisibility: the pivot must divide the remaining block
            piv = S[t][t]
            offender = -1
            for i in range(t + 1, m):
                row = S[i]
                for j in range(t + 1, n):
                    if row[j] % piv:
                        offender = i
                        break
                if offender >= 0:
                    break
            if offender < 0:
                break
            _row_add(S, U, t, offender)

        if S[t][t] < 0:
            _negate_row(S, U, t)
        t += 1

    diag = []
    for i in range(min(m, n)):
        if S[i][i]:
            diag.append(S[i][i])
    return U, S, V, diag


def _swap_rows(S, U, i, j):
    if i == j:
        return
    S[i], S[j] = S[j], S[i]
    if U is not None:
        for row in U:
            row[i], row[j] = row[j], row[i]


def _swap_cols(S, V, i, j, inverse=False):
    if i == j:
        return
    for row in S:
        row[i], row[j] = row[j], row[i]
    if V is not None:
        if inverse:
            # tracking V^-1: mirror the column operation
            for row in V:
                row[i], row[j] = row[j], row[i]
        else:
            V[i], V[j] = V[j], V[i]


def _row_sub(S, U, i, t, q):
    # S: row_i -= q*row_t, hence U: col_t += q*col_i
    ri, rt = S[i], S[t]
    for j in range(len(rt)):
        if rt[j]:
            ri[j] -= q * rt[j]
    if U is not None:
        for row in U:
            if row[i]:
                row[t] += q * row[i]


def _row_add(S, U, t, i):
    # S: row_t += row_i, hence U: col_i -= col_t
    rt, ri = S[t], S[i]
    for j in range(len(rt)):
        if ri[j]:
            rt[j] += ri[j]
    if U is not None:
        for row in U:
            if row[t]:
                row[i] -= row[t]


def _col_sub(S, V, j, t, q, m, inverse=False):
    # S: col_j -= q*col_t, hence V: row_t += q*row_j (or the mirrored column
    # operation when tracking V^-1)
    for row in S:
        if row[t]:
            row[j] -= q * row[t]
    if V is not None:
        if inverse:
            for row in V:
                if row[t]:
                    row[j] -= q * row[t]
        else:
            rt, rj = V[t], V[j]
            for k in range(len(rt)):
                if rj[k]:
                    rt[k] += q * rj[k]


def _negate_row(S, U, t):
    S[t] = [-x for x in S[t]]
    if U is not None:
        for row in U:
            row[t] = -row[t]


def snf(A: Mat, need_u=True, need_v=True):
    """Mat-level wrapper: returns (U, S, V) over int with A = U @ S @ V."""
    if A.ring != ZZ:
        raise ValueError("snf is defined over the integers")
    U, S, V, _ = snf_with_transforms(A.data, A.rows, A.cols, need_u, need_v)
    mk = lambda d, r, c: Mat(ZZ, r, c, d) if d is not None else None
    return mk(U, A.rows, A.rows), Mat(ZZ, A.rows, A.cols, S), mk(V, A.cols, A.cols)


def snf_diagonal(A: Mat):
    """Just the nonzero diagonal of the Smith form."""
    _, _, _, diag = snf_with_transforms(A.data, A.rows, A.cols, False, False)
    return diag


def bareiss_det(A: Mat) -> int:
    """Exact determinant of a square integer matrix (fraction-free Bareiss)."""
    if A.rows != A.cols:
        raise ValueError("determinant of a non-square matrix")
    n = A.rows
    if n == 0:
        return 1
    M = [row[:] for row in A.data]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            pivot_row = next((i for i in range(k + 1, n) if M[i][k]), -1)
            if pivot_row < 0:
                return 0
            M[k], M[pivot_row] = M[pivot_row], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
            M[i][k] = 0
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


# ---------------------------------------------------------------------------
# Gaussian elimination over fields (rat and fp)
#
# The coboundary matrices downstream are extremely sparse, so the elimination
# works in place and only touches the nonzero positions of the pivot row.
# ---------------------------------------------------------------------------

def _rref_fp(p: int, rows):
    """In-place reduced row echelon form over F_p; returns pivot columns."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    pivots = []
    r = 0
    for c in range(n):
        pr = next((i for i in range(r, m) if rows[i][c]), -1)
        if pr < 0:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        prow = rows[r]
        piv = prow[c]
        if piv != 1:
            inv = pow(piv, p - 2, p)
            for j in range(c, n):
                if prow[j]:
                    prow[j] = prow[j] * inv % p
        nz = [j for j in range(c, n) if prow[j]]
        for i in range(m):
            if i != r:
                row = rows[i]
                f = row[c]
                if f:
                    for j in nz:
                        row[j] = (row[j] - f * prow[j]) % p
        pivots.append(c)
        r += 1
        if r == m:
            break
    return pivots


def _rref_rat(rows):
    """In-place reduced row echelon form over the rationals."""
    from fractions import Fraction
    m = len(rows)
    n = len(rows[0]) if m else 0
    for i in range(m):
        rows[i] = [x if isinstance(x, Fraction) else Fraction(x) for x in rows[i]]
    pivots = []
    r = 0
    for c in range(n):
        pr = next((i for i in range(r, m) if rows[i][c]), -1)
        if pr < 0:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        prow = rows[r]
        piv = prow[c]
        if piv != 1:
            for j in range(c, n):
                if prow[j]:
                    prow[j] = prow[j] / piv
        nz = [j for j in range(c, n) if prow[j]]
        for i in range(m):
            if i != r:
                row = rows[i]
                f = row[c]
                if f:
                    for j in nz:
                        row[j] = row[j] - f * prow[j]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return pivots


def _rref(ring: Ring, rows):
    """In-place RREF dispatch; returns pivot column list."""
    if not rows or not rows[0]:
        return []
    if ring.kind == "fp":
        return _rref_fp(ring.p, rows)
    if ring.kind == "rat":
        return _rref_rat(rows)
    raise ValueError("rref needs a field")


def _rref_dispatch(ring: Ring, rows):
    """RREF through the compiled kernel when available."""
    from . import kernel
    return kernel.rref(ring, rows)


def field_rank(A: Mat) -> int:
    if not A.ring.is_field:
        raise ValueError("field_rank needs a field")
    if A.rows == 0 or A.cols == 0:
        return 0
    rows = [row[:] for row in A.data]
    return len(_rref_dispatch(A.ring, rows))


def field_kernel_basis(A: Mat) -> Mat:
    """Columns form a basis of ker A over a field."""
    ring = A.ring
    if not ring.is_field:
        raise ValueError("field_kernel_basis needs a field")
    n = A.cols
    if A.rows == 0 or n == 0:
        return Mat.identity(ring, n) if n else Mat(ring, n, 0)
    rows = [row[:] for row in A.data]
    pivots = _rref_dispatch(ring, rows)
    pivset = set(pivots)
    free = [j for j in range(n) if j not in pivset]
    basis = Mat(ring, n, len(free))
    one = ring.one()
    for k, j in enumerate(free):
        basis.data[j][k] = one
        for r, c in enumerate(pivots):
            basis.data[c][k] = ring.neg(ring.canon(rows[r][j]))
    return basis


def field_solve(A: Mat, b):
    """One solution x of A x = b over a field, or None if inconsistent."""
    ring = A.ring
    if not ring.is_field:
        raise ValueError("field_solve needs a field")
    m, n = A.rows, A.cols
    rows = [A.data[i][:] + [ring.canon(b[i])] for i in range(m)]
    pivots = _rref(ring, rows) if m and n + 1 else []
    x = [ring.zero()] * n
    for r2, c in enumerate(pivots):
        if c == n:
            return None  # pivot in the augmented column: inconsistent
        x[c] = ring.canon(rows[r2][n])
    return x


def column_space_pivots(A: Mat):
    """Indices of a maximal independent subset of columns (field ring)."""
    ring = A.ring
    if not ring.is_field:
        raise ValueError("column_space_pivots needs a field")
    if A.rows == 0 or A.cols == 0:
        return []
    rows = [row[:] for row in A.data]
    return _rref_dispatch(ring, rows)
