# cython: language_level=3
"""Compiled elimination kernel: Smith normal form on 64-bit integers and
Gaussian elimination mod p.

Mirrors catcohom.homalg.snf on C int64 arithmetic.  Compiled with
overflowcheck enabled, so any intermediate outside the int64 range raises
OverflowError and the caller retries with the unbounded pure-Python backend.
"""

from cpython.mem cimport PyMem_Malloc, PyMem_Free

cimport cython


cdef inline long long _llabs(long long x):
    return -x if x < 0 else x


def snf_i64(list mat_rows, Py_ssize_t m, Py_ssize_t n, bint need_u, bint need_v,
            bint need_w=False):
    """Smith normal form of an m x n integer matrix (entries must fit int64).

    Returns (U, S, V, diag) as lists-of-lists / list, with None for transforms
    that were not requested.  With need_w the V slot carries V^-1 instead
    (mirrored column operations).  Raises OverflowError if any intermediate
    value leaves the int64 range.
    """
    cdef bint vtrack = need_v or need_w
    if need_v and need_w:
        raise ValueError("request either V or its inverse, not both")
    cdef long long *S = <long long *> PyMem_Malloc(m * n * sizeof(long long))
    cdef long long *U = NULL
    cdef long long *V = NULL
    if S == NULL:
        raise MemoryError()
    cdef Py_ssize_t i, j, t, pi, pj, offender
    cdef long long x, q, piv, best, a
    cdef bint dirty
    try:
        for i in range(m):
            row = mat_rows[i]
            for j in range(n):
                S[i * n + j] = row[j]
        if need_u:
            U = <long long *> PyMem_Malloc(m * m * sizeof(long long))
            if U == NULL:
                raise MemoryError()
            for i in range(m * m):
                U[i] = 0
            for i in range(m):
                U[i * m + i] = 1
        if vtrack:
            V = <long long *> PyMem_Malloc(n * n * sizeof(long long))
            if V == NULL:
                raise MemoryError()
            for i in range(n * n):
                V[i] = 0
            for i in range(n):
                V[i * n + i] = 1

        t = 0
        while t < m and t < n:
            pi = -1
            pj = -1
            best = 0
            for i in range(t, m):
                for j in range(t, n):
                    x = S[i * n + j]
                    if x != 0:
                        a = _llabs(x)
                        if best == 0 or a < best:
                            best = a
                            pi = i
                            pj = j
                            if a == 1:
                                break
                if best == 1:
                    break
            if pi < 0:
                break
            _swap_rows(S, U, m, n, t, pi)
            _swap_cols(S, V, m, n, t, pj, need_w)

            while True:
                dirty = False
                piv = S[t * n + t]
                for i in range(t + 1, m):
                    x = S[i * n + t]
                    if x != 0:
                        q = _floordiv(x, piv)
                        if q != 0:
                            _row_sub(S, U, m, n, i, t, q)
                        if S[i * n + t] != 0:
                            _swap_rows(S, U, m, n, t, i)
                            piv = S[t * n + t]
                            dirty = True
                if dirty:
                    continue
                piv = S[t * n + t]
                for j in range(t + 1, n):
                    x = S[t * n + j]
                    if x != 0:
                        q = _floordiv(x, piv)
                        if q != 0:
                            _col_sub(S, V, m, n, j, t, q, need_w)
                        if S[t * n + j] != 0:
                            _swap_cols(S, V, m, n, t, j, need_w)
                            piv = S[t * n + t]
                            dirty = True
                if dirty:
                    continue
                piv = S[t * n + t]
                offender = -1
                for i in range(t + 1, m):
                    for j in range(t + 1, n):
                        if S[i * n + j] % piv != 0:
                            offender = i
                            break
                    if offender >= 0:
                        break
                if offender < 0:
                    break
                _row_add(S, U, m, n, t, offender)

            if S[t * n + t] < 0:
                for j in range(n):
                    S[t * n + j] = -S[t * n + j]
                if U != NULL:
                    for i in range(m):
                        U[i * m + t] = -U[i * m + t]
            t += 1

        s_out = [[S[i * n + j] for j in range(n)] for i in range(m)]
        u_out = [[U[i * m + j] for j in range(m)] for i in range(m)] if need_u else None
        v_out = [[V[i * n + j] for j in range(n)] for i in range(n)] if vtrack else None
        diag = []
        for i in range(m if m < n else n):
            if S[i * n + i] != 0:
                diag.append(S[i * n + i])
        return u_out, s_out, v_out, diag
    finally:
        PyMem_Free(S)
        if U != NULL:
            PyMem_Free(U)
        if V != NULL:
            PyMem_Free(V)


cdef inline long long _floordiv(long long a, long long b):
    # cdivision is off, so // carries Python floor semantics
    return a // b


cdef void _swap_rows(long long *S, long long *U, Py_ssize_t m, Py_ssize_t n,
                     Py_ssize_t i, Py_ssize_t j):
    cdef Py_ssize_t k
    cdef long long tmp
    if i == j:
        return
    for k in range(n):
        tmp = S[i * n + k]
        S[i * n + k] = S[j * n + k]
        S[j * n + k] = tmp
    if U != NULL:
        for k in range(m):
            tmp = U[k * m + i]
            U[k * m + i] = U[k * m + j]
            U[k * m + j] = tmp


cdef void _swap_cols(long long *S, long long *V, Py_ssize_t m, Py_ssize_t n,
                     Py_ssize_t i, Py_ssize_t j, bint inverse):
    cdef Py_ssize_t k
    cdef long long tmp
    if i == j:
        return
    for k in range(m):
        tmp = S[k * n + i]
        S[k * n + i] = S[k * n + j]
        S[k * n + j] = tmp
    if V != NULL:
        if inverse:
            for k in range(n):
                tmp = V[k * n + i]
                V[k * n + i] = V[k * n + j]
                V[k * n + j] = tmp
        else:
            for k in range(n):
                tmp = V[i * n + k]
                V[i * n + k] = V[j * n + k]
                V[j * n + k] = tmp


cdef void _row_sub(long long *S, long long *U, Py_ssize_t m, Py_ssize_t n,
                   Py_ssize_t i, Py_ssize_t t, long long q) except *:
    # S: row_i -= q*row_t, so U: col_t += q*col_i
    cdef Py_ssize_t k
    for k in range(n):
        if S[t * n + k] != 0:
            S[i * n + k] = S[i * n + k] - q * S[t * n + k]
    if U != NULL:
        for k in range(m):
            if U[k * m + i] != 0:
                U[k * m + t] = U[k * m + t] + q * U[k * m + i]


cdef void _row_add(long long *S, long long *U, Py_ssize_t m, Py_ssize_t n,
                   Py_ssize_t t, Py_ssize_t i) except *:
    # S: row_t += row_i, so U: col_i -= col_t
    cdef Py_ssize_t k
    for k in range(n):
        if S[i * n + k] != 0:
            S[t * n + k] = S[t * n + k] + S[i * n + k]
    if U != NULL:
        for k in range(m):
            if U[k * m + t] != 0:
                U[k * m + i] = U[k * m + i] - U[k * m + t]


cdef void _col_sub(long long *S, long long *V, Py_ssize_t m, Py_ssize_t n,
                   Py_ssize_t j, Py_ssize_t t, long long q, bint inverse) except *:
    # S: col_j -= q*col_t, so V: row_t += q*row_j, or the mirrored column
    # operation when V holds the inverse transform
    cdef Py_ssize_t k
    for k in range(m):
        if S[k * n + t] != 0:
            S[k * n + j] = S[k * n + j] - q * S[k * n + t]
    if V != NULL:
        if inverse:
            for k in range(n):
                if V[k * n + t] != 0:
                    V[k * n + j] = V[k * n + j] - q * V[k * n + t]
        else:
            for k in range(n):
                if V[j * n + k] != 0:
                    V[t * n + k] = V[t * n + k] + q * V[j * n + k]


@cython.overflowcheck(False)
def rank_mod_p(list mat_rows, Py_ssize_t m, Py_ssize_t n, long long p):
    """Rank of an m x n matrix over F_p (p < 2^31; no overflow possible)."""
    cdef long long *A = <long long *> PyMem_Malloc(m * n * sizeof(long long))
    if A == NULL:
        raise MemoryError()
    cdef Py_ssize_t i, j, c, r, pr, k
    cdef long long inv, f, piv
    try:
        for i in range(m):
            row = mat_rows[i]
            for j in range(n):
                A[i * n + j] = row[j] % p
        r = 0
        for c in range(n):
            pr = -1
            for i in range(r, m):
                if A[i * n + c] != 0:
                    pr = i
                    break
            if pr < 0:
                continue
            if pr != r:
                for k in range(n):
                    A[r * n + k], A[pr * n + k] = A[pr * n + k], A[r * n + k]
            piv = A[r * n + c]
            inv = _inv_mod(piv, p)
            for k in range(c, n):
                A[r * n + k] = (A[r * n + k] * inv) % p
            for i in range(m):
                if i != r and A[i * n + c] != 0:
                    f = A[i * n + c]
                    for k in range(c, n):
                        A[i * n + k] = (A[i * n + k] - f * A[r * n + k]) % p
                        if A[i * n + k] < 0:
                            A[i * n + k] += p
            r += 1
            if r == m:
                break
        return r
    finally:
        PyMem_Free(A)


@cython.overflowcheck(False)
def rref_mod_p(list mat_rows, Py_ssize_t m, Py_ssize_t n, long long p):
    """Reduced row echelon form over F_p; returns (rows, pivot columns)."""
    cdef long long *A = <long long *> PyMem_Malloc(m * n * sizeof(long long))
    if A == NULL:
        raise MemoryError()
    cdef Py_ssize_t i, j, c, r, pr, k
    cdef long long inv, f, piv, tmp
    pivots = []
    try:
        for i in range(m):
            row = mat_rows[i]
            for j in range(n):
                A[i * n + j] = row[j] % p
        r = 0
        for c in range(n):
            pr = -1
            for i in range(r, m):
                if A[i * n + c] != 0:
                    pr = i
                    break
            if pr < 0:
                continue
            if pr != r:
                for k in range(n):
                    tmp = A[r * n + k]
                    A[r * n + k] = A[pr * n + k]
                    A[pr * n + k] = tmp
            piv = A[r * n + c]
            if piv != 1:
                inv = _inv_mod(piv, p)
                for k in range(c, n):
                    if A[r * n + k] != 0:
                        A[r * n + k] = (A[r * n + k] * inv) % p
            for i in range(m):
                if i != r and A[i * n + c] != 0:
                    f = A[i * n + c]
                    for k in range(c, n):
                        if A[r * n + k] != 0:
                            A[i * n + k] = (A[i * n + k] - f * A[r * n + k]) % p
                            if A[i * n + k] < 0:
                                A[i * n + k] += p
            pivots.append(c)
            r += 1
            if r == m:
                break
        out = [[A[i * n + j] for j in range(n)] for i in range(m)]
        return out, pivots
    finally:
        PyMem_Free(A)


cdef long long _inv_mod(long long a, long long p):
    cdef long long t = 0, newt = 1, r = p, newr = a % p, q, tmp
    while newr != 0:
        q = r // newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    if t < 0:
        t += p
    return t
