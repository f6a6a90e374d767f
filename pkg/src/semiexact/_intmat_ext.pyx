# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled int64 Hermite/Smith kernels with overflow detection.

Same pivoting rules as ``_intmat_py``; any overflow (including on input
conversion) raises ``OverflowError`` so the caller can retry with bigints.
"""

from libc.stdlib cimport malloc, free

cdef extern from *:
    """
    #include <stdint.h>
    #define SE_LLMIN INT64_MIN
    static inline int se_mul(long long a, long long b, long long *r) {
        return __builtin_mul_overflow(a, b, r);
    }
    static inline int se_sub(long long a, long long b, long long *r) {
        return __builtin_sub_overflow(a, b, r);
    }
    """
    int se_mul(long long a, long long b, long long *r) nogil
    int se_sub(long long a, long long b, long long *r) nogil
    long long SE_LLMIN


cdef inline long long fdiv(long long a, long long b) nogil:
    # floor division; callers guarantee b != 0 and no INT64_MIN / -1
    cdef long long q = a / b
    if (a % b != 0) and ((a < 0) != (b < 0)):
        q -= 1
    return q


cdef inline long long iabs(long long a) nogil:
    return -a if a < 0 else a


cdef int axpy_col(long long *mat, int rows, int cols, int dst, int src, long long q) nogil:
    # column dst -= q * column src; 1 on overflow
    cdef int r
    cdef long long prod, res
    for r in range(rows):
        if se_mul(q, mat[r * cols + src], &prod):
            return 1
        if se_sub(mat[r * cols + dst], prod, &res) or res == SE_LLMIN:
            return 1
        mat[r * cols + dst] = res
    return 0


cdef int axpy_row(long long *mat, int cols, int dst, int src, long long q) nogil:
    cdef int k
    cdef long long prod, res
    for k in range(cols):
        if se_mul(q, mat[src * cols + k], &prod):
            return 1
        if se_sub(mat[dst * cols + k], prod, &res) or res == SE_LLMIN:
            return 1
        mat[dst * cols + k] = res
    return 0


cdef void swap_col(long long *mat, int rows, int cols, int i, int j) nogil:
    cdef int r
    cdef long long tmp
    for r in range(rows):
        tmp = mat[r * cols + i]
        mat[r * cols + i] = mat[r * cols + j]
        mat[r * cols + j] = tmp


cdef void swap_row(long long *mat, int cols, int i, int j) nogil:
    cdef int k
    cdef long long tmp
    for k in range(cols):
        tmp = mat[i * cols + k]
        mat[i * cols + k] = mat[j * cols + k]
        mat[j * cols + k] = tmp


cdef int neg_col(long long *mat, int rows, int cols, int j) nogil:
    cdef int r
    for r in range(rows):
        if mat[r * cols + j] == SE_LLMIN:
            return 1
        mat[r * cols + j] = -mat[r * cols + j]
    return 0


cdef int neg_row(long long *mat, int cols, int i) nogil:
    cdef int k
    for k in range(cols):
        if mat[i * cols + k] == SE_LLMIN:
            return 1
        mat[i * cols + k] = -mat[i * cols + k]
    return 0


cdef long long *load(list a, int m, int n) except NULL:
    cdef long long *buf = <long long *> malloc(max(m * n, 1) * sizeof(long long))
    cdef int i, j
    if buf == NULL:
        raise MemoryError()
    try:
        for i in range(m):
            row = a[i]
            for j in range(n):
                v = <long long> row[j]
                if v == SE_LLMIN:
                    raise OverflowError("entry at int64 minimum")
                buf[i * n + j] = v
    except BaseException:
        free(buf)
        raise
    return buf


cdef long long *eye(int n) except NULL:
    cdef long long *buf = <long long *> malloc(max(n * n, 1) * sizeof(long long))
    cdef int i
    if buf == NULL:
        raise MemoryError()
    for i in range(n * n):
        buf[i] = 0
    for i in range(n):
        buf[i * n + i] = 1
    return buf


cdef list dump(long long *buf, int m, int n):
    return [[buf[i * n + j] for j in range(n)] for i in range(m)]


cdef int hnf_core(long long *h, long long *t, int m, int n) nogil:
    cdef int c = 0, i, j, piv, pivot_found, done
    cdef long long best, v, p, q
    for i in range(m):
        if c == n:
            break
        pivot_found = 0
        while True:
            piv = -1
            best = 0
            for j in range(c, n):
                v = h[i * n + j]
                if v != 0 and (piv < 0 or iabs(v) < best):
                    piv = j
                    best = iabs(v)
            if piv < 0:
                break
            pivot_found = 1
            if piv != c:
                swap_col(h, m, n, c, piv)
                swap_col(t, n, n, c, piv)
            done = 1
            p = h[i * n + c]
            for j in range(c + 1, n):
                if h[i * n + j] != 0:
                    q = fdiv(h[i * n + j], p)
                    if axpy_col(h, m, n, j, c, q) or axpy_col(t, n, n, j, c, q):
                        return 1
                    if h[i * n + j] != 0:
                        done = 0
            if done:
                break
        if not pivot_found:
            continue
        if h[i * n + c] < 0:
            if neg_col(h, m, n, c) or neg_col(t, n, n, c):
                return 1
        p = h[i * n + c]
        for j in range(c):
            q = fdiv(h[i * n + j], p)
            if q != 0:
                if axpy_col(h, m, n, j, c, q) or axpy_col(t, n, n, j, c, q):
                    return 1
        c += 1
    return 0


cdef int snf_core(long long *s, long long *u, long long *v, int m, int n) nogil:
    cdef int t, i, j, pi, pj, bi, bj, changed, bad
    cdef long long best, x, p
    for t in range(m if m < n else n):
        pi = -1
        pj = -1
        best = 0
        for i in range(t, m):
            for j in range(t, n):
                x = s[i * n + j]
                if x != 0 and (pi < 0 or iabs(x) < best):
                    pi = i
                    pj = j
                    best = iabs(x)
        if pi < 0:
            break
        if pi != t:
            swap_row(s, n, t, pi)
            swap_row(u, m, t, pi)
        if pj != t:
            swap_col(s, m, n, t, pj)
            swap_col(v, n, n, t, pj)
        while True:
            changed = 0
            p = s[t * n + t]
            for i in range(t + 1, m):
                if s[i * n + t] != 0:
                    x = fdiv(s[i * n + t], p)
                    if axpy_row(s, n, i, t, x) or axpy_row(u, m, i, t, x):
                        return 1
                    if s[i * n + t] != 0:
                        changed = 1
            for j in range(t + 1, n):
                if s[t * n + j] != 0:
                    x = fdiv(s[t * n + j], p)
                    if axpy_col(s, m, n, j, t, x) or axpy_col(v, n, n, j, t, x):
                        return 1
                    if s[t * n + j] != 0:
                        changed = 1
            if changed:
                bi = t
                bj = t
                best = iabs(s[t * n + t])
                for i in range(t + 1, m):
                    x = s[i * n + t]
                    if x != 0 and iabs(x) < best:
                        bi = i
                        bj = t
                        best = iabs(x)
                for j in range(t + 1, n):
                    x = s[t * n + j]
                    if x != 0 and iabs(x) < best:
                        bi = t
                        bj = j
                        best = iabs(x)
                if bi != t:
                    swap_row(s, n, t, bi)
                    swap_row(u, m, t, bi)
                if bj != t:
                    swap_col(s, m, n, t, bj)
                    swap_col(v, n, n, t, bj)
                continue
            p = s[t * n + t]
            bad = -1
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if s[i * n + j] % p != 0:
                        bad = i
                        break
                if bad >= 0:
                    break
            if bad < 0:
                break
            if axpy_row(s, n, t, bad, -1) or axpy_row(u, m, t, bad, -1):
                return 1
        if s[t * n + t] < 0:
            if neg_row(s, n, t) or neg_row(u, m, t):
                return 1
    return 0


def hnf(list a, int m, int n):
    cdef long long *h = load(a, m, n)
    cdef long long *t = NULL
    cdef int status
    try:
        t = eye(n)
        with nogil:
            status = hnf_core(h, t, m, n)
        if status:
            raise OverflowError("int64 overflow in hnf")
        return dump(h, m, n), dump(t, n, n)
    finally:
        free(h)
        if t != NULL:
            free(t)


def snf(list a, int m, int n):
    cdef long long *s = load(a, m, n)
    cdef long long *u = NULL
    cdef long long *v = NULL
    cdef int status
    try:
        u = eye(m)
        v = eye(n)
        with nogil:
            status = snf_core(s, u, v, m, n)
        if status:
            raise OverflowError("int64 overflow in snf")
        return dump(s, m, n), dump(u, m, m), dump(v, n, n)
    finally:
        free(s)
        if u != NULL:
            free(u)
        if v != NULL:
            free(v)
