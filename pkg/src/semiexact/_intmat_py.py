"""Pure-Python Hermite/Smith normal form kernels.

Matrices are lists of row lists of Python ints, with explicit shape so that
0-row and 0-column matrices survive.  ``checked=True`` raises
:class:`ArithmeticOverflow` as soon as any entry leaves the signed 64-bit
range, mirroring the compiled kernel.  Both kernels run the same pivoting
rules so that they produce identical output.
"""

from .errors import ArithmeticOverflow

INT64_MAX = (1 << 63) - 1
INT64_MIN = -(1 << 63)


def _check_rows(rows):
    for row in rows:
        for v in row:
            if v > INT64_MAX or v <= INT64_MIN:
                raise ArithmeticOverflow("entry exceeds signed 64-bit range")


def _eye(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _col_axpy(mats, dst, src, q):
    # column dst -= q * column src, in every matrix of ``mats``
    for mat in mats:
        for row in mat:
            row[dst] -= q * row[src]


def _col_swap(mats, i, j):
    for mat in mats:
        for row in mat:
            row[i], row[j] = row[j], row[i]


def _col_neg(mats, j):
    for mat in mats:
        for row in mat:
            row[j] = -row[j]


def hnf(a, m, n, checked=False):
    """Column-style Hermite normal form.

    Returns ``(h, t)`` with ``a @ t == h`` and ``t`` unimodular.  ``h`` is in
    column echelon form: pivot ``k`` sits in a strictly increasing row,
    is positive, the entries left of it in its row lie in ``[0, pivot)``,
    and trailing columns are zero.
    """
    h = [list(map(int, row)) for row in a]
    t = _eye(n)
    if checked:
        _check_rows(h)
    mats = (h, t)
    c = 0
    for i in range(m):
        if c == n:
            break
        row = h[i]
        pivot_found = False
        while True:
            piv, best = -1, 0
            for j in range(c, n):
                v = row[j]
                if v and (piv < 0 or abs(v) < best):
                    piv, best = j, abs(v)
            if piv < 0:
                break
            pivot_found = True
            if piv != c:
                _col_swap(mats, c, piv)
            done = True
            p = row[c]
            for j in range(c + 1, n):
                if row[j]:
                    _col_axpy(mats, j, c, row[j] // p)
                    if row[j]:
                        done = False
            if checked:
                _check_rows(h)
                _check_rows(t)
            if done:
                break
        if not pivot_found:
            continue
        if row[c] < 0:
            _col_neg(mats, c)
        p = row[c]
        for j in range(c):
            q = row[j] // p
            if q:
                _col_axpy(mats, j, c, q)
        if checked:
            _check_rows(h)
            _check_rows(t)
        c += 1
    return h, t


def snf(a, m, n, checked=False):
    """Smith normal form ``(s, u, v)`` with ``u @ a @ v == s``.

    The diagonal is nonnegative, satisfies d1 | d2 | ..., and nonzero
    entries precede zeros.
    """
    s = [list(map(int, row)) for row in a]
    u = _eye(m)
    v = _eye(n)
    if checked:
        _check_rows(s)

    def row_axpy(dst, src, q):
        # row dst -= q * row src, in s and u
        for mat in (s, u):
            rd, rs = mat[dst], mat[src]
            for k in range(len(rd)):
                rd[k] -= q * rs[k]

    def row_swap(i, j):
        s[i], s[j] = s[j], s[i]
        u[i], u[j] = u[j], u[i]

    def verify():
        if checked:
            _check_rows(s)
            _check_rows(u)
            _check_rows(v)

    for t in range(min(m, n)):
        pi = pj = -1
        best = 0
        for i in range(t, m):
            for j in range(t, n):
                x = s[i][j]
                if x and (pi < 0 or abs(x) < best):
                    pi, pj, best = i, j, abs(x)
        if pi < 0:
            break
        if pi != t:
            row_swap(t, pi)
        if pj != t:
            _col_swap((s, v), t, pj)
        while True:
            changed = False
            p = s[t][t]
            for i in range(t + 1, m):
                if s[i][t]:
                    row_axpy(i, t, s[i][t] // p)
                    if s[i][t]:
                        changed = True
            for j in range(t + 1, n):
                if s[t][j]:
                    _col_axpy((s, v), j, t, s[t][j] // p)
                    if s[t][j]:
                        changed = True
            verify()
            if changed:
                bi, bj, best = t, t, abs(s[t][t])
                for i in range(t + 1, m):
                    x = s[i][t]
                    if x and abs(x) < best:
                        bi, bj, best = i, t, abs(x)
                for j in range(t + 1, n):
                    x = s[t][j]
                    if x and abs(x) < best:
                        bi, bj, best = t, j, abs(x)
                if bi != t:
                    row_swap(t, bi)
                if bj != t:
                    _col_swap((s, v), t, bj)
                continue
            p = s[t][t]
            bad = -1
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if s[i][j] % p:
                        bad = i
                        break
                if bad >= 0:
                    break
            if bad < 0:
                break
            row_axpy(t, bad, -1)
            verify()
        if s[t][t] < 0:
            for mat in (s, u):
                mat[t] = [-x for x in mat[t]]
    verify()
    return s, u, v
