"""Integer matrix toolkit: Hermite and Smith normal forms, lattice solving.

All public functions take and return ``numpy`` arrays of ``dtype=object``
holding Python ints, so arithmetic is exact and unbounded by default.

The heavy lifting is done by one of two interchangeable kernels:

* ``semiexact._intmat_ext`` -- compiled int64 code with overflow detection;
* ``semiexact._intmat_py`` -- the pure-Python fallback.

The compiled kernel is used when importable.  If it overflows, the call is
transparently rerun on the bigint fallback, unless :func:`fixed_width` is
active, in which case :class:`ArithmeticOverflow` is raised instead.
"""

from __future__ import annotations

import contextlib
import contextvars
from dataclasses import dataclass

import numpy as np

from . import _intmat_py
from .errors import ArithmeticOverflow

try:
    from . import _intmat_ext
except ImportError:  # pragma: no cover - depends on the build
    _intmat_ext = None

BACKEND = "cython" if _intmat_ext is not None else "python"

_fixed_width = contextvars.ContextVar("semiexact_fixed_width", default=False)
_backend = contextvars.ContextVar("semiexact_backend", default=BACKEND)


@contextlib.contextmanager
def fixed_width():
    """Run enclosed computations in checked signed 64-bit arithmetic."""
    token = _fixed_width.set(True)
    try:
        yield
    finally:
        _fixed_width.reset(token)


@contextlib.contextmanager
def use_backend(name):
    """Force ``"python"`` or ``"cython"`` kernels inside the block."""
    if name not in ("python", "cython"):
        raise ValueError(f"unknown backend {name!r}")
    if name == "cython" and _intmat_ext is None:
        raise RuntimeError("compiled kernel is not available")
    token = _backend.set(name)
    try:
        yield
    finally:
        _backend.reset(token)


def current_backend():
    return _backend.get()


def _dispatch(name, rows, m, n):
    checked = _fixed_width.get()
    if _backend.get() == "cython":
        try:
            return getattr(_intmat_ext, name)(rows, m, n)
        except OverflowError as exc:
            if checked:
                raise ArithmeticOverflow(str(exc)) from None
    return getattr(_intmat_py, name)(rows, m, n, checked=checked)


def as_matrix(a, shape=None):
    """Coerce nested lists / arrays to a 2-D object array of Python ints."""
    if isinstance(a, np.ndarray) and a.dtype == object and a.ndim == 2:
        return a if shape is None or a.shape == shape else a.reshape(shape)
    arr = np.array(a, dtype=object)
    if shape is not None:
        arr = arr.reshape(shape)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {arr.shape}")
    return np.vectorize(int, otypes=[object])(arr) if arr.size else arr


def zeros(m, n):
    return np.zeros((m, n), dtype=object)


def eye(n):
    out = zeros(n, n)
    for i in range(n):
        out[i, i] = 1
    return out


def hstack(*mats):
    return np.concatenate([as_matrix(m) for m in mats], axis=1).astype(object)


def _rows(a):
    return [list(r) for r in a.tolist()]


def _to_array(rows, m, n):
    out = zeros(m, n)
    for i in range(m):
        for j in range(n):
            out[i, j] = rows[i][j]
    return out


def hnf(a):
    """Column Hermite normal form: ``(h, t)`` with ``a @ t == h``, ``t`` unimodular."""
    a = as_matrix(a)
    m, n = a.shape
    h, t = _dispatch("hnf", _rows(a), m, n)
    return _to_array(h, m, n), _to_array(t, n, n)


@dataclass(frozen=True)
class SnfResult:
    """``u @ a @ v == s`` with ``s`` diagonal, entries d1 | d2 | ... >= 0."""

    s: np.ndarray
    u: np.ndarray
    v: np.ndarray

    @property
    def diagonal(self):
        k = min(self.s.shape)
        return tuple(self.s[i, i] for i in range(k))


def snf(a):
    a = as_matrix(a)
    m, n = a.shape
    s, u, v = _dispatch("snf", _rows(a), m, n)
    return SnfResult(_to_array(s, m, n), _to_array(u, m, m), _to_array(v, n, n))


def _hnf_pivots(h):
    """Yield ``(row, col)`` pivot positions of a column echelon form."""
    m, n = h.shape
    col = 0
    for i in range(m):
        if col < n and h[i, col] != 0:
            yield i, col
            col += 1


class _Solver:
    """Reusable solver for ``basis @ c == target`` over the integers."""

    def __init__(self, basis):
        self.basis = as_matrix(basis)
        self.h, self.t = hnf(self.basis)
        self.pivots = list(_hnf_pivots(self.h))

    def solve(self, target):
        m, k = self.h.shape
        y = [0] * k
        for i, c in self.pivots:
            residual = target[i] - sum(self.h[i, j] * y[j] for j in range(c))
            q, r = divmod(residual, self.h[i, c])
            if r:
                return None
            y[c] = q
        y = np.array(y, dtype=object)
        if k and any(self.h @ y - np.asarray(target, dtype=object)):
            return None
        if not k and any(target):
            return None
        return self.t @ y if k else np.zeros(0, dtype=object)


def lattice_solve(basis, target):
    """Coefficients ``c`` with ``basis @ c == target``, or ``None``."""
    basis = as_matrix(basis)
    target = np.asarray(target, dtype=object).reshape(basis.shape[0])
    return _Solver(basis).solve(target)


def lattice_solve_many(basis, targets):
    """Solve for every column of ``targets``; ``None`` if any is unreachable."""
    basis = as_matrix(basis)
    targets = as_matrix(targets)
    solver = _Solver(basis)
    out = zeros(basis.shape[1], targets.shape[1])
    for j in range(targets.shape[1]):
        c = solver.solve(targets[:, j])
        if c is None:
            return None
        out[:, j] = c
    return out


def lattice_contains(basis, vectors):
    """True iff every column of ``vectors`` lies in the column lattice of ``basis``."""
    vectors = as_matrix(vectors)
    if vectors.shape[1] == 0 or not vectors.any():
        return True
    return lattice_solve_many(basis, vectors) is not None


def nullspace(a):
    """Columns forming a Z-basis of ``{x : a @ x == 0}``."""
    a = as_matrix(a)
    h, t = hnf(a)
    rank = len(list(_hnf_pivots(h)))
    return t[:, rank:]


def lattice_basis(gens):
    """Nonzero columns of the HNF of ``gens``: a basis of their lattice."""
    gens = as_matrix(gens)
    h, _ = hnf(gens)
    rank = len(list(_hnf_pivots(h)))
    return h[:, :rank]


def invariant_factors_of_relations(rank, rels):
    """Invariant factors of Z^rank / colspan(rels); 0 stands for a copy of Z."""
    rels = as_matrix(rels)
    diag = list(snf(rels).diagonal) if rels.size else []
    diag += [0] * (rank - len(diag))
    return tuple(d for d in diag if d != 1)


def inverse_unimodular(u):
    u = as_matrix(u)
    inv = lattice_solve_many(u, eye(u.shape[0]))
    if inv is None:
        raise ValueError("matrix is not unimodular")
    return inv
