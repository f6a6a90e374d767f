"""Finitely generated abelian groups given by integer presentations.

``AbPresentation(rank=p, rels=R)`` is Z^p / colspan(R).  A morphism
``A -> B`` is an integer matrix of shape ``(B.rank, A.rank)`` that sends the
relation lattice of ``A`` into that of ``B``; two parallel matrices are equal
as morphisms when their difference lands in ``B``'s relation lattice.

Kernel: the preimage lattice ``{x : F x in L(R_B)}`` modulo ``L(R_A)``.
Cokernel: ``B``'s generators with relations ``[R_B | F]``.  Both objects are
then simplified through Smith normal form into diagonal presentations with no
trivial generators.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd
from typing import ClassVar

import numpy as np

from .. import intmat
from ..errors import InvalidPayload
from .base import Model, Morphism


@dataclass(frozen=True)
class AbPresentation:
    rank: int
    rels: tuple  # tuple of row tuples, ``rank`` rows
    ncols: int
    model: ClassVar["AbGroupModel"]
    _matrix: np.ndarray = field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        if len(self.rels) != self.rank or any(len(r) != self.ncols for r in self.rels):
            raise InvalidPayload(f"relation matrix must have {self.rank} rows of {self.ncols}")
        m = intmat.zeros(self.rank, self.ncols)
        for i, row in enumerate(self.rels):
            for j, v in enumerate(row):
                m[i, j] = v
        m.flags.writeable = False
        object.__setattr__(self, "_matrix", m)

    @property
    def matrix(self) -> np.ndarray:
        return self._matrix

    def __repr__(self):
        return f"Ab(gens={self.rank}, rels={[list(r) for r in self.rels]})"


def presentation(rank, rels=None) -> AbPresentation:
    """Build a presentation from a ``rank x m`` matrix (``None`` for free)."""
    if rels is None:
        rels = intmat.zeros(rank, 0)
    else:
        rels = np.asarray(rels, dtype=object)
        if rels.size == 0:
            rels = intmat.zeros(rank, 0)
        elif rels.ndim == 1:
            rels = rels.reshape(rank, -1)
    if rels.shape[0] != rank:
        raise InvalidPayload(f"relation matrix has {rels.shape[0]} rows, expected {rank}")
    return AbPresentation(rank, tuple(tuple(int(x) for x in row) for row in rels.tolist()), rels.shape[1])


def cyclic(n) -> AbPresentation:
    """Z/n, with n == 0 giving Z."""
    return presentation(1, [[n]] if n else None)


def abmap(src, dst, matrix) -> Morphism:
    """Validated morphism constructor."""
    mat = np.asarray(matrix, dtype=object)
    if mat.size == 0:
        mat = intmat.zeros(dst.rank, src.rank)
    mat = mat.reshape(dst.rank, src.rank)
    mat = intmat.as_matrix(mat)
    if not intmat.lattice_contains(dst.matrix, mat @ src.matrix):
        raise InvalidPayload("matrix does not respect the relations (not well defined)")
    return Morphism(src, dst, mat)


def direct_sum(a: AbPresentation, b: AbPresentation) -> AbPresentation:
    rels = intmat.zeros(a.rank + b.rank, a.ncols + b.ncols)
    rels[: a.rank, : a.ncols] = a.matrix
    rels[a.rank :, a.ncols :] = b.matrix
    return presentation(a.rank + b.rank, rels)


@lru_cache(maxsize=4096)
def smith_form(obj: AbPresentation):
    """``(factors, phi, psi)``: obj is iso to the sum of Z/d for d in factors.

    ``phi`` maps obj's generators to the diagonal coordinates and ``psi``
    maps back; both are morphisms' matrices, and factors never contain 1.
    """
    p = obj.rank
    if obj.ncols:
        res = intmat.snf(obj.matrix)
        diag = list(res.diagonal)
        u = res.u
    else:
        diag, u = [], intmat.eye(p)
    diag += [0] * (p - len(diag))
    keep = [i for i in range(p) if diag[i] != 1]
    u_inv = intmat.inverse_unimodular(u) if p else intmat.eye(0)
    phi = u[keep, :] if p else intmat.zeros(0, 0)
    psi = u_inv[:, keep] if p else intmat.zeros(0, 0)
    return tuple(diag[i] for i in keep), phi, psi


def _diagonal_presentation(factors) -> AbPresentation:
    torsion = [(k, d) for k, d in enumerate(factors) if d]
    rels = intmat.zeros(len(factors), len(torsion))
    for col, (k, d) in enumerate(torsion):
        rels[k, col] = d
    return presentation(len(factors), rels)


def simplify(rank, rels):
    """Return ``(obj, phi, psi)`` with ``obj`` the diagonal form of Z^rank/L(rels)."""
    factors, phi, psi = smith_form(presentation(rank, rels))
    return _diagonal_presentation(factors), phi, psi


def invariant_factors(obj: AbPresentation):
    """Invariant factors, torsion first in divisibility order, then 0 per free rank."""
    factors = smith_form(obj)[0]
    return tuple(sorted(d for d in factors if d)) + tuple(d for d in factors if d == 0)


def _unimodular(rng, n, steps=2):
    u = intmat.eye(n)
    if n < 2:
        return u
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        if rng.random() < 0.3:
            u[[i, j], :] = u[[j, i], :]
        else:
            u[i, :] = u[i, :] + rng.choice((-1, 1)) * u[j, :]
    return u


class AbGroupModel(Model):
    name = "abgroup"
    ex2 = True
    homological = True

    def identity(self, obj):
        return Morphism(obj, obj, intmat.eye(obj.rank))

    def compose(self, g, f):
        return Morphism(f.src, g.dst, g.data @ f.data)

    def equal(self, f, g):
        return intmat.lattice_contains(f.dst.matrix, f.data - g.data)

    def is_null(self, f):
        return intmat.lattice_contains(f.dst.matrix, f.data)

    def kernel(self, f):
        a, b = f.src, f.dst
        pa = a.rank
        sols = intmat.nullspace(intmat.hstack(f.data, b.matrix))
        gens = intmat.lattice_basis(sols[:pa, :])
        q = gens.shape[1]
        rels = intmat.nullspace(intmat.hstack(gens, a.matrix))[:q, :]
        obj, _, psi = simplify(q, rels)
        return Morphism(obj, a, gens @ psi)

    def cokernel(self, f):
        b = f.dst
        obj, phi, _ = simplify(b.rank, intmat.hstack(b.matrix, f.data))
        return Morphism(b, obj, phi)

    def lift(self, k, x):
        sol = intmat.lattice_solve_many(intmat.hstack(k.data, k.dst.matrix), x.data)
        if sol is None:
            raise ValueError("morphism does not factor through the kernel arrow")
        return Morphism(x.src, k.src, sol[: k.src.rank, :])

    def descend(self, c, y):
        target = c.dst
        sections = intmat.lattice_solve_many(intmat.hstack(c.data, target.matrix), intmat.eye(target.rank))
        if sections is None:
            raise ValueError("cokernel arrow is not surjective")
        return Morphism(target, y.dst, y.data @ sections[: c.src.rank, :])

    def is_iso(self, f):
        return self.is_zero_object(self.kernel(f).src) and self.is_zero_object(self.cokernel(f).dst)

    def zero_object(self):
        return presentation(0)

    def is_zero_object(self, obj):
        return not smith_form(obj)[0]

    def null_morphism(self, src, dst):
        return Morphism(src, dst, intmat.zeros(dst.rank, src.rank))

    def fingerprint(self, obj):
        return invariant_factors(obj)

    def format_fingerprint(self, fp):
        return ",".join(map(str, fp)) if fp else "1"

    def format_data(self, f):
        return format_matrix(f.data)

    # -- random generation ------------------------------------------------

    def random_object(self, rng, max_size=3, factors=(0, 1, 2, 2, 3, 3), min_rank=0):
        """Random presentation of rank <= 3 with diagonal entries drawn from ``factors``."""
        top = min(3, max_size)
        rank = rng.randint(min(min_rank, top), top)
        factors = [rng.choice(factors) for _ in range(rank)]
        torsion = [(k, d) for k, d in enumerate(factors) if d]
        diag = intmat.zeros(rank, len(torsion))
        for col, (k, d) in enumerate(torsion):
            diag[k, col] = d
        rels = _unimodular(rng, rank) @ diag
        if rank and rng.random() < 0.2:
            # redundant relation column
            rels = intmat.hstack(rels, rels @ np.array([rng.randint(-1, 1) for _ in range(rels.shape[1])], dtype=object).reshape(-1, 1))
        return presentation(rank, rels)

    def random_morphism(self, rng, src, dst):
        fa, phi_a, _ = smith_form(src)
        fb, _, psi_b = smith_form(dst)
        f0 = intmat.zeros(len(fb), len(fa))
        for j, e in enumerate(fb):
            for i, d in enumerate(fa):
                k = rng.randint(-3, 3)
                if e == 0:
                    f0[j, i] = k if d == 0 else 0
                else:
                    f0[j, i] = (k * (e // gcd(d, e))) % e
        return Morphism(src, dst, psi_b @ f0 @ phi_a)

    def random_exact_morphism(self, rng, src, max_size=3):
        return self.random_morphism(rng, src, self.random_object(rng, max_size))

    def random_kernel_from(self, rng, obj, max_size=3):
        w = self.random_object(rng, max(0, min(3, max_size) - obj.rank))
        total = direct_sum(obj, w)
        u = _unimodular(rng, total.rank)
        incl = intmat.zeros(total.rank, obj.rank)
        incl[: obj.rank, :] = intmat.eye(obj.rank)
        return Morphism(obj, presentation(total.rank, u @ total.matrix), u @ incl)

    def random_cokernel_onto(self, rng, obj, max_size=3):
        w = self.random_object(rng, max(0, min(3, max_size) - obj.rank))
        total = direct_sum(obj, w)
        u = _unimodular(rng, total.rank)
        proj = intmat.zeros(obj.rank, total.rank)
        proj[:, : obj.rank] = intmat.eye(obj.rank)
        return Morphism(presentation(total.rank, u @ total.matrix), obj, proj @ intmat.inverse_unimodular(u))


ABGROUP = AbGroupModel()
AbPresentation.model = ABGROUP


def format_matrix(mat) -> str:
    if mat.size == 0:
        return "[]"
    return "[" + "; ".join(" ".join(str(x) for x in row) for row in mat.tolist()) + "]"
