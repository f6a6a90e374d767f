"""Independent recomputation of Lambek invariants from the classical formulas.

For a diagram with verticals ``a, b, c`` and rows ``f, g`` / ``f', g'``::

    Im S  = (Im b  ∩  Im f') / Im(b f)
    Ker T = Ker(c g) / (Ker b · Ker g)

Everything here works on model payloads (tables, matrices) directly.  This
module never imports :mod:`semiexact.core`; agreement with the categorical
engine is therefore a real cross-check rather than a tautology.

Pointed sets quotient by collapsing to the basepoint and use the union as the
"product" of kernels.  Groups use normal closures where the classical
formula needs a normal subgroup; when the subgroup was not already normal the
report lists an anomaly.  Abelian groups use lattice arithmetic, and finite
ones are additionally enumerated element by element.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from . import intmat
from .errors import TooLarge, Unsupported
from .numtheory import invariants_from_order_counts

ENUMERATION_LIMIT = 10**4


@dataclass(frozen=True)
class OracleReport:
    model: str
    im_s_fingerprint: object
    ker_t_fingerprint: object
    method: str
    anomalies: tuple = ()
    agrees: Optional[bool] = None

    def against(self, im_s_fp, ker_t_fp) -> "OracleReport":
        """Copy with ``agrees`` set from the engine's fingerprints."""
        ok = im_s_fp == self.im_s_fingerprint and ker_t_fp == self.ker_t_fingerprint
        return replace(self, agrees=ok)

    @property
    def invariants_match(self) -> bool:
        """Im S and Ker T have the same fingerprint (the classical theorem)."""
        return self.im_s_fingerprint == self.ker_t_fingerprint


def lambek_oracle(diagram) -> OracleReport:
    name = diagram.f.model.name
    if name == "ptset":
        return _ptset_lambek(diagram)
    if name == "grp":
        return _grp_lambek(diagram)
    if name == "abgroup":
        return _ab_lambek(diagram)
    raise Unsupported(f"no oracle for model {name!r}")


def elementwise_kernel_cokernel(f):
    """Fingerprints of the literal preimage of zero and the literal quotient."""
    name = f.model.name
    if name == "ptset":
        table = f.data
        return sum(1 for y in table if y == 0), f.dst.size - len(set(table) - {0})
    if name == "grp":
        src, dst = f.src, f.dst
        ker = frozenset(x for x, y in enumerate(f.data) if y == 0)
        closure = _normal_closure(dst, set(f.data), _all(dst))
        return _quotient_fp(src, ker, frozenset({0})), _quotient_fp(dst, _all(dst), closure)
    if name == "abgroup":
        src, dst = _FiniteAb.of(f.src), _FiniteAb.of(f.dst)
        elems = src.elements()
        ker = [x for x in elems if dst.is_zero(_apply(f.data, x))]
        image = {dst.reduce(_apply(f.data, x)) for x in elems}
        return _ab_quotient_fp(src, ker, {src.zero}), _ab_quotient_fp(dst, dst.elements(), image)
    raise Unsupported(f"no oracle for model {name!r}")


# -- pointed sets -----------------------------------------------------------


def _ptset_lambek(d) -> OracleReport:
    f, g, fp, b, c = (m.data for m in (d.f, d.g, d.fp, d.b, d.c))
    anomalies = []
    inter = set(b) & set(fp)
    bf = {b[y] for y in f}
    if not bf <= inter:
        anomalies.append("Im(bf) not inside Im b ∩ Im f'")
    im_s = len(inter | bf) - len(bf) + 1

    ker_cg = {x for x in range(len(g)) if c[g[x]] == 0}
    prod = {x for x in range(len(g)) if b[x] == 0 or g[x] == 0}
    if not prod <= ker_cg:
        anomalies.append("Ker b ∪ Ker g not inside Ker(cg)")
    ker_t = len(ker_cg | prod) - len(prod) + 1
    return OracleReport("ptset", im_s, ker_t, "elementwise", tuple(anomalies))


# -- finite groups ----------------------------------------------------------


def _all(g):
    return frozenset(range(len(g.table)))


def _inverse(g, x):
    return g.table[x].index(0)


def _closure(g, gens) -> frozenset:
    t = g.table
    out = {0}
    todo = [0]
    gens = [x for x in set(gens) if x]
    while todo:
        x = todo.pop()
        for s in gens:
            y = t[x][s]
            if y not in out:
                out.add(y)
                todo.append(y)
    return frozenset(out)


def _conjugate(g, h, x):
    t = g.table
    return t[t[h][x]][_inverse(g, h)]


def _is_normal_in(g, sub, ambient) -> bool:
    return all(_conjugate(g, h, x) in sub for h in ambient for x in sub)


def _normal_closure(g, subset, ambient) -> frozenset:
    """Smallest subgroup containing ``subset`` and normal in ``ambient``."""
    current = _closure(g, subset)
    while True:
        bigger = _closure(g, {_conjugate(g, h, x) for h in ambient for x in current})
        if bigger == current:
            return current
        current = bigger


def _coset_order(g, x, k):
    t = g.table
    n, y = 1, x
    while y not in k:
        y = t[y][x]
        n += 1
    return n


def _quotient_fp(g, h, k):
    """Fingerprint of ``h / k`` for subgroups ``k`` normal in ``h`` of ``g``."""
    h, k = frozenset(h), frozenset(k)
    t = g.table
    orders = sorted(_coset_order(g, x, k) for x in _coset_reps(g, h, k))
    comms = {t[t[t[a][b]][_inverse(g, a)]][_inverse(g, b)] for a in h for b in h}
    dk = _closure(g, comms | k)
    ab_counts = Counter(_coset_order(g, x, dk) for x in _coset_reps(g, h, dk))
    return (len(h) // len(k), tuple(orders), invariants_from_order_counts(ab_counts))


def _coset_reps(g, h, k):
    seen, reps = set(), []
    for x in sorted(h):
        if x not in seen:
            reps.append(x)
            seen.update(g.table[x][n] for n in k)
    return reps


def _grp_lambek(d) -> OracleReport:
    f, g, fp, b, c = (m.data for m in (d.f, d.g, d.fp, d.b, d.c))
    gb, gbp = d.b.src, d.b.dst
    anomalies = []

    inter = frozenset(b) & frozenset(fp)
    bf = _closure(gbp, {b[y] for y in f})
    if not bf <= inter:
        anomalies.append("Im(bf) not inside Im b ∩ Im f'")
        inter = _closure(gbp, inter | bf)
    if not _is_normal_in(gbp, bf, inter):
        anomalies.append("Im(bf) not normal in Im b ∩ Im f'")
        bf = _normal_closure(gbp, bf, inter)
    im_s = _quotient_fp(gbp, inter, bf)

    ker_cg = frozenset(x for x in range(len(g)) if c[g[x]] == 0)
    prod = _closure(gb, {x for x in range(len(g)) if b[x] == 0 or g[x] == 0})
    if not _is_normal_in(gb, prod, ker_cg):
        anomalies.append("Ker b · Ker g not normal in Ker(cg)")
        prod = _normal_closure(gb, prod, ker_cg)
    ker_t = _quotient_fp(gb, ker_cg, prod)
    return OracleReport("grp", im_s, ker_t, "elementwise", tuple(anomalies))


# -- abelian groups ---------------------------------------------------------


def _apply(mat, x):
    if mat.size == 0:
        return (0,) * mat.shape[0]
    return tuple(int(v) for v in (mat @ np.array(x, dtype=object)).tolist())


class _FiniteAb:
    """Z^p / L(R) for full-rank R, elements as canonical reduced tuples."""

    def __init__(self, obj):
        self.rank = obj.rank
        self.rels = obj.matrix
        if self.rank == 0:
            self.diag = ()
            self.h = intmat.zeros(0, 0)
            return
        h, _ = intmat.hnf(self.rels) if self.rels.size else (intmat.zeros(self.rank, 0), None)
        if h.shape[1] < self.rank or any(h[i, i] == 0 for i in range(self.rank)):
            raise Unsupported("group is infinite; enumeration needs a finite group")
        self.h = h[:, : self.rank]
        self.diag = tuple(int(self.h[i, i]) for i in range(self.rank))

    @classmethod
    def of(cls, obj, limit=ENUMERATION_LIMIT):
        out = cls(obj)
        if out.order > limit:
            raise TooLarge(f"group of order {out.order} exceeds the enumeration limit {limit}")
        return out

    @property
    def order(self):
        n = 1
        for d in self.diag:
            n *= d
        return n

    @property
    def zero(self):
        return (0,) * self.rank

    def reduce(self, v):
        v = list(v)
        for i in range(self.rank):
            q = v[i] // self.diag[i]
            if q:
                for r in range(i, self.rank):
                    v[r] -= q * self.h[r, i]
        return tuple(v)

    def is_zero(self, v):
        return not any(self.reduce(v))

    def add(self, x, y):
        return self.reduce(tuple(a + b for a, b in zip(x, y)))

    def elements(self):
        return [self.reduce(v) for v in itertools.product(*(range(d) for d in self.diag))]

    def span(self, gens):
        gens = [self.reduce(v) for v in gens]
        out = {self.zero}
        todo = [self.zero]
        while todo:
            x = todo.pop()
            for s in gens:
                y = self.add(x, s)
                if y not in out:
                    out.add(y)
                    todo.append(y)
        return out


def _ab_quotient_fp(grp: _FiniteAb, h, k):
    h, k = set(h), set(k)
    counts = Counter()
    for x in h:
        n, y = 1, x
        while y not in k:
            y = grp.add(y, x)
            n += 1
        counts[n] += 1
    counts = Counter({o: c // len(k) for o, c in counts.items()})
    return invariants_from_order_counts(counts)


def _columns(mat):
    return [tuple(int(v) for v in mat[:, j].tolist()) for j in range(mat.shape[1])]


def _ab_enumerate(d):
    b, fp, f, g, c = (m.data for m in (d.b, d.fp, d.f, d.g, d.c))
    bp = _FiniteAb.of(d.b.dst)
    inter = bp.span(_columns(b)) & bp.span(_columns(fp))
    bf = bp.span(_columns(b @ f))
    im_s = _ab_quotient_fp(bp, inter, bf)

    bsrc = _FiniteAb.of(d.b.src)
    target_b = _Membership(d.b.dst)
    target_g = _Membership(d.g.dst)
    target_c = _Membership(d.c.dst)
    elems = bsrc.elements()
    ker_cg = {x for x in elems if target_c.contains(_apply(c @ g, x))}
    gens = [x for x in elems if target_b.contains(_apply(b, x)) or target_g.contains(_apply(g, x))]
    prod = bsrc.span(gens)
    ker_t = _ab_quotient_fp(bsrc, ker_cg, prod)
    return im_s, ker_t


class _Membership:
    def __init__(self, obj):
        self.rels = obj.matrix

    def contains(self, v):
        if self.rels.shape[0] == 0:
            return True
        if self.rels.size == 0:
            return not any(v)
        return intmat.lattice_solve(self.rels, v) is not None


def _lattice(*mats):
    rows = mats[0].shape[0]
    gens = intmat.hstack(*mats) if rows else intmat.zeros(0, 0)
    if gens.shape[1] == 0:
        return intmat.zeros(rows, 0)
    return intmat.lattice_basis(gens)


def _intersect(x, y):
    if x.shape[1] == 0 or y.shape[1] == 0:
        return intmat.zeros(x.shape[0], 0)
    null = intmat.nullspace(intmat.hstack(x, -y))
    return _lattice(x @ null[: x.shape[1], :])


def _preimage(mat, rels):
    """Lattice ``{x : mat x in L(rels)}``."""
    n = mat.shape[1]
    if mat.shape[0] == 0:
        return intmat.eye(n)
    null = intmat.nullspace(intmat.hstack(mat, rels))
    return _lattice(null[:n, :])


def _lattice_quotient(big, small):
    """Invariant factors of L(big) / L(small); ``small`` must lie inside ``big``."""
    k = big.shape[1]
    if small.shape[1] == 0:
        return (0,) * k
    coords = intmat.lattice_solve_many(big, small)
    if coords is None:
        raise ValueError("lattice is not a sublattice")
    factors = intmat.invariant_factors_of_relations(k, coords)
    return tuple(sorted(x for x in factors if x)) + tuple(x for x in factors if x == 0)


def _ab_lattice(d):
    b, fp, f, g, c = (m.data for m in (d.b, d.fp, d.f, d.g, d.c))
    r_bp = d.b.dst.matrix
    inter = _intersect(_lattice(b, r_bp), _lattice(fp, r_bp))
    bf = _lattice(b @ f, r_bp)
    im_s = _lattice_quotient(inter, bf)

    ker_cg = _preimage(c @ g, d.c.dst.matrix)
    prod = _lattice(_preimage(b, r_bp), _preimage(g, d.g.dst.matrix))
    ker_t = _lattice_quotient(ker_cg, prod)
    return im_s, ker_t


def _ab_lambek(d) -> OracleReport:
    im_s, ker_t = _ab_lattice(d)
    anomalies = []
    method = "lattice"
    try:
        enum = _ab_enumerate(d)
    except (TooLarge, Unsupported):
        pass
    else:
        method = "lattice+elementwise"
        if enum != (im_s, ker_t):
            anomalies.append(f"lattice {im_s}/{ker_t} vs enumeration {enum[0]}/{enum[1]}")
    return OracleReport("abgroup", im_s, ker_t, method, tuple(anomalies))
