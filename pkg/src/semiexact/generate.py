"""Seeded random Lambek diagrams with exact rows and exact ``b``.

Two generators are available:

* ``canonical`` draws ``f`` and an exact ``b``, then sets ``a = id`` and
  ``f' = b f``.  Because ``Im f' = Im(bf)`` this always gives a trivial
  ``Im S``, which is a weak test of the machinery.
* ``extended`` (the default) keeps ``f'`` independent: ``Im f'`` is a
  random subobject containing ``Im(bf)``, and ``a`` is then any solution of
  ``f' a = b f``.  ``Im S`` is usually nontrivial.

In both, ``g = coker f``, ``g' = coker f'`` and ``c`` is induced on the
cokernel, so the rows are exact by construction.  Abelian-group diagrams
are redrawn until every matrix entry lies within ``ENTRY_BOUND`` and no
object needs more generators than the size bound.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import intmat
from .dsl import DiagramDoc, document
from .models import get_model
from .models import abgroup as ab
from .models import grp
from .models.base import Morphism
from .models.ptset import PtObject

DEFAULT_MAX_SIZE = {"ptset": 8, "abgroup": 3, "grp": 12}
# abgroup diagrams with a larger matrix entry are rejected and redrawn
ENTRY_BOUND = 3
GENERATORS = ("extended", "canonical")


@dataclass(frozen=True)
class RunConfig:
    command: str = "gen"
    seed: int = 0
    trials: int = 1
    max_size: Optional[int] = None
    format: str = "text"
    model: str = "ptset"
    generator: str = "extended"

    @property
    def size_bound(self) -> int:
        return self.max_size if self.max_size is not None else DEFAULT_MAX_SIZE[self.model]


def trial_rng(seed, *parts) -> random.Random:
    """Independent deterministic stream per (seed, label, ...) tuple."""
    return random.Random("/".join(str(p) for p in (seed,) + parts))


def generate_diagram(cfg: RunConfig, trial: int = 0) -> DiagramDoc:
    if cfg.generator not in GENERATORS:
        raise ValueError(f"unknown generator {cfg.generator!r}")
    rng = trial_rng(cfg.seed, cfg.model, cfg.generator, trial)
    model = get_model(cfg.model)
    n = cfg.size_bound
    build = {"ptset": _ptset, "abgroup": _abgroup, "grp": _grp}[cfg.model]
    while True:
        f, b, fp, a = build(model, rng, n, cfg.generator == "canonical")
        doc = _finish(model, f, b, fp, a)
        if cfg.model != "abgroup" or _within_bounds(doc, n):
            return doc


def _within_bounds(doc: DiagramDoc, rank: int) -> bool:
    return _max_entry(doc) <= ENTRY_BOUND and all(o.obj.rank <= rank for o in doc.objects)


def _max_entry(doc: DiagramDoc) -> int:
    mats = [m.morphism.data for m in doc.morphisms] + [o.obj.matrix for o in doc.objects]
    return max((abs(int(x)) for mat in mats for x in np.asarray(mat).flat), default=0)


def _finish(model, f, b, fp, a) -> DiagramDoc:
    g = model.cokernel(f) if not model.is_null(f) else model.identity(f.dst)
    gp = model.cokernel(fp) if not model.is_null(fp) else model.identity(fp.dst)
    c = model.descend(g, gp @ b)
    objects = [("A", f.src), ("B", f.dst), ("C", g.dst), ("A'", fp.src), ("B'", fp.dst), ("C'", gp.dst)]
    morphs = [
        ("f", "A", "B", f),
        ("g", "B", "C", g),
        ("f'", "A'", "B'", fp),
        ("g'", "B'", "C'", gp),
        ("a", "A", "A'", a),
        ("b", "B", "B'", b),
        ("c", "C", "C'", c),
    ]
    return document(model.name, objects, morphs)


# -- pointed sets -----------------------------------------------------------


def _ptset(model, rng, n, canonical):
    A = model.random_object(rng, n)
    B = model.random_object(rng, n)
    f = model.random_morphism(rng, A, B)
    b = model.random_exact_morphism(rng, B, n)
    if canonical:
        return f, b, b @ f, model.identity(A)

    bf = b @ f
    Bp = b.dst
    # a random pointed subset J of B' containing Im(bf)
    image = set(bf.data)
    J = sorted(image | {y for y in range(1, Bp.size) if rng.random() < 0.4})
    # A' surjects onto J; extra points of A' land anywhere in J
    size = rng.randint(len(J), max(len(J), n))
    labels = J + [rng.choice(J) for _ in range(size - len(J))]
    rest = labels[1:]
    rng.shuffle(rest)
    fp = Morphism(PtObject(size), Bp, tuple([0] + rest))
    fibres = {}
    for x, y in enumerate(fp.data):
        fibres.setdefault(y, []).append(x)
    a_table = [0] + [rng.choice(fibres[bf.data[x]]) for x in range(1, A.size)]
    return f, b, fp, Morphism(A, fp.src, tuple(a_table))


# -- abelian groups ---------------------------------------------------------


def _abgroup(model, rng, n, canonical):
    # one torsion prime per diagram, so that random maps are rarely forced to 0
    p = rng.choice((2, 3))
    factors = (0, p, p)

    def obj(size):
        return model.random_object(rng, size, factors=factors, min_rank=1)

    A = obj(n)
    B = obj(n)
    f = model.random_morphism(rng, A, B)
    if rng.random() < 0.5:
        # shrink Im f so that it misses part of B
        f = Morphism(A, B, p * f.data)
    Bp = obj(n)
    b = model.random_morphism(rng, B, Bp)
    if canonical:
        return f, b, b @ f, model.identity(A)

    # A' = A + A'', a = (id, k), f' = [bf - hk | h]
    extra = obj(n - A.rank)
    k = model.random_morphism(rng, A, extra)
    if rng.random() < 0.7:
        # route h through b so that Im f' meets Im b beyond Im(bf)
        h = b @ model.random_morphism(rng, extra, B)
    else:
        h = model.random_morphism(rng, extra, Bp)
    total = ab.direct_sum(A, extra)
    a_mat = np.vstack([intmat.eye(A.rank), k.data]).astype(object).reshape(total.rank, A.rank)
    fp_mat = intmat.hstack((b.data @ f.data) - h.data @ k.data, h.data)
    # disguise the generators of A'
    u = ab._unimodular(rng, total.rank)
    u_inv = intmat.inverse_unimodular(u)
    Ap = ab.presentation(total.rank, u @ total.matrix)
    a = Morphism(A, Ap, u @ a_mat)
    fp = Morphism(Ap, Bp, fp_mat @ u_inv)
    return f, b, fp, a


# -- finite groups ----------------------------------------------------------


def _grp(model, rng, n, canonical):
    A = model.random_object(rng, n)
    f = model.random_exact_morphism(rng, A, n)
    b = model.random_exact_morphism(rng, f.dst, n)
    bf = b @ f
    if canonical:
        return f, b, bf, model.identity(A)
    Bp = b.dst
    image = set(b.data)
    seeds = set(bf.data) | {
        y for y in range(1, Bp.order) if rng.random() < (0.3 if y in image else 0.05)
    }
    closure = grp.normal_closure(Bp, seeds)
    Ap, incl = grp.subgroup(Bp, closure)
    position = {y: i for i, y in enumerate(incl.data)}
    a = Morphism(A, Ap, tuple(position[y] for y in bf.data))
    return f, b, incl, a
