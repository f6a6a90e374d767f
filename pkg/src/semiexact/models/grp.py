"""Finite groups as Cayley tables, with homomorphisms as element-image tables.

Element 0 is always the identity.  The null ideal is the trivial
homomorphisms; the kernel of ``f`` is the preimage of the identity and the
cokernel is the quotient by the *normal closure* of the image.  This category
is semiexact but not ex2: a composite of two kernel inclusions need not be a
kernel, and a homomorphism is exact exactly when its image is normal.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import ClassVar

from ..errors import InvalidPayload, NotNormal, UnknownGroup
from ..numtheory import invariants_from_order_counts
from .base import Model, Morphism


@dataclass(frozen=True)
class CayleyGroup:
    """A finite group; ``table[i][j]`` is the index of ``i * j``.

    ``name`` and ``labels`` are presentation only and do not take part in
    equality.
    """

    table: tuple
    name: str = field(default=None, compare=False)
    labels: tuple = field(default=None, compare=False, repr=False)
    model: ClassVar["GrpModel"]

    def __post_init__(self):
        validate_table(self.table)

    @property
    def order(self) -> int:
        return len(self.table)

    def mul(self, x, y):
        return self.table[x][y]

    @property
    def inverses(self):
        return _inverses(self.table)

    def inv(self, x):
        return _inverses(self.table)[x]

    def conj(self, g, x):
        """g x g^-1"""
        return self.table[self.table[g][x]][self.inv(g)]

    def element_order(self, x):
        return _element_orders(self.table)[x]

    def is_abelian(self):
        t = self.table
        return all(t[i][j] == t[j][i] for i in range(len(t)) for j in range(i))

    def label(self, x):
        return self.labels[x] if self.labels else str(x)

    def index_of(self, label):
        return self.labels.index(label)

    def __repr__(self):
        return f"Grp({self.name or 'order ' + str(self.order)})"


def validate_table(table):
    n = len(table)
    if n < 1:
        raise InvalidPayload("a group needs at least one element")
    if any(len(row) != n for row in table):
        raise InvalidPayload("Cayley table must be square")
    if any(not 0 <= x < n for row in table for x in row):
        raise InvalidPayload("Cayley table entry out of range")
    if any(table[0][x] != x or table[x][0] != x for x in range(n)):
        raise InvalidPayload("element 0 must be the identity")
    if any(0 not in row for row in table):
        raise InvalidPayload("element without inverse")
    for row in table:
        if len(set(row)) != n:
            raise InvalidPayload("Cayley table rows must be permutations")
    for a in range(n):
        ta = table[a]
        for b in range(n):
            tab = table[ta[b]]
            tb = table[b]
            for c in range(n):
                if tab[c] != ta[tb[c]]:
                    raise InvalidPayload("multiplication is not associative")


@lru_cache(maxsize=None)
def _inverses(table):
    return tuple(row.index(0) for row in table)


@lru_cache(maxsize=None)
def _element_orders(table):
    out = []
    for x in range(len(table)):
        k, y = 1, x
        while y != 0:
            y = table[y][x]
            k += 1
        out.append(k)
    return tuple(out)


def generated_subgroup(g: CayleyGroup, gens) -> frozenset:
    """Closure of ``gens`` under multiplication (finite, so a subgroup)."""
    gens = [x for x in set(gens) if x != 0]
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = g.table[x][s]
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(seen)


def normal_closure(g: CayleyGroup, subset) -> frozenset:
    """Smallest normal subgroup containing ``subset``."""
    conjugates = {g.conj(h, x) for x in subset for h in range(g.order)}
    return generated_subgroup(g, conjugates)


def is_normal(g: CayleyGroup, subset) -> bool:
    subset = frozenset(subset)
    return all(g.conj(h, x) in subset for x in subset for h in range(g.order))


def subgroup(g: CayleyGroup, elements, name=None):
    """``(H, inclusion)`` for a subgroup given as an element set of ``g``."""
    elems = sorted(set(elements))
    if elems[0] != 0:
        raise InvalidPayload("subgroup must contain the identity")
    index = {x: i for i, x in enumerate(elems)}
    try:
        table = tuple(tuple(index[g.table[x][y]] for y in elems) for x in elems)
    except KeyError:
        raise InvalidPayload("element set is not closed under multiplication") from None
    labels = tuple(g.label(x) for x in elems) if g.labels else None
    h = CayleyGroup(table, name=name, labels=labels)
    return h, Morphism(h, g, tuple(elems))


def quotient_group(g: CayleyGroup, normal):
    """``(G/N, projection)``; cosets are ordered by their minimal element."""
    normal = frozenset(normal)
    if 0 not in normal or not is_normal(g, normal):
        raise NotNormal("quotient requires a normal subgroup")
    coset_of = [-1] * g.order
    reps = []
    for x in range(g.order):
        if coset_of[x] < 0:
            k = len(reps)
            reps.append(x)
            for n in normal:
                coset_of[g.table[x][n]] = k
    table = tuple(tuple(coset_of[g.table[a][b]] for b in reps) for a in reps)
    labels = tuple(g.label(r) + "N" for r in reps) if g.labels and len(normal) > 1 else g.labels
    q = CayleyGroup(table, labels=labels)
    return q, Morphism(g, q, tuple(coset_of))


def grphom(src: CayleyGroup, dst: CayleyGroup, table) -> Morphism:
    table = tuple(int(x) for x in table)
    if len(table) != src.order:
        raise InvalidPayload(f"hom table has {len(table)} entries, source has order {src.order}")
    if any(not 0 <= y < dst.order for y in table):
        raise InvalidPayload("hom table entry out of range")
    for x in range(src.order):
        for y in range(src.order):
            if table[src.table[x][y]] != dst.table[table[x]][table[y]]:
                raise InvalidPayload("table is not a homomorphism")
    return Morphism(src, dst, table)


def image(f: Morphism) -> frozenset:
    return frozenset(f.data)


def commutator_subgroup(g: CayleyGroup) -> frozenset:
    t, inv = g.table, g.inverses
    comms = {t[t[t[a][b]][inv[a]]][inv[b]] for a in range(g.order) for b in range(g.order)}
    return generated_subgroup(g, comms)


def abelian_invariants(g: CayleyGroup):
    """Invariant factors of the abelianization G/[G, G]."""
    q, _ = quotient_group(g, commutator_subgroup(g))
    return invariants_from_order_counts(Counter(_element_orders(q.table)))


def group_fingerprint(g: CayleyGroup):
    """(order, sorted element orders, abelianization) -- an incomplete iso invariant."""
    return (g.order, tuple(sorted(_element_orders(g.table))), abelian_invariants(g))


# -- homomorphism enumeration ----------------------------------------------


@lru_cache(maxsize=None)
def _generators(table):
    g_order = len(table)
    gens, span = [], {0}
    fake = _TableView(table)
    for x in range(g_order):
        if x not in span:
            gens.append(x)
            span = generated_subgroup(fake, gens)
    # BFS tree: every element as parent * generator
    parent = {0: None}
    order = [0]
    for x in order:
        for k, s in enumerate(gens):
            y = table[x][s]
            if y not in parent:
                parent[y] = (x, k)
                order.append(y)
    return tuple(gens), tuple(order), parent


class _TableView:
    def __init__(self, table):
        self.table = table


@lru_cache(maxsize=None)
def _all_homs(src_table, dst_table):
    gens, bfs, parent = _generators(src_table)
    src_orders = _element_orders(src_table)
    dst_orders = _element_orders(dst_table)
    candidates = [
        [y for y in range(len(dst_table)) if src_orders[s] % dst_orders[y] == 0] for s in gens
    ]
    homs = []
    for images in itertools.product(*candidates):
        phi = [0] * len(src_table)
        for x in bfs[1:]:
            p, k = parent[x]
            phi[x] = dst_table[phi[p]][images[k]]
        if all(
            phi[src_table[x][s]] == dst_table[phi[x]][images[k]]
            for x in range(len(src_table))
            for k, s in enumerate(gens)
        ):
            homs.append(tuple(phi))
    return tuple(homs)


def homomorphisms(src: CayleyGroup, dst: CayleyGroup):
    """All homomorphisms ``src -> dst`` (trivial one first)."""
    return [Morphism(src, dst, t) for t in sorted(_all_homs(src.table, dst.table))]


def is_isomorphic(g: CayleyGroup, h: CayleyGroup) -> bool:
    """Exact isomorphism test by homomorphism search (small groups only)."""
    if g.order != h.order or group_fingerprint(g) != group_fingerprint(h):
        return False
    return any(len(set(t)) == g.order for t in _all_homs(g.table, h.table))


# -- catalog ---------------------------------------------------------------


def _perm_mul(p, q):
    # (p * q)(i) = p(q(i)): apply q first
    return tuple(p[i] for i in q)


def _cycle_label(p):
    seen, cycles = set(), []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        cyc, j = [], i
        while j not in seen:
            seen.add(j)
            cyc.append(str(j + 1))
            j = p[j]
        cycles.append("(" + "".join(cyc) + ")")
    return "".join(cycles) or "e"


def _from_perms(perms, name):
    perms = sorted(perms)
    index = {p: i for i, p in enumerate(perms)}
    table = tuple(tuple(index[_perm_mul(p, q)] for q in perms) for p in perms)
    return CayleyGroup(table, name=name, labels=tuple(_cycle_label(p) for p in perms))


def _perm_closure(gens):
    n = len(gens[0])
    ident = tuple(range(n))
    elems, frontier = {ident}, [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = _perm_mul(x, s)
                if y not in elems:
                    elems.add(y)
                    nxt.append(y)
        frontier = nxt
    return elems


def _even(p):
    inversions = sum(1 for i in range(len(p)) for j in range(i) if p[j] > p[i])
    return inversions % 2 == 0


def _cyclic(n):
    return CayleyGroup(tuple(tuple((i + j) % n for j in range(n)) for i in range(n)), name=f"C{n}")


def _quaternion():
    # units 1, -1, i, -i, j, -j, k, -k as (sign, unit) with unit in 1, i, j, k
    units = [(s, u) for u in range(4) for s in (1, -1)]
    # unit products: table[u][v] = (sign, unit)
    prod = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }
    index = {x: i for i, x in enumerate(units)}

    def mul(a, b):
        s, u = prod[(a[1], b[1])]
        return (a[0] * b[0] * s, u)

    table = tuple(tuple(index[mul(a, b)] for b in units) for a in units)
    names = ["1", "i", "j", "k"]
    labels = tuple(("" if s > 0 else "-") + names[u] for s, u in units)
    return CayleyGroup(table, name="Q8", labels=labels)


def _build(name):
    if name[0] == "C" and name[1:].isdigit() and 1 <= int(name[1:]) <= 8:
        return _cyclic(int(name[1:]))
    if name == "V4":
        return _from_perms(_perm_closure([(1, 0, 3, 2), (2, 3, 0, 1)]), "V4")
    if name == "S3":
        return _from_perms(itertools.permutations(range(3)), "S3")
    if name == "D4":
        return _from_perms(_perm_closure([(1, 2, 3, 0), (0, 3, 2, 1)]), "D4")
    if name == "Q8":
        return _quaternion()
    if name == "A4":
        return _from_perms([p for p in itertools.permutations(range(4)) if _even(p)], "A4")
    raise UnknownGroup(name)


CATALOG = tuple([f"C{n}" for n in range(1, 9)] + ["V4", "S3", "D4", "Q8", "A4"])


@lru_cache(maxsize=None)
def builtin_group(name: str) -> CayleyGroup:
    """Catalog group by name: C1..C8, V4, S3, D4, Q8, A4."""
    return _build(name)


def direct_product(g: CayleyGroup, h: CayleyGroup) -> CayleyGroup:
    n = h.order
    table = tuple(
        tuple(g.table[a // n][b // n] * n + h.table[a % n][b % n] for b in range(g.order * n))
        for a in range(g.order * n)
    )
    return CayleyGroup(table)


class GrpModel(Model):
    name = "grp"
    ex2 = False
    homological = False

    def identity(self, obj):
        return Morphism(obj, obj, tuple(range(obj.order)))

    def compose(self, g, f):
        gt = g.data
        return Morphism(f.src, g.dst, tuple(gt[x] for x in f.data))

    def equal(self, f, g):
        return f.data == g.data

    def is_null(self, f):
        return not any(f.data)

    def kernel(self, f):
        _, incl = subgroup(f.src, [x for x, y in enumerate(f.data) if y == 0])
        return incl

    def cokernel(self, f):
        _, proj = quotient_group(f.dst, normal_closure(f.dst, image(f)))
        return proj

    def lift(self, k, x):
        inverse = {y: i for i, y in enumerate(k.data)}
        return Morphism(x.src, k.src, tuple(inverse[y] for y in x.data))

    def descend(self, c, y):
        table = [0] * c.dst.order
        for i, q in enumerate(c.data):
            table[q] = y.data[i]
        return Morphism(c.dst, y.dst, tuple(table))

    def is_iso(self, f):
        return f.src.order == f.dst.order and len(set(f.data)) == f.src.order

    def zero_object(self):
        return builtin_group("C1")

    def is_zero_object(self, obj):
        return obj.order == 1

    def null_morphism(self, src, dst):
        return Morphism(src, dst, (0,) * src.order)

    def fingerprint(self, obj):
        return group_fingerprint(obj)

    def format_fingerprint(self, fp):
        order, orders, ab = fp
        ab_text = ",".join(map(str, ab)) if ab else "1"
        return f"order={order};orders={','.join(map(str, orders))};ab={ab_text}"

    def format_data(self, f):
        return "[" + " ".join(map(str, f.data)) + "]"

    # -- random generation ------------------------------------------------

    def _groups_upto(self, max_size):
        return [builtin_group(n) for n in CATALOG if builtin_group(n).order <= max_size]

    def random_object(self, rng, max_size=12):
        return rng.choice(self._groups_upto(max(1, max_size)))

    def random_morphism(self, rng, src, dst):
        homs = _all_homs(src.table, dst.table)
        nontrivial = [h for h in homs if any(h)]
        pool = nontrivial if nontrivial and rng.random() < 0.8 else homs
        return Morphism(src, dst, rng.choice(sorted(pool)))

    def random_exact_morphism(self, rng, src, max_size=12):
        dst = self.random_object(rng, max_size)
        homs = [h for h in _all_homs(src.table, dst.table) if is_normal(dst, h)]
        nontrivial = [h for h in homs if any(h)]
        pool = nontrivial if nontrivial and rng.random() < 0.8 else homs
        return Morphism(src, dst, rng.choice(sorted(pool)))

    def _factor_for(self, rng, obj, max_size):
        options = [w for w in self._groups_upto(max_size // obj.order) if w.order > 1]
        if not options or rng.random() < 0.25:
            return builtin_group("C1")
        return rng.choice(options)

    def random_kernel_from(self, rng, obj, max_size=12):
        w = self._factor_for(rng, obj, max_size)
        prod = direct_product(obj, w)
        return Morphism(obj, prod, tuple(x * w.order for x in range(obj.order)))

    def random_cokernel_onto(self, rng, obj, max_size=12):
        w = self._factor_for(rng, obj, max_size)
        prod = direct_product(obj, w)
        return Morphism(prod, obj, tuple(x // w.order for x in range(prod.order)))


GRP = GrpModel()
CayleyGroup.model = GRP
