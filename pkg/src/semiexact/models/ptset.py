"""Pointed finite sets.

An object of size ``n`` is ``{0, ..., n-1}`` with basepoint 0; a morphism is
a table of images with ``table[0] == 0``.  Null morphisms are the all-zero
tables, i.e. those factoring through the one-point set.  Kernels and
cokernels are renumbered order-preservingly with the basepoint first, which
makes them deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import ClassVar

from ..errors import InvalidPayload
from .base import Model, Morphism


@dataclass(frozen=True)
class PtObject:
    size: int
    model: ClassVar["PtSetModel"]

    def __post_init__(self):
        if self.size < 1:
            raise InvalidPayload(f"pointed set needs size >= 1, got {self.size}")

    def __repr__(self):
        return f"Pt({self.size})"


def ptmap(src, dst, table) -> Morphism:
    """Validated constructor for a pointed map."""
    if isinstance(src, int):
        src = PtObject(src)
    if isinstance(dst, int):
        dst = PtObject(dst)
    table = tuple(int(x) for x in table)
    if len(table) != src.size:
        raise InvalidPayload(f"table has {len(table)} entries, source has size {src.size}")
    if table[0] != 0:
        raise InvalidPayload("basepoint must map to basepoint")
    if any(not 0 <= x < dst.size for x in table):
        raise InvalidPayload(f"table entry out of range for target of size {dst.size}")
    return Morphism(src, dst, table)


def _renumber_inclusion(elements, dst):
    return Morphism(PtObject(len(elements)), dst, tuple(elements))


class PtSetModel(Model):
    name = "ptset"
    ex2 = True
    homological = True

    def identity(self, obj):
        return Morphism(obj, obj, tuple(range(obj.size)))

    def compose(self, g, f):
        gt = g.data
        return Morphism(f.src, g.dst, tuple(gt[i] for i in f.data))

    def equal(self, f, g):
        return f.data == g.data

    def is_null(self, f):
        return not any(f.data)

    def kernel(self, f):
        return _renumber_inclusion([i for i, y in enumerate(f.data) if y == 0], f.src)

    def cokernel(self, f):
        image = set(f.data)
        table, nxt = [], 1
        for y in range(f.dst.size):
            if y in image:
                table.append(0)
            else:
                table.append(nxt)
                nxt += 1
        return Morphism(f.dst, PtObject(nxt), tuple(table))

    def lift(self, k, x):
        inverse = {y: i for i, y in enumerate(k.data)}
        return Morphism(x.src, k.src, tuple(inverse[y] for y in x.data))

    def descend(self, c, y):
        table = [0] * c.dst.size
        for i, q in enumerate(c.data):
            table[q] = y.data[i]
        return Morphism(c.dst, y.dst, tuple(table))

    def is_iso(self, f):
        return f.src.size == f.dst.size and len(set(f.data)) == f.src.size

    def zero_object(self):
        return PtObject(1)

    def is_zero_object(self, obj):
        return obj.size == 1

    def null_morphism(self, src, dst):
        return Morphism(src, dst, (0,) * src.size)

    def fingerprint(self, obj):
        return obj.size

    def format_data(self, f):
        return "[" + " ".join(map(str, f.data)) + "]"

    # -- random generation ------------------------------------------------

    def random_object(self, rng, max_size):
        return PtObject(rng.randint(1, max_size))

    def random_morphism(self, rng, src, dst):
        return Morphism(src, dst, (0,) + tuple(rng.randrange(dst.size) for _ in range(src.size - 1)))

    def random_exact_morphism(self, rng, src, max_size):
        """Random map that is injective off its kernel (the exact maps here)."""
        rest = [i for i in range(1, src.size) if rng.random() < 0.6]
        size = rng.randint(len(rest) + 1, max(len(rest) + 1, max_size))
        targets = rng.sample(range(1, size), len(rest))
        table = [0] * src.size
        for i, y in zip(rest, targets):
            table[i] = y
        return Morphism(src, PtObject(size), tuple(table))

    def random_injection(self, rng, src, max_size):
        size = rng.randint(src.size, max(src.size, max_size))
        targets = rng.sample(range(1, size), src.size - 1)
        return Morphism(src, PtObject(size), (0,) + tuple(targets))

    def random_kernel_from(self, rng, obj, max_size):
        return self.random_injection(rng, obj, max_size)

    def random_cokernel_onto(self, rng, obj, max_size):
        extra = rng.randint(0, max(0, max_size - obj.size))
        size = obj.size + extra
        # basepoint stays at 0; the other positions get a shuffled mix of the
        # extra (collapsed) elements and an order-free copy of obj's points
        labels = [0] * extra + list(range(1, obj.size))
        rng.shuffle(labels)
        return Morphism(PtObject(size), obj, (0,) + tuple(labels))


PTSET = PtSetModel()
PtObject.model = PTSET


def is_exact_elementwise(f) -> bool:
    """Independent check: injective on the complement of the kernel."""
    seen = set()
    for y in f.data:
        if y == 0:
            continue
        if y in seen:
            return False
        seen.add(y)
    return True
