"""Small constructors shared by the test modules."""

from semiexact import core
from semiexact.models import abgroup as ab
from semiexact.models import grp
from semiexact.models import ptset as pt

Z = ab.cyclic(0)


def zn(n):
    return ab.cyclic(n)


def mul(src, dst, k):
    """Multiplication by ``k`` between cyclic groups."""
    return ab.abmap(src, dst, [[k]])


def P(n):
    return pt.PtObject(n)


def pmap(src, dst, table):
    return pt.ptmap(P(src), P(dst), table)


def G(name):
    return grp.builtin_group(name)


def inclusion(group, elements):
    return grp.subgroup(group, elements)[1]


def sign(s3):
    c2 = G("C2")
    return grp.grphom(s3, c2, [0 if s3.element_order(x) != 2 else 1 for x in range(s3.order)])


def kernel_arrow(m):
    return core.KernelArrow(m)


def cokernel_arrow(m):
    return core.CokernelArrow(m)


from pathlib import Path  # noqa: E402

DIAGRAMS = Path(__file__).resolve().parent.parent / "diagrams"


def diagram_text(name):
    return (DIAGRAMS / name).read_text(encoding="utf-8")


def identity_diagram(model, obj):
    from semiexact.lambek import LambekDiagram

    i = model.identity(obj)
    return LambekDiagram(f=i, g=i, fp=i, gp=i, a=i, b=i, c=i)
