"""Model-agnostic constructions for semiexact and homological categories.

Everything here is written against the primitive contract of
:class:`semiexact.models.base.Model` and nothing else, so the same code runs
in every model.  Subobjects and quotients are compared by mutual
factorization, never by payload.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import CompositionMismatch, PreconditionFailed
from .models.base import Morphism


@dataclass(frozen=True, eq=False)
class KernelArrow:
    """``arrow`` is a kernel of ``of``."""

    arrow: Morphism
    of: Optional[Morphism] = None

    @property
    def src(self):
        return self.arrow.src

    @property
    def dst(self):
        return self.arrow.dst


@dataclass(frozen=True, eq=False)
class CokernelArrow:
    """``arrow`` is a cokernel of ``of``."""

    arrow: Morphism
    of: Optional[Morphism] = None

    @property
    def src(self):
        return self.arrow.src

    @property
    def dst(self):
        return self.arrow.dst


@dataclass(frozen=True, eq=False)
class NormalDecomposition:
    """``f == im.arrow @ middle @ coim.arrow``; exact iff ``middle`` is iso."""

    coim: CokernelArrow
    middle: Morphism
    im: KernelArrow
    exact: bool

    def imfactor(self) -> Morphism:
        """``src f -> Im f``, the part of ``f`` before the image inclusion."""
        return self.middle @ self.coim.arrow

    def coimfactor(self) -> Morphism:
        """``Coim f -> dst f``."""
        return self.im.arrow @ self.middle


@dataclass(frozen=True)
class MorphismClassification:
    is_null: bool
    is_n_mono: bool
    is_n_epi: bool
    is_exact: bool
    is_kernel: bool
    is_cokernel: bool
    is_iso: bool


@dataclass(frozen=True, eq=False)
class Square:
    """``right @ top == bottom @ left``."""

    top: Morphism
    left: Morphism
    right: Morphism
    bottom: Morphism

    def commutes(self) -> bool:
        return _composable(self.right, self.top) and _composable(self.bottom, self.left) and (
            self.right @ self.top == self.bottom @ self.left
        )


@dataclass(frozen=True)
class PositionReport:
    index: int
    order_two: bool
    exact: bool


@dataclass(frozen=True, eq=False)
class SixTermSequence:
    """Ker f -> Ker gf -> Ker g -> Coker f -> Coker gf -> Coker g."""

    phi: Morphism
    psi: Morphism
    chi: Morphism
    epsilon: Morphism
    omega: Morphism
    order_two: bool
    exact_at: dict
    phi_exact: bool
    psi_exact: bool
    epsilon_exact: bool
    omega_exact: bool

    POSITIONS = ("ker_f", "ker_gf", "ker_g", "coker_f", "coker_gf", "coker_g")

    @property
    def morphisms(self):
        return (self.phi, self.psi, self.chi, self.epsilon, self.omega)


@dataclass(frozen=True, eq=False)
class HomologyTriple:
    pi: CokernelArrow
    iota: KernelArrow
    h: object


def _arrow(x) -> Morphism:
    return x.arrow if isinstance(x, (KernelArrow, CokernelArrow)) else x


def _composable(g, f):
    return f.dst == g.src


def _model(f):
    return f.src.model


def is_null(f: Morphism) -> bool:
    return _model(f).is_null(f)


def identity(obj) -> Morphism:
    return obj.model.identity(obj)


def kernel(f: Morphism) -> KernelArrow:
    m = _model(f)
    if m.is_null(f):
        return KernelArrow(m.identity(f.src), f)
    return KernelArrow(m.kernel(f), f)


def cokernel(f: Morphism) -> CokernelArrow:
    m = _model(f)
    if m.is_null(f):
        return CokernelArrow(m.identity(f.dst), f)
    return CokernelArrow(m.cokernel(f), f)


def factor_through(k: KernelArrow, x: Morphism) -> Morphism:
    """The unique ``u`` with ``k.arrow @ u == x``."""
    k_arrow = _arrow(k)
    if x.dst != k_arrow.dst:
        raise PreconditionFailed("factor_through: codomains differ")
    if not is_null(cokernel(k_arrow).arrow @ x):
        raise PreconditionFailed("factor_through: morphism does not land in the subobject")
    return _model(x).lift(k_arrow, x)


def factor_through_cokernel(c: CokernelArrow, y: Morphism) -> Morphism:
    """The unique ``u`` with ``u @ c.arrow == y``."""
    c_arrow = _arrow(c)
    if y.src != c_arrow.src:
        raise PreconditionFailed("factor_through_cokernel: domains differ")
    if not is_null(y @ kernel(c_arrow).arrow):
        raise PreconditionFailed("factor_through_cokernel: morphism does not kill the kernel")
    return _model(y).descend(c_arrow, y)


def _factors_through(x, k) -> bool:
    return x.dst == k.dst and is_null(cokernel(k).arrow @ x)


def _cofactors_through(y, c) -> bool:
    return y.src == c.src and is_null(y @ kernel(c).arrow)


def subobject_equal(k1, k2) -> bool:
    """Same subobject: each kernel arrow factors through the other."""
    a, b = _arrow(k1), _arrow(k2)
    return _factors_through(a, b) and _factors_through(b, a)


def quotient_equal(c1, c2) -> bool:
    a, b = _arrow(c1), _arrow(c2)
    return _cofactors_through(a, b) and _cofactors_through(b, a)


def normal_decomposition(f: Morphism) -> NormalDecomposition:
    coim = cokernel(kernel(f).arrow)
    im = kernel(cokernel(f).arrow)
    through_im = factor_through(im, f)
    middle = factor_through_cokernel(coim, through_im)
    return NormalDecomposition(coim, middle, im, _model(f).is_iso(middle))


def classify(f: Morphism) -> MorphismClassification:
    n_mono = is_null(kernel(f).arrow)
    n_epi = is_null(cokernel(f).arrow)
    exact = normal_decomposition(f).exact
    return MorphismClassification(
        is_null=is_null(f),
        is_n_mono=n_mono,
        is_n_epi=n_epi,
        is_exact=exact,
        is_kernel=n_mono and exact,
        is_cokernel=n_epi and exact,
        is_iso=_model(f).is_iso(f),
    )


def is_exact(f: Morphism) -> bool:
    return normal_decomposition(f).exact


def inverse(f: Morphism) -> Morphism:
    if not _model(f).is_iso(f):
        raise PreconditionFailed("inverse: morphism is not an isomorphism")
    return _model(f).lift(f, identity(f.dst))


def pullback_of_kernel(beta: KernelArrow, f: Morphism):
    """Pull the kernel ``beta`` back along ``f``.

    Returns ``(k, f2)`` with ``k = ker(coker(beta) @ f)`` and
    ``beta @ f2 == f @ k``.
    """
    b = _arrow(beta)
    if f.dst != b.dst:
        raise PreconditionFailed("pullback_of_kernel: f must end where beta does")
    k = kernel(cokernel(b).arrow @ f)
    f2 = factor_through(KernelArrow(b), f @ k.arrow)
    return k, f2


def pushout_of_cokernel(alpha: CokernelArrow, g: Morphism):
    """Push the cokernel ``alpha`` out along ``g``.

    Returns ``(c, g2)`` with ``c = coker(g @ ker(alpha))`` and
    ``g2 @ alpha == c @ g``.
    """
    a = _arrow(alpha)
    if g.src != a.src:
        raise PreconditionFailed("pushout_of_cokernel: g must start where alpha does")
    c = cokernel(g @ kernel(a).arrow)
    g2 = factor_through_cokernel(CokernelArrow(a), c.arrow @ g)
    return c, g2


def induced_boundary_morphisms(sq: Square):
    """Morphisms between the kernels and cokernels of the horizontal arrows.

    For the square with horizontal ``top`` and ``bottom``, returns
    ``(g_hat, f_hat)`` where ``ker(bottom) @ g_hat == left @ ker(top)`` and
    ``f_hat @ coker(top) == coker(bottom) @ right``.
    """
    ker_top, ker_bottom = kernel(sq.top), kernel(sq.bottom)
    coker_top, coker_bottom = cokernel(sq.top), cokernel(sq.bottom)
    g_hat = factor_through(ker_bottom, sq.left @ ker_top.arrow)
    f_hat = factor_through_cokernel(coker_top, coker_bottom.arrow @ sq.right)
    return g_hat, f_hat


def _exact_at(incoming: Morphism, outgoing: Morphism) -> bool:
    """im(incoming) == ker(outgoing) as subobjects."""
    if not is_null(outgoing @ incoming):
        return False
    return subobject_equal(kernel(cokernel(incoming).arrow), kernel(outgoing))


def sequence_report(ms) -> list:
    """Order-two and exactness flags at each inner object of a sequence."""
    ms = list(ms)
    for i in range(len(ms) - 1):
        if not _composable(ms[i + 1], ms[i]):
            raise CompositionMismatch(f"morphisms {i} and {i + 1} are not composable")
    out = []
    for i in range(len(ms) - 1):
        f, g = ms[i], ms[i + 1]
        order_two = is_null(g @ f)
        out.append(PositionReport(i + 1, order_two, order_two and _exact_at(f, g)))
    return out


def composition_sequence(f: Morphism, g: Morphism) -> SixTermSequence:
    if not _composable(g, f):
        raise CompositionMismatch("composition_sequence: g cannot follow f")
    gf = g @ f
    ker_f, ker_g, ker_gf = kernel(f), kernel(g), kernel(gf)
    cok_f, cok_g, cok_gf = cokernel(f), cokernel(g), cokernel(gf)

    phi = factor_through(ker_gf, ker_f.arrow)
    psi = factor_through(ker_g, f @ ker_gf.arrow)
    chi = cok_f.arrow @ ker_g.arrow
    epsilon = factor_through_cokernel(cok_f, cok_gf.arrow @ g)
    omega = factor_through_cokernel(cok_gf, cok_g.arrow)

    seq = (phi, psi, chi, epsilon, omega)
    inner = sequence_report(seq)
    exact_at = {
        "ker_f": is_null(kernel(phi).arrow),
        "ker_gf": inner[0].exact,
        "ker_g": inner[1].exact,
        "coker_f": inner[2].exact,
        "coker_gf": inner[3].exact,
        "coker_g": is_null(cokernel(omega).arrow),
    }
    return SixTermSequence(
        phi, psi, chi, epsilon, omega,
        order_two=all(p.order_two for p in inner),
        exact_at=exact_at,
        phi_exact=is_exact(phi),
        psi_exact=is_exact(psi),
        epsilon_exact=is_exact(epsilon),
        omega_exact=is_exact(omega),
    )


def homology_object(i, q) -> HomologyTriple:
    """Subquotient of a kernel ``i`` and a cokernel ``q`` of a common object.

    The middle isomorphism of ``q @ i`` is absorbed into ``pi`` so that
    ``iota.arrow @ pi.arrow == q @ i`` on the nose.
    """
    i_arrow, q_arrow = _arrow(i), _arrow(q)
    if i_arrow.dst != q_arrow.src:
        raise PreconditionFailed("homology_object: i must end where q starts")
    if not is_null(cokernel(i_arrow).arrow @ kernel(q_arrow).arrow):
        raise PreconditionFailed("homology_object: (coker i)(ker q) is not null")
    nd = normal_decomposition(q_arrow @ i_arrow)
    if not nd.exact:
        raise PreconditionFailed("homology_object: q i is not exact")
    pi = CokernelArrow(nd.middle @ nd.coim.arrow, nd.coim.of)
    return HomologyTriple(pi, nd.im, nd.im.src)
