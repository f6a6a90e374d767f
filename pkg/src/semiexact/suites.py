"""Seeded property suites for the lemmas and axioms of semiexact categories.

Each property draws a random instance from a model, evaluates its
antecedent and, when that holds, its conclusion.  A run records how many
trials were *vacuous* (antecedent false) so a suite that never exercises its
conclusion is visible in the report.

Properties carry the set of models in which they are asserted.  Running a
property outside that set is allowed; the outcome is then an observation,
not a test (the grp model is semiexact only).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from . import core
from .core import CokernelArrow, KernelArrow, Square
from .errors import PreconditionFailed
from .generate import DEFAULT_MAX_SIZE, trial_rng
from .models import get_model
from .models import grp as grp_model

ALL = frozenset({"ptset", "abgroup", "grp"})
EX2 = frozenset({"ptset", "abgroup"})

OK = "ok"
VACUOUS = "vacuous"


class Failure(Exception):
    """Raised inside a property body when a predicted fact does not hold."""


def expect(cond, message):
    if not cond:
        raise Failure(message)


@dataclass(frozen=True)
class Property:
    name: str
    statement: str
    models: frozenset
    body: Callable
    # statements about elements of one particular model cannot run elsewhere
    generic: bool = True


@dataclass
class PropertyResult:
    name: str
    model: str
    trials: int
    asserted: bool
    vacuous: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    @property
    def exercised(self) -> int:
        return self.trials - self.vacuous - len(self.failures)


REGISTRY: dict = {}


def prop(name, statement, models=ALL, generic=True):
    def deco(fn):
        REGISTRY[name] = Property(name, statement, frozenset(models), fn, generic)
        return fn

    return deco


# -- random instance helpers -------------------------------------------------


def _obj(m, rng, n):
    return m.random_object(rng, n)


def _morph_from(m, rng, src, n):
    return m.random_morphism(rng, src, _obj(m, rng, n))


def _morph_into(m, rng, dst, n):
    return m.random_morphism(rng, _obj(m, rng, n), dst)


def _some_morphism(m, rng, n):
    """A random morphism, biased toward kernels, cokernels and exact maps."""
    r = rng.random()
    x = _obj(m, rng, n)
    if r < 0.15:
        return m.random_kernel_from(rng, x, n)
    if r < 0.3:
        return m.random_cokernel_onto(rng, x, n)
    if r < 0.5:
        return m.random_exact_morphism(rng, x, n)
    return _morph_from(m, rng, x, n)


def _random_kernel_into(m, rng, y, n):
    """Kernel arrow with codomain ``y``."""
    if rng.random() < 0.2:
        return core.kernel(m.null_morphism(y, _obj(m, rng, n)))
    return core.kernel(_morph_from(m, rng, y, n))


def _random_cokernel_from(m, rng, x, n):
    if rng.random() < 0.2:
        return core.cokernel(m.null_morphism(_obj(m, rng, n), x))
    return core.cokernel(_morph_into(m, rng, x, n))


def _flags(f):
    return core.classify(f)


# -- properties --------------------------------------------------------------


@prop("kernel_cokernel_universal", "kernel and cokernel satisfy their universal properties")
def _universal(m, rng, n):
    f = _some_morphism(m, rng, n)
    k, c = core.kernel(f), core.cokernel(f)
    expect(core.is_null(f @ k.arrow), "f ker f is not null")
    expect(core.is_null(c.arrow @ f), "coker f f is not null")
    expect(core.is_null(core.kernel(k.arrow).arrow), "kernel arrow is not N-mono (no uniqueness)")
    expect(core.is_null(core.cokernel(c.arrow).arrow), "cokernel arrow is not N-epi (no uniqueness)")
    x = _morph_into(m, rng, f.src, n)
    if rng.random() < 0.5:
        x = k.arrow @ _morph_into(m, rng, k.src, n)
    if core.is_null(f @ x):
        u = core.factor_through(k, x)
        expect(k.arrow @ u == x, "factorization through the kernel does not recompose")
    else:
        try:
            core.factor_through(k, x)
        except PreconditionFailed:
            pass
        else:
            raise Failure("factor_through accepted a morphism outside the kernel")
    y = _morph_from(m, rng, f.dst, n)
    if rng.random() < 0.5:
        y = _morph_from(m, rng, c.dst, n) @ c.arrow
    if core.is_null(y @ f):
        v = core.factor_through_cokernel(c, y)
        expect(v @ c.arrow == y, "factorization through the cokernel does not recompose")
    return OK


@prop("null_kernel_cokernel", "ker f = id and coker f = id for null f")
def _null_ker(m, rng, n):
    x, y = _obj(m, rng, n), _obj(m, rng, n)
    z = m.null_morphism(x, y)
    expect(core.kernel(z).arrow == m.identity(x), "ker of a null morphism is not the identity")
    expect(core.cokernel(z).arrow == m.identity(y), "coker of a null morphism is not the identity")
    return OK


@prop(
    "n_mono_characterization",
    "f is N-mono iff ker f is null; then ker(f h) = ker h for every h",
)
def _n_mono(m, rng, n):
    f = _some_morphism(m, rng, n)
    flags = _flags(f)
    expect(flags.is_n_mono == core.is_null(core.kernel(f).arrow), "is_n_mono disagrees with ker f null")
    expect(flags.is_n_epi == core.is_null(core.cokernel(f).arrow), "is_n_epi disagrees with coker f null")
    if not flags.is_n_mono:
        return VACUOUS
    h = _morph_into(m, rng, f.src, n)
    expect(core.subobject_equal(core.kernel(f @ h), core.kernel(h)), "ker(f h) != ker h for N-mono f")
    if flags.is_n_epi:
        g = _morph_from(m, rng, f.dst, n)
        expect(core.quotient_equal(core.cokernel(g @ f), core.cokernel(g)), "coker(g f) != coker g for N-epi f")
    return OK


@prop("coker_of_image", "coker(g im f) = coker(g f) and ker(coim g f) = ker(g f)")
def _coker_im(m, rng, n):
    f = _some_morphism(m, rng, n)
    g = _morph_from(m, rng, f.dst, n)
    nd_f, nd_g = core.normal_decomposition(f), core.normal_decomposition(g)
    expect(
        core.quotient_equal(core.cokernel(g @ nd_f.im.arrow), core.cokernel(g @ f)),
        "coker(g im f) != coker(g f)",
    )
    expect(
        core.subobject_equal(core.kernel(nd_g.coim.arrow @ f), core.kernel(g @ f)),
        "ker(coim g f) != ker(g f)",
    )
    return OK


@prop("image_of_kernel_composite", "g a kernel implies im(g f) = g im f", EX2)
def _corollary(m, rng, n):
    g = m.random_kernel_from(rng, _obj(m, rng, n), n)
    f = _morph_into(m, rng, g.src, n)
    composite = g @ core.normal_decomposition(f).im.arrow
    expect(_flags(composite).is_kernel, "g im f is not a kernel")
    expect(
        core.subobject_equal(core.normal_decomposition(g @ f).im, KernelArrow(composite)),
        "im(g f) != g im f",
    )
    return OK


@prop(
    "exact_morphism_properties",
    "kernels and cokernels are exact; is_kernel iff exact N-mono; f = h g with h a kernel "
    "and g a cokernel is exact with im f = h",
)
def _exact_props(m, rng, n):
    f = _some_morphism(m, rng, n)
    k, c = core.kernel(f), core.cokernel(f)
    kf, cf = _flags(k.arrow), _flags(c.arrow)
    expect(kf.is_exact and kf.is_n_mono and kf.is_kernel, "ker f does not classify as an exact N-mono")
    expect(cf.is_exact and cf.is_n_epi and cf.is_cokernel, "coker f does not classify as an exact N-epi")
    flags = _flags(f)
    expect(flags.is_kernel == (flags.is_n_mono and flags.is_exact), "is_kernel inconsistent")
    expect(flags.is_cokernel == (flags.is_n_epi and flags.is_exact), "is_cokernel inconsistent")
    if flags.is_iso:
        expect(flags.is_exact and flags.is_n_mono and flags.is_n_epi, "iso is not exact N-mono N-epi")
    mid = _obj(m, rng, n)
    g = m.random_cokernel_onto(rng, mid, n)
    h = m.random_kernel_from(rng, mid, n)
    hg = h @ g
    expect(core.is_exact(hg), "kernel after cokernel is not exact")
    expect(core.subobject_equal(KernelArrow(h), core.normal_decomposition(hg).im), "im(h g) != h")
    expect(core.quotient_equal(CokernelArrow(g), core.normal_decomposition(hg).coim), "coim(h g) != g")
    return OK


@prop("normal_decomposition_recomposes", "im f . middle . coim f == f")
def _recompose(m, rng, n):
    f = _some_morphism(m, rng, n)
    nd = core.normal_decomposition(f)
    expect(nd.im.arrow @ nd.middle @ nd.coim.arrow == f, "normal decomposition does not recompose")
    expect(nd.exact == m.is_iso(nd.middle), "exact flag differs from middle iso test")
    return OK


@prop("middle_morphism", "the middle morphism is N-mono and N-epi", EX2)
def _middle(m, rng, n):
    f = _some_morphism(m, rng, n)
    nd = core.normal_decomposition(f)
    flags = _flags(nd.middle)
    expect(flags.is_n_mono, "middle morphism is not N-mono")
    expect(flags.is_n_epi, "middle morphism is not N-epi")
    return OK


def _pullback_instance(m, rng, n):
    beta = _morph_from(m, rng, _obj(m, rng, n), n)
    if rng.random() < 0.6:
        beta = m.random_exact_morphism(rng, beta.src, n)
    f = _random_kernel_into(m, rng, beta.dst, n)
    leg, alpha = core.pullback_of_kernel(f, beta)
    return beta, f, leg, alpha


@prop(
    "pullback_of_kernel_is_pullback",
    "the square built by pullback_of_kernel commutes and has the universal property",
)
def _pullback_universal(m, rng, n):
    beta, f, leg, alpha = _pullback_instance(m, rng, n)
    expect(f.arrow @ alpha == beta @ leg.arrow, "pullback square does not commute")
    expect(_flags(leg.arrow).is_kernel, "pulled-back leg is not a kernel")
    # any x with beta x landing in f factors through the leg
    x = _morph_into(m, rng, beta.src, n)
    lands = core.is_null(core.cokernel(f.arrow).arrow @ beta @ x)
    if not lands:
        return VACUOUS
    z = core.factor_through(leg, x)
    y = core.factor_through(f, beta @ x)
    expect(alpha @ z == y, "induced map into the pullback does not commute")
    return OK


@prop(
    "pullback_of_exact",
    "pullback along a kernel of an exact morphism is exact (dually for pushouts)",
    EX2,
)
def _pullback_exact(m, rng, n):
    beta, f, leg, alpha = _pullback_instance(m, rng, n)
    exercised = False
    if core.is_exact(beta):
        exercised = True
        expect(core.is_exact(alpha), "pulled-back morphism is not exact")
    # dual: push an exact morphism out along a cokernel
    a2 = _morph_from(m, rng, _obj(m, rng, n), n)
    if rng.random() < 0.6:
        a2 = m.random_exact_morphism(rng, a2.src, n)
    g2 = _random_cokernel_from(m, rng, a2.src, n)
    _, beta2 = core.pushout_of_cokernel(g2, a2)
    if core.is_exact(a2):
        exercised = True
        expect(core.is_exact(beta2), "pushed-out morphism is not exact")
    return OK if exercised else VACUOUS


@prop(
    "induced_cokernel_morphism_n_mono",
    "in a pullback along a kernel with exact bottom, the induced f-hat is N-mono "
    "(dually g-hat is N-epi for pushouts)",
    EX2,
)
def _fhat(m, rng, n):
    beta, f, leg, alpha = _pullback_instance(m, rng, n)
    exercised = False
    if core.is_exact(beta):
        exercised = True
        sq = Square(top=alpha, left=leg.arrow, right=f.arrow, bottom=beta)
        _, f_hat = core.induced_boundary_morphisms(sq)
        expect(f.arrow @ alpha == beta @ leg.arrow, "pullback square does not commute")
        expect(_flags(f_hat).is_n_mono, "induced cokernel morphism is not N-mono")
    a2 = _morph_from(m, rng, _obj(m, rng, n), n)
    if rng.random() < 0.6:
        a2 = m.random_exact_morphism(rng, a2.src, n)
    g2 = _random_cokernel_from(m, rng, a2.src, n)
    c, beta2 = core.pushout_of_cokernel(g2, a2)
    if core.is_exact(a2):
        exercised = True
        sq = Square(top=a2, left=g2.arrow, right=c.arrow, bottom=beta2)
        g_hat, _ = core.induced_boundary_morphisms(sq)
        expect(_flags(g_hat).is_n_epi, "induced kernel morphism is not N-epi")
    return OK if exercised else VACUOUS


@prop("induced_boundary_morphisms", "g-hat and f-hat make the boundary squares commute")
def _induced(m, rng, n):
    top = _some_morphism(m, rng, n)
    right = _morph_from(m, rng, top.dst, n)
    # bottom-left path through the image of right top
    nd = core.normal_decomposition(right @ top)
    sq = Square(top=top, left=nd.imfactor(), right=right, bottom=nd.im.arrow)
    expect(sq.commutes(), "constructed square does not commute")
    g_hat, f_hat = core.induced_boundary_morphisms(sq)
    expect(
        core.kernel(sq.bottom).arrow @ g_hat == sq.left @ core.kernel(sq.top).arrow,
        "kernel square does not commute",
    )
    expect(
        f_hat @ core.cokernel(sq.top).arrow == core.cokernel(sq.bottom).arrow @ sq.right,
        "cokernel square does not commute",
    )
    return OK


@prop("kernel_cancellation", "alpha beta a kernel implies beta a kernel", EX2)
def _cancellation(m, rng, n):
    beta = _some_morphism(m, rng, n)
    alpha = m.random_kernel_from(rng, beta.dst, n) if rng.random() < 0.6 else _morph_from(m, rng, beta.dst, n)
    if not _flags(alpha @ beta).is_kernel:
        return VACUOUS
    expect(_flags(beta).is_kernel, "alpha beta is a kernel but beta is not")
    return OK


# The dual needs cokernels to be cancellable on the right.  Pointed sets
# refute it: {*,x} -> {*,x,y} -> {*,x} with x, y both sent to x composes to
# the identity, yet the second map identifies two points off the basepoint.
@prop("cokernel_cancellation", "alpha beta a cokernel implies alpha a cokernel", {"abgroup"})
def _cancellation_dual(m, rng, n):
    alpha = _some_morphism(m, rng, n)
    beta = m.random_cokernel_onto(rng, alpha.src, n) if rng.random() < 0.6 else _morph_into(m, rng, alpha.src, n)
    if not _flags(alpha @ beta).is_cokernel:
        return VACUOUS
    expect(_flags(alpha).is_cokernel, "alpha beta is a cokernel but alpha is not")
    return OK


@prop("kernels_compose", "the composite of two kernels is a kernel, dually for cokernels", EX2)
def _axiom3(m, rng, n):
    k1 = m.random_kernel_from(rng, _obj(m, rng, n), n)
    k2 = m.random_kernel_from(rng, k1.dst, n)
    expect(_flags(k2 @ k1).is_kernel, "composite of kernels is not a kernel")
    c1 = m.random_cokernel_onto(rng, _obj(m, rng, n), n)
    c2 = m.random_cokernel_onto(rng, c1.src, n)
    expect(_flags(c1 @ c2).is_cokernel, "composite of cokernels is not a cokernel")
    # kernels obtained from arbitrary morphisms, not just the generator's inclusions
    k3 = core.kernel(_some_morphism(m, rng, n))
    k4 = _random_kernel_into(m, rng, k3.src, n)
    expect(_flags(k3.arrow @ k4.arrow).is_kernel, "composite of computed kernels is not a kernel")
    return OK


@prop(
    "homology_object",
    "a homology object exists whenever (coker i)(ker q) is null, with q i exact",
    EX2,
)
def _axiom4(m, rng, n):
    x = _obj(m, rng, n)
    i = _random_kernel_into(m, rng, x, n)
    if rng.random() < 0.7:
        # q collapses a subobject of i, so the precondition holds
        j = _random_kernel_into(m, rng, i.src, n)
        q = core.cokernel(i.arrow @ j.arrow)
    else:
        q = _random_cokernel_from(m, rng, x, n)
    pre = core.is_null(core.cokernel(i.arrow).arrow @ core.kernel(q.arrow).arrow)
    if not pre:
        try:
            core.homology_object(i, q)
        except PreconditionFailed:
            return VACUOUS
        raise Failure("homology_object accepted a pair violating its precondition")
    expect(core.is_exact(q.arrow @ i.arrow), "q i is not exact")
    h = core.homology_object(i, q)
    expect(h.iota.arrow @ h.pi.arrow == q.arrow @ i.arrow, "iota pi != q i")
    expect(_flags(h.pi.arrow).is_cokernel, "pi is not a cokernel")
    expect(_flags(h.iota.arrow).is_kernel, "iota is not a kernel")
    return OK


@prop(
    "pullback_of_cokernel_kernel_pair",
    "pulling a kernel back along a cokernel gives a kernel and a cokernel",
)
def _axiom4_star(m, rng, n):
    p = _random_cokernel_from(m, rng, _obj(m, rng, n), n)
    k = _random_kernel_into(m, rng, p.dst, n)
    leg, other = core.pullback_of_kernel(k, p.arrow)
    expect(_flags(leg.arrow).is_kernel, "pulled-back leg is not a kernel")
    expect(_flags(other).is_cokernel, "opposite leg is not a cokernel")
    return OK


def _composable_pair(m, rng, n):
    f = _some_morphism(m, rng, n)
    r = rng.random()
    if r < 0.2:
        g = m.random_kernel_from(rng, f.dst, n)
    elif r < 0.5:
        g = m.random_exact_morphism(rng, f.dst, n)
    else:
        g = _morph_from(m, rng, f.dst, n)
    return f, g


@prop(
    "composition_lemma",
    "the six-term sequence is a null sequence, exact at Ker f, Ker gf, Coker gf and "
    "Coker g, with phi and omega exact",
)
def _composition(m, rng, n):
    f, g = _composable_pair(m, rng, n)
    seq = core.composition_sequence(f, g)
    expect(seq.order_two, "six-term sequence is not a null sequence")
    expect(seq.chi == core.cokernel(f).arrow @ core.kernel(g).arrow, "chi != coker f ker g")
    for pos in ("ker_f", "ker_gf", "coker_gf", "coker_g"):
        expect(seq.exact_at[pos], f"not exact at {pos}")
    expect(seq.phi_exact, "phi is not exact")
    expect(seq.omega_exact, "omega is not exact")
    return OK


@prop(
    "composition_lemma_conditional",
    "the six-term sequence is exact at Ker g with psi exact when f is exact, and at "
    "Coker f with epsilon exact when g is exact",
    EX2,
)
def _composition_conditional(m, rng, n):
    f, g = _composable_pair(m, rng, n)
    f_exact, g_exact = core.is_exact(f), core.is_exact(g)
    if not (f_exact or g_exact):
        return VACUOUS
    seq = core.composition_sequence(f, g)
    if f_exact:
        expect(seq.exact_at["ker_g"], "f exact but sequence not exact at ker_g")
        expect(seq.psi_exact, "f exact but psi not exact")
    if g_exact:
        expect(seq.exact_at["coker_f"], "g exact but sequence not exact at coker_f")
        expect(seq.epsilon_exact, "g exact but epsilon not exact")
    return OK


@prop("all_morphisms_exact", "every morphism is exact", {"abgroup"}, generic=False)
def _all_exact(m, rng, n):
    f = _some_morphism(m, rng, n)
    expect(core.is_exact(f), "non-exact morphism in an abelian model")
    return OK


@prop("exact_iff_injective_off_kernel", "a pointed map is exact iff injective off its kernel", {"ptset"}, generic=False)
def _pt_exact(m, rng, n):
    from .models.ptset import is_exact_elementwise

    f = m.random_morphism(rng, _obj(m, rng, n), _obj(m, rng, n))
    expect(core.is_exact(f) == is_exact_elementwise(f), "classification disagrees with elementwise test")
    return OK


@prop("exact_iff_normal_image", "a homomorphism is exact iff its image is normal", {"grp"}, generic=False)
def _grp_exact(m, rng, n):
    f = m.random_morphism(rng, _obj(m, rng, n), _obj(m, rng, n))
    normal = grp_model.is_normal(f.dst, set(f.data))
    expect(core.is_exact(f) == normal, "classification disagrees with normality of the image")
    return OK


@prop("oracle_kernel_cokernel", "kernel and cokernel fingerprints match elementwise enumeration")
def _oracle_kc(m, rng, n):
    from .errors import TooLarge, Unsupported
    from .oracle import elementwise_kernel_cokernel

    f = _some_morphism(m, rng, n)
    try:
        ker_fp, coker_fp = elementwise_kernel_cokernel(f)
    except (TooLarge, Unsupported):
        return VACUOUS
    expect(m.fingerprint(core.kernel(f).src) == ker_fp, "kernel fingerprint differs from enumeration")
    expect(m.fingerprint(core.cokernel(f).dst) == coker_fp, "cokernel fingerprint differs from enumeration")
    return OK


@prop("category_laws", "composition is associative and unital")
def _laws(m, rng, n):
    f = _some_morphism(m, rng, n)
    g = _morph_from(m, rng, f.dst, n)
    h = _morph_from(m, rng, g.dst, n)
    expect((h @ g) @ f == h @ (g @ f), "composition is not associative")
    expect(m.identity(f.dst) @ f == f and f @ m.identity(f.src) == f, "identity law fails")
    return OK


# suites referenced by the CLI and the acceptance tests
LEMMA_SUITE = (
    "n_mono_characterization",
    "coker_of_image",
    "image_of_kernel_composite",
    "exact_morphism_properties",
    "middle_morphism",
    "pullback_of_exact",
    "induced_cokernel_morphism_n_mono",
    "kernel_cancellation",
    "cokernel_cancellation",
    "homology_object",
)
AXIOM_SUITE = (
    "category_laws",
    "null_kernel_cokernel",
    "kernel_cokernel_universal",
    "normal_decomposition_recomposes",
    "pullback_of_kernel_is_pullback",
    "induced_boundary_morphisms",
    "kernels_compose",
    "pullback_of_cokernel_kernel_pair",
    "composition_lemma",
    "composition_lemma_conditional",
    "oracle_kernel_cokernel",
    "all_morphisms_exact",
    "exact_iff_injective_off_kernel",
    "exact_iff_normal_image",
) + LEMMA_SUITE


def run_property(name, model_name, seed=0, trials=100, max_size=None, observe=False):
    """Run ``trials`` seeded cases of one property in one model.

    Outside the property's asserted models the run is an observation: it is
    only performed when ``observe`` is true and never counts as a failure
    of the package.
    """
    p = REGISTRY[name]
    asserted = model_name in p.models
    if not asserted and not (observe and observable(name, model_name)):
        raise ValueError(f"property {name!r} is not asserted in {model_name}")
    m = get_model(model_name)
    n = max_size if max_size is not None else DEFAULT_MAX_SIZE[model_name]
    res = PropertyResult(name, model_name, trials, asserted)
    for t in range(trials):
        rng = trial_rng(seed, "prop", name, model_name, t)
        try:
            outcome = p.body(m, rng, n)
        except Failure as exc:
            res.failures.append((t, str(exc)))
            continue
        except PreconditionFailed as exc:
            res.failures.append((t, f"unexpected precondition failure: {exc}"))
            continue
        if outcome == VACUOUS:
            res.vacuous += 1
    return res


def observable(name, model_name):
    """Model-independent statements can be observed in models that do not assert them."""
    return model_name in REGISTRY[name].models or REGISTRY[name].generic


def applicable(model_name, names=AXIOM_SUITE):
    return [n for n in names if model_name in REGISTRY[n].models]


def kernel_composition_arrows():
    """The inclusions ``<(12)(34)> -> V4`` and ``V4 -> A4``."""
    a4 = grp_model.builtin_group("A4")
    v4_elems = [x for x in range(a4.order) if a4.element_order(x) <= 2]
    v4, outer = grp_model.subgroup(a4, v4_elems, name="V4")
    x = v4.index_of("(12)(34)")
    _, inner = grp_model.subgroup(v4, [0, x], name="<(12)(34)>")
    return inner, outer


def kernel_composition_witness():
    """The chain <(12)(34)> -> V4 -> A4: two kernels whose composite is not one.

    Returns ``(inner_is_kernel, outer_is_kernel, composite_is_kernel)``.
    """
    inner, outer = kernel_composition_arrows()
    return (
        core.classify(inner).is_kernel,
        core.classify(outer).is_kernel,
        core.classify(outer @ inner).is_kernel,
    )
