import pytest

from semiexact import core
from semiexact.core import CokernelArrow, KernelArrow, Square
from semiexact.errors import CompositionMismatch, PreconditionFailed
from semiexact.models import abgroup as ab
from semiexact.models import get_model, grp

from helpers import G, P, Z, inclusion, mul, pmap, sign, zn

PT, AB, GR = get_model("ptset"), get_model("abgroup"), get_model("grp")


# -- kernels and cokernels ---------------------------------------------------


def test_ptset_kernel_of_null_map_is_identity():
    f = pmap(4, 3, [0, 0, 0, 0])
    assert core.kernel(f).arrow == PT.identity(P(4))


def test_ptset_kernel_is_preimage_of_basepoint():
    k = core.kernel(pmap(4, 3, [0, 1, 1, 0])).arrow
    assert k.src.size == 2 and k.data == (0, 3)


def test_abgroup_kernel_of_projection_onto_z4():
    k = core.kernel(mul(Z, zn(4), 1)).arrow
    assert k.src == Z
    assert core.subobject_equal(KernelArrow(k), KernelArrow(mul(Z, Z, 4)))


def test_grp_kernel_of_sign_is_a3():
    s3 = G("S3")
    k = core.kernel(sign(s3)).arrow
    assert k.src.order == 3 and set(k.data) == {0, 3, 4}


@pytest.mark.parametrize("model,f", [
    (PT, pmap(3, 2, [0, 0, 0])),
    (AB, mul(Z, zn(3), 0)),
    (GR, grp.grphom(G("C2"), G("S3"), [0, 0])),
])
def test_cokernel_of_null_map_is_identity(model, f):
    assert core.cokernel(f).arrow == model.identity(f.dst)


def test_abgroup_cokernel_of_doubling():
    c = core.cokernel(mul(Z, Z, 2)).arrow
    assert AB.fingerprint(c.dst) == (2,)
    assert c == mul(Z, c.dst, 1) or c == mul(Z, c.dst, -1)


def test_grp_cokernel_of_transposition_is_trivial():
    s3 = G("S3")
    c = core.cokernel(inclusion(s3, {0, 2})).arrow
    assert c.dst.order == 1


# -- classification and normal decomposition ------------------------------------


@pytest.mark.parametrize("f", [PT.identity(P(3)), AB.identity(zn(6)), GR.identity(G("A4"))])
def test_identity_classifies_as_everything(f):
    c = core.classify(f)
    assert all([c.is_n_mono, c.is_n_epi, c.is_exact, c.is_kernel, c.is_cokernel, c.is_iso])


def test_ptset_collapsing_map_is_not_exact():
    c = core.classify(pmap(3, 2, [0, 1, 1]))
    assert c.is_n_mono and c.is_n_epi
    assert not c.is_exact and not c.is_iso


def test_abgroup_doubling_classification():
    c = core.classify(mul(Z, Z, 2))
    assert c.is_n_mono and not c.is_n_epi and c.is_exact and c.is_kernel


def test_null_decomposition_passes_through_zero():
    nd = core.normal_decomposition(pmap(3, 4, [0, 0, 0]))
    assert PT.is_zero_object(nd.coim.arrow.dst) and PT.is_zero_object(nd.im.arrow.src)
    assert nd.exact


def test_abgroup_doubling_decomposition():
    nd = core.normal_decomposition(mul(Z, Z, 2))
    assert nd.exact
    assert nd.coim.arrow.data.tolist() == [[1]] and nd.middle.data.tolist() == [[1]]
    assert nd.im.arrow.data.tolist() == [[2]]


def test_ptset_middle_morphism_is_the_surjection():
    nd = core.normal_decomposition(pmap(3, 2, [0, 1, 1]))
    assert nd.middle.src.size == 3 and nd.middle.dst.size == 2
    assert not nd.exact


def test_grp_exactness_is_normality_of_the_image():
    s3 = G("S3")
    assert core.is_exact(inclusion(s3, {0, 3, 4}))
    assert not core.is_exact(inclusion(s3, {0, 2}))


# -- factorization and subobjects ------------------------------------------------


def test_factor_through_itself_is_identity():
    k = core.kernel(mul(Z, zn(4), 1))
    assert core.factor_through(k, k.arrow) == AB.identity(k.arrow.src)


def test_abgroup_factor_through_division():
    k = KernelArrow(mul(Z, Z, 2))
    assert core.factor_through(k, mul(Z, Z, 4)).data.tolist() == [[2]]


def test_ptset_factor_through_inclusion_corestricts():
    k = core.kernel(pmap(3, 2, [0, 0, 1]))  # inclusion of {0, 1}
    x = pmap(4, 3, [0, 1, 0, 1])
    u = core.factor_through(k, x)
    assert u.dst.size == 2 and k.arrow @ u == x


def test_factor_through_rejects_non_factoring_maps():
    with pytest.raises(PreconditionFailed):
        core.factor_through(KernelArrow(mul(Z, Z, 2)), mul(Z, Z, 3))
    with pytest.raises(PreconditionFailed):
        core.factor_through_cokernel(CokernelArrow(mul(Z, zn(2), 1)), mul(Z, Z, 1))


def test_subobject_equality():
    k = core.kernel(pmap(3, 2, [0, 0, 1]))
    assert core.subobject_equal(k, k)
    assert core.subobject_equal(KernelArrow(mul(Z, Z, 2)), KernelArrow(mul(Z, Z, -2)))
    other = core.kernel(pmap(3, 2, [0, 1, 0]))  # inclusion of {0, 2}
    assert not core.subobject_equal(k, other)


def test_quotient_equality():
    assert core.quotient_equal(CokernelArrow(mul(Z, zn(4), 1)), CokernelArrow(mul(Z, zn(4), 3)))
    assert not core.quotient_equal(CokernelArrow(mul(Z, zn(4), 1)), CokernelArrow(mul(Z, zn(2), 1)))


# -- pullbacks, pushouts and induced maps -----------------------------------------


def test_pullback_along_identity_returns_beta():
    beta = core.kernel(pmap(4, 2, [0, 1, 0, 0]))
    leg, _ = core.pullback_of_kernel(beta, PT.identity(P(4)))
    assert core.subobject_equal(leg, beta)


def test_abgroup_pullback_of_even_numbers_along_tripling():
    leg, f2 = core.pullback_of_kernel(KernelArrow(mul(Z, Z, 2)), mul(Z, Z, 3))
    assert leg.arrow.data.tolist() == [[2]] and f2.data.tolist() == [[3]]


def test_ptset_pullback_missing_the_subobject_is_trivial():
    beta = core.kernel(pmap(3, 2, [0, 0, 1]))  # {0, 1}
    leg, _ = core.pullback_of_kernel(beta, pmap(2, 3, [0, 2]))
    assert leg.arrow.src.size == 1


def test_pushout_along_identity_returns_alpha():
    alpha = core.cokernel(pmap(2, 4, [0, 3]))
    leg, _ = core.pushout_of_cokernel(alpha, PT.identity(P(4)))
    assert core.quotient_equal(leg, alpha)


def test_abgroup_pushout_of_z4_along_doubling():
    leg, g2 = core.pushout_of_cokernel(core.cokernel(mul(Z, Z, 4)), mul(Z, Z, 2))
    assert AB.fingerprint(leg.arrow.dst) == (8,)
    assert g2 == mul(zn(4), leg.arrow.dst, 2) or g2 == mul(zn(4), leg.arrow.dst, -2)


def test_ptset_pushout_collapsing_everything_is_trivial():
    alpha = core.cokernel(pmap(2, 3, [0, 1]))  # collapses {0, 1}
    leg, _ = core.pushout_of_cokernel(alpha, pmap(3, 2, [0, 1, 0]))
    assert leg.arrow.dst.size == 1


def test_induced_boundary_morphisms_of_identity_square():
    i = PT.identity(P(3))
    g_hat, f_hat = core.induced_boundary_morphisms(Square(top=i, left=i, right=i, bottom=i))
    assert PT.is_zero_object(f_hat.src) and PT.is_zero_object(g_hat.dst)


def test_induced_cokernel_map_identity_on_z2():
    sq = Square(top=mul(Z, Z, 2), left=mul(Z, Z, 1), right=mul(Z, Z, 1), bottom=mul(Z, Z, 2))
    _, f_hat = core.induced_boundary_morphisms(sq)
    assert f_hat == AB.identity(f_hat.src) and AB.fingerprint(f_hat.src) == (2,)


def test_induced_cokernel_map_doubles():
    sq = Square(top=mul(Z, Z, 2), left=mul(Z, Z, 1), right=mul(Z, Z, 2), bottom=mul(Z, Z, 4))
    assert sq.commutes()
    _, f_hat = core.induced_boundary_morphisms(sq)
    assert AB.fingerprint(f_hat.src) == (2,) and AB.fingerprint(f_hat.dst) == (4,)
    assert f_hat == mul(f_hat.src, f_hat.dst, 2)


# -- sequences ------------------------------------------------------------------


def test_composition_sequence_with_identity():
    g = pmap(3, 2, [0, 1, 0])
    seq = core.composition_sequence(PT.identity(P(3)), g)
    assert seq.order_two
    assert core.classify(seq.psi).is_iso


def test_composition_sequence_doubling_twice():
    seq = core.composition_sequence(mul(Z, Z, 2), mul(Z, Z, 2))
    assert all(seq.exact_at.values()) and seq.order_two
    assert AB.fingerprint(seq.epsilon.src) == (2,) and AB.fingerprint(seq.epsilon.dst) == (4,)
    assert seq.epsilon == mul(zn(2), zn(4), 2)
    assert seq.omega == mul(zn(4), zn(2), 1)


def test_composition_sequence_ptset_example():
    # A = {*, a}, B = {*, x, y}, C = {*, c}; f(a) = x, g(x) = *, g(y) = c
    f, g = pmap(2, 3, [0, 1]), pmap(3, 2, [0, 0, 1])
    seq = core.composition_sequence(f, g)
    assert seq.psi.src.size == 2
    assert core.kernel(g).arrow.data == (0, 1)
    assert core.is_null(seq.chi)
    assert all(seq.exact_at.values())


def test_sequence_report_single_morphism_is_empty():
    assert core.sequence_report([mul(Z, Z, 2)]) == []


@pytest.mark.parametrize("k,exact", [(2, True), (4, False)])
def test_sequence_report_exactness(k, exact):
    (pos,) = core.sequence_report([mul(Z, Z, k), mul(Z, zn(2), 1)])
    assert pos.order_two and pos.exact == exact


def test_sequence_report_rejects_mismatch():
    with pytest.raises(CompositionMismatch):
        core.sequence_report([mul(Z, Z, 2), mul(zn(2), zn(2), 1)])


# -- homology objects ----------------------------------------------------------


def test_homology_of_identities():
    i = AB.identity(zn(6))
    h = core.homology_object(KernelArrow(i), CokernelArrow(i))
    assert AB.fingerprint(h.h) == (6,)
    assert core.classify(h.pi.arrow).is_iso and core.classify(h.iota.arrow).is_iso


def test_abgroup_homology_object():
    i = KernelArrow(mul(Z, Z, 2))
    q = core.cokernel(mul(Z, Z, 4))
    h = core.homology_object(i, q)
    assert AB.fingerprint(h.h) == (2,)
    assert h.iota.arrow == mul(h.h, zn(4), 2)


def test_ptset_homology_object_trivial():
    i = core.kernel(pmap(3, 2, [0, 0, 1]))
    q = core.cokernel(pmap(2, 3, [0, 1]))
    assert core.homology_object(i, q).h.size == 1
