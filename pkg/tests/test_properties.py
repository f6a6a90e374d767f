"""Axiom and lemma properties on random instances, plus the known counterexamples.

Hypothesis picks the seeds; each example runs a short seeded batch of the
suite property so that shrinking reports a reproducible (seed, trial).
"""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from semiexact import core, suites
from semiexact.models import get_model, grp

from helpers import G, P, inclusion, pmap

CASES = [(name, model) for name in suites.AXIOM_SUITE for model in ("ptset", "abgroup", "grp")
         if model in suites.REGISTRY[name].models]


def test_every_property_is_asserted_somewhere():
    assert all(suites.REGISTRY[n].models for n in suites.AXIOM_SUITE)
    assert set(suites.LEMMA_SUITE) <= set(suites.AXIOM_SUITE)


@pytest.mark.parametrize("name,model", CASES, ids=[f"{m}-{n}" for n, m in CASES])
@settings(max_examples=20)
@given(seed=st.integers(0, 2**32))
def test_property(name, model, seed):
    res = suites.run_property(name, model, seed=seed, trials=5)
    assert res.passed, f"{name} in {model}, seed {seed}: {res.failures}"


def test_asserted_property_outside_its_models_needs_observe():
    with pytest.raises(ValueError):
        suites.run_property("kernels_compose", "grp", trials=1)
    with pytest.raises(ValueError):
        suites.run_property("exact_iff_normal_image", "ptset", trials=1, observe=True)
    res = suites.run_property("kernels_compose", "grp", trials=2, observe=True)
    assert not res.asserted


# -- counterexamples outside the ex2 models ---------------------------------------------


def test_a4_kernel_chain():
    assert suites.kernel_composition_witness() == (True, True, False)


def test_grp_composition_lemma_fails_at_coker_f():
    """V4 -> D4 -> A4: f and g exact, yet the six-term sequence breaks at Coker f."""
    d4, a4 = G("D4"), G("A4")
    v4_in_d4 = [x for x in range(8) if d4.element_order(x) <= 2]
    # a Klein subgroup of D4 that is normal and contains the centre
    for h in grp.homomorphisms(G("V4"), d4):
        if len(set(h.data)) == 4 and grp.is_normal(d4, set(h.data)):
            f = h
            break
    assert set(f.data) <= set(v4_in_d4)
    # g: D4 -> A4 with image the Klein subgroup of A4 and kernel inside Im f
    candidates = [
        g for g in grp.homomorphisms(d4, a4)
        if len(set(g.data)) == 4 and set(x for x in range(8) if g.data[x] == 0) <= set(f.data)
    ]
    g = candidates[0]
    assert core.is_exact(f) and core.is_exact(g)
    seq = core.composition_sequence(f, g)
    assert seq.order_two
    assert all(seq.exact_at[p] for p in ("ker_f", "ker_gf", "coker_gf", "coker_g"))
    assert not seq.exact_at["coker_f"]


def test_ptset_cokernel_cancellation_fails():
    """{*,x} -> {*,x,y} -> {*,x}: the composite is the identity, the second map is no cokernel."""
    beta = pmap(2, 3, [0, 1])
    alpha = pmap(3, 2, [0, 1, 1])
    assert core.classify(alpha @ beta).is_cokernel
    assert not core.classify(alpha).is_cokernel


def test_grp_middle_morphism_need_not_be_n_epi():
    # <(14)(23)> is not normal in A4; Im f is its normal closure V4, and
    # inside the abelian V4 the order-2 subgroup leaves a nontrivial cokernel
    a4 = G("A4")
    t = a4.index_of("(14)(23)")
    f = grp.grphom(G("C2"), a4, [0, t])
    nd = core.normal_decomposition(f)
    assert nd.im.arrow.src.order == 4 and nd.middle.src.order == 2
    flags = core.classify(nd.middle)
    assert flags.is_n_mono and not flags.is_n_epi
