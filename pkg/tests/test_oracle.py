"""The oracle works from element sets and lattices, never from the categorical engine."""

import ast
import inspect

import pytest

from semiexact import oracle
from semiexact.dsl import parse_diagram
from semiexact.errors import TooLarge, Unsupported
from semiexact.models import abgroup as ab
from semiexact.models import get_model

from helpers import DIAGRAMS, G, P, Z, diagram_text, identity_diagram, inclusion, mul, pmap, sign, zn

PT, AB, GR = get_model("ptset"), get_model("abgroup"), get_model("grp")


def test_oracle_does_not_import_the_engine():
    tree = ast.parse(inspect.getsource(oracle))
    names = set()
    for node in ast.walk(tree):
        if isinstance(node, ast.ImportFrom):
            names.add(node.module or "")
            names.update(a.name for a in node.names)
        elif isinstance(node, ast.Import):
            names.update(a.name for a in node.names)
    assert not {"core", "lambek", "semiexact.core"} & names


@pytest.mark.parametrize("model,obj", [(PT, P(3)), (AB, zn(6)), (GR, G("S3"))])
def test_identity_diagram(model, obj):
    rep = oracle.lambek_oracle(identity_diagram(model, obj))
    zero = model.fingerprint(model.zero_object())
    assert rep.im_s_fingerprint == zero == rep.ker_t_fingerprint
    assert rep.against(zero, zero).agrees


def test_golden_abgroup():
    rep = oracle.lambek_oracle(parse_diagram(diagram_text("abgroup_times2_mod2.diagram")).diagram())
    assert rep.im_s_fingerprint == (2,) == rep.ker_t_fingerprint
    assert rep.method == "lattice"


def test_ptset_two_element():
    rep = oracle.lambek_oracle(parse_diagram(diagram_text("ptset_two_element.diagram")).diagram())
    assert rep.im_s_fingerprint == 2 == rep.ker_t_fingerprint


def test_finite_abgroup_diagrams_use_enumeration_as_well():
    rep = oracle.lambek_oracle(parse_diagram(diagram_text("abgroup_generated_s7_t37.diagram")).diagram())
    assert rep.im_s_fingerprint == (3,) == rep.ker_t_fingerprint


@pytest.mark.parametrize("model,f", [
    (PT, pmap(3, 2, [0, 0, 0])),
    (AB, mul(zn(4), zn(2), 0)),
    (GR, GR.null_morphism(G("S3"), G("C2"))),
])
def test_null_map(model, f):
    assert oracle.elementwise_kernel_cokernel(f) == (model.fingerprint(f.src), model.fingerprint(f.dst))


def test_sign_homomorphism():
    ker, coker = oracle.elementwise_kernel_cokernel(sign(G("S3")))
    assert ker[0] == 3 and coker[0] == 1


def test_doubling_on_z4():
    assert oracle.elementwise_kernel_cokernel(ab.abmap(zn(4), zn(4), [[2]])) == ((2,), (2,))


def test_enumeration_limits():
    with pytest.raises(Unsupported):
        oracle.elementwise_kernel_cokernel(mul(Z, Z, 2))
    big = ab.presentation(2, [[101, 0], [0, 103]])
    with pytest.raises(TooLarge):
        oracle.elementwise_kernel_cokernel(AB.identity(big))


def test_report_agreement_flag():
    rep = oracle.OracleReport("ptset", 2, 2, "elementwise")
    assert rep.against(2, 2).agrees and not rep.against(2, 3).agrees
    assert rep.invariants_match
