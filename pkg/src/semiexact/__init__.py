"""Semiexact categories with computable models.

Kernels, cokernels and normal decompositions relative to a null ideal,
worked out in pointed finite sets, finitely presented abelian groups and
finite groups, together with the Lambek comparison morphism between the
invariants of two adjacent commutative squares.
"""

from .core import (
    CokernelArrow,
    HomologyTriple,
    KernelArrow,
    MorphismClassification,
    NormalDecomposition,
    SixTermSequence,
    Square,
    classify,
    cokernel,
    composition_sequence,
    factor_through,
    factor_through_cokernel,
    homology_object,
    identity,
    induced_boundary_morphisms,
    inverse,
    is_exact,
    is_null,
    kernel,
    normal_decomposition,
    pullback_of_kernel,
    pushout_of_cokernel,
    quotient_equal,
    sequence_report,
    subobject_equal,
)
from .dsl import DiagramDoc, parse_diagram, serialize
from .errors import SemiexactError
from .generate import RunConfig, generate_diagram
from .lambek import LambekDiagram, LambekResult, lambek_check, lambek_invariants, lambek_morphism
from .models import ABGROUP, GRP, PTSET, Morphism, get_model
from .oracle import lambek_oracle

__version__ = "0.1.0"

__all__ = [
    "ABGROUP",
    "GRP",
    "PTSET",
    "CokernelArrow",
    "DiagramDoc",
    "HomologyTriple",
    "KernelArrow",
    "LambekDiagram",
    "LambekResult",
    "Morphism",
    "MorphismClassification",
    "NormalDecomposition",
    "RunConfig",
    "SemiexactError",
    "SixTermSequence",
    "Square",
    "classify",
    "cokernel",
    "composition_sequence",
    "factor_through",
    "factor_through_cokernel",
    "generate_diagram",
    "get_model",
    "homology_object",
    "identity",
    "induced_boundary_morphisms",
    "inverse",
    "is_exact",
    "is_null",
    "kernel",
    "lambek_check",
    "lambek_invariants",
    "lambek_morphism",
    "lambek_oracle",
    "normal_decomposition",
    "parse_diagram",
    "pullback_of_kernel",
    "pushout_of_cokernel",
    "quotient_equal",
    "sequence_report",
    "serialize",
    "subobject_equal",
]
