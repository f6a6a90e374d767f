"""Concrete model categories: pointed sets, abelian groups, finite groups."""

from .abgroup import ABGROUP, AbPresentation, abmap, cyclic, presentation
from .base import Model, Morphism
from .grp import GRP, CayleyGroup, builtin_group, grphom
from .ptset import PTSET, PtObject, ptmap

MODELS = {"ptset": PTSET, "abgroup": ABGROUP, "grp": GRP}


def get_model(name: str) -> Model:
    try:
        return MODELS[name]
    except KeyError:
        raise ValueError(f"unknown model {name!r}; expected one of {', '.join(MODELS)}") from None
