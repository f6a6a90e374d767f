"""Model-independent morphism type and the primitive contract every model meets."""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any

from ..errors import CompositionMismatch


@dataclass(frozen=True, eq=False)
class Morphism:
    """A typed arrow ``src -> dst`` carrying model-specific ``data``.

    ``g @ f`` is the composite "g after f".  ``==`` is equality of parallel
    morphisms in the category (not payload equality), so it is decided by the
    model; morphisms are deliberately unhashable.
    """

    src: Any
    dst: Any
    data: Any

    @property
    def model(self) -> "Model":
        return self.src.model

    def __matmul__(self, other: "Morphism") -> "Morphism":
        if other.dst != self.src:
            raise CompositionMismatch(
                f"cannot compose {other.src} -> {other.dst} with {self.src} -> {self.dst}"
            )
        return self.model.compose(self, other)

    def __eq__(self, other):
        if not isinstance(other, Morphism):
            return NotImplemented
        if self.src != other.src or self.dst != other.dst:
            return False
        return self.model.equal(self, other)

    __hash__ = None

    def __repr__(self):
        return f"Morphism({self.src!r} -> {self.dst!r}, {self.model.format_data(self)})"


class Model(ABC):
    """Primitive operations a concrete category must supply.

    The categorical engine only ever calls these.  ``lift`` and ``descend``
    realise the universal properties: ``lift(k, x)`` returns the ``u`` with
    ``k @ u == x`` for a kernel arrow ``k``, and ``descend(c, y)`` the ``u``
    with ``u @ c == y`` for a cokernel arrow ``c``.  Callers check the
    preconditions; models may assume them.
    """

    name: str
    #: kernels and cokernels closed under composition
    ex2: bool
    #: ex2 plus homology objects
    homological: bool

    @abstractmethod
    def identity(self, obj) -> Morphism: ...

    @abstractmethod
    def compose(self, g: Morphism, f: Morphism) -> Morphism: ...

    @abstractmethod
    def equal(self, f: Morphism, g: Morphism) -> bool: ...

    @abstractmethod
    def is_null(self, f: Morphism) -> bool: ...

    @abstractmethod
    def kernel(self, f: Morphism) -> Morphism: ...

    @abstractmethod
    def cokernel(self, f: Morphism) -> Morphism: ...

    @abstractmethod
    def lift(self, k: Morphism, x: Morphism) -> Morphism: ...

    @abstractmethod
    def descend(self, c: Morphism, y: Morphism) -> Morphism: ...

    @abstractmethod
    def is_iso(self, f: Morphism) -> bool: ...

    @abstractmethod
    def zero_object(self): ...

    @abstractmethod
    def is_zero_object(self, obj) -> bool: ...

    @abstractmethod
    def null_morphism(self, src, dst) -> Morphism: ...

    @abstractmethod
    def fingerprint(self, obj): ...

    def format_fingerprint(self, fp) -> str:
        return str(fp)

    def format_data(self, f: Morphism) -> str:
        return repr(f.data)

    # random instance generation, used by the property suites and the CLI

    @abstractmethod
    def random_object(self, rng, max_size): ...

    @abstractmethod
    def random_morphism(self, rng, src, dst) -> Morphism: ...

    @abstractmethod
    def random_exact_morphism(self, rng, src, max_size) -> Morphism: ...

    @abstractmethod
    def random_kernel_from(self, rng, obj, max_size) -> Morphism:
        """A kernel arrow with domain ``obj``."""

    @abstractmethod
    def random_cokernel_onto(self, rng, obj, max_size) -> Morphism:
        """A cokernel arrow with codomain ``obj``."""

    def __repr__(self):
        return f"<model {self.name}>"
