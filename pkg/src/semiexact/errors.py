"""Exception hierarchy shared by the engine, the models and the CLI."""


class SemiexactError(Exception):
    pass


class PreconditionFailed(SemiexactError):
    """A factorization or construction was asked for outside its domain."""


class HypothesisFailed(SemiexactError):
    """A theorem's hypotheses do not hold; ``which`` names the failing one."""

    def __init__(self, which, message=None):
        self.which = which
        super().__init__(message or f"hypothesis failed: {which}")


class CompositionMismatch(SemiexactError):
    pass


class ArithmeticOverflow(SemiexactError, OverflowError):
    """Fixed-width integer arithmetic exceeded its range."""


class NotNormal(SemiexactError):
    pass


class UnknownGroup(SemiexactError, KeyError):
    def __str__(self):
        return f"unknown group {self.args[0]!r}"


class TooLarge(SemiexactError):
    pass


class Unsupported(SemiexactError):
    pass


class InvalidPayload(SemiexactError, ValueError):
    """Object or morphism data violates its model's well-formedness law."""


class DiagramError(SemiexactError):
    """Base for diagram document errors; ``line`` is 1-based or None."""

    def __init__(self, message, line=None, name=None):
        self.line = line
        self.name = name
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


class DiagramSyntaxError(DiagramError):
    pass


class UnknownName(DiagramError):
    pass


class EndpointMismatch(DiagramError):
    pass


class NonCommutingSquare(DiagramError):
    pass
