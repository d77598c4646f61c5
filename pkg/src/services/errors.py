"""Exception hierarchy shared by the services and mapped to exit codes by the CLI."""

from typing import Optional


class LtsEnvelopeError(Exception):
    """Base class for all errors raised by this package."""


class StructureError(LtsEnvelopeError):
    """Structure constants, tables or catalog requests that cannot be used."""


class AmbientMismatchError(LtsEnvelopeError):
    """Elements of two different algebras were combined."""


class NotInSubalgebraError(LtsEnvelopeError):
    """An element of U(L) is not in the subalgebra generated by V."""


class InducedBracketNotClosedError(LtsEnvelopeError):
    """The ternary bracket of LN_alt(A) left the computed subspace."""


class JordanChevalleyError(LtsEnvelopeError):
    """The parts a_s, a_n of an element failed their postconditions."""


class PreconditionViolatedError(LtsEnvelopeError):
    """A hypothesis of the decomposition theorem does not hold."""

    def __init__(self, hypothesis: str, detail: str = ""):
        self.hypothesis = hypothesis
        self.detail = detail
        message = f"hypothesis '{hypothesis}' violated"
        if detail:
            message += f": {detail}"
        super().__init__(message)


class InputError(LtsEnvelopeError):
    """Malformed input file or command line value."""

    def __init__(self, message: str, position: Optional[str] = None):
        self.position = position
        if position:
            message = f"{message} (at {position})"
        super().__init__(message)
