"""Exception hierarchy for the assertional logic kernel."""

from __future__ import annotations

__all__ = ["ALKError", "DuplicateName", "UnknownConcept", "UnknownSymbol", "IllFormed", "CyclicDefinition", "CopyOutsideDomain", "UnboundVariable", "EmptyList", "InfiniteExtent", "BoundsExceeded", "EvalError", "OutsideDomain", "UnboundSymbol", "NotAFluent", "UnknownTimePoint", "EmptyWorldSpace", "ConditionMeasureZero", "ParseError", "ParseErrors"]


class ALKError(Exception):
    """Base class for every error raised by this package."""

    def __init__(self, message: str, span=None):
        super().__init__(message)
        self.message = message
        self.span = span

    def __str__(self) -> str:
        if self.span is not None:
            return f"{self.span}: {self.message}"
        return self.message


class DuplicateName(ALKError):
    pass


class UnknownConcept(ALKError):
    pass


class UnknownSymbol(ALKError):
    pass


class IllFormed(ALKError):
    """A term fails the arity / operator-existence check."""


class CyclicDefinition(ALKError):
    pass


class CopyOutsideDomain(ALKError):
    pass


class UnboundVariable(ALKError):
    pass


class EmptyList(ALKError, ValueError):
    pass


class InfiniteExtent(ALKError):
    pass


class BoundsExceeded(ALKError):
    def __init__(self, message: str, count: int | None = None, cap: int | None = None):
        super().__init__(message)
        self.count = count
        self.cap = cap


class EvalError(ALKError):
    pass


class OutsideDomain(EvalError):
    pass


class UnboundSymbol(EvalError):
    pass


class NotAFluent(EvalError):
    pass


class UnknownTimePoint(EvalError):
    pass


class EmptyWorldSpace(ALKError):
    pass


class ConditionMeasureZero(ALKError):
    pass


class ParseError(ALKError):
    pass


class ParseErrors(ALKError):
    """Every recoverable error found while reading one document."""

    def __init__(self, errors: list[ALKError]):
        self.errors = list(errors)
        first = self.errors[0] if self.errors else None
        super().__init__("\n".join(str(e) for e in self.errors) or "parse failed",
                         getattr(first, "span", None))

    def __str__(self) -> str:
        return self.message
