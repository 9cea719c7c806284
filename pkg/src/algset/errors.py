"""Exception hierarchy shared by every module of the workbench."""

from __future__ import annotations


class AlgSetError(Exception):
    pass


class CompositionError(AlgSetError):
    """Raised when arrows with mismatched endpoints are composed."""


class UnsupportedStructure(AlgSetError):
    """The ambient category does not declare the capability an operation needs."""


class ResourceBoundError(AlgSetError):
    """An enumeration exceeded its configured ceiling.

    ``census`` carries whatever partial counts were gathered before the limit
    was hit, so callers can still report something useful.
    """

    def __init__(self, message: str, census=None):
        super().__init__(message)
        self.census = census


class InconclusiveError(AlgSetError):
    """A bounded search ran out of budget without deciding the question."""


class PreconditionError(AlgSetError):
    pass


class MalformedInput(AlgSetError):
    pass


class ParseError(AlgSetError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} at line {line}, column {column}")
        self.line = line
        self.column = column
