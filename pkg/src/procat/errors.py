"""Exception hierarchy shared by every layer of the package."""

from __future__ import annotations


class ProcatError(Exception):
    """Base class; ``pos`` is an optional ``(line, column)`` pair, 1-based.

    ``source`` names the file the position refers to, when it is not the
    signature file being processed.
    """

    kind = "Error"

    def __init__(self, message: str, pos: tuple[int, int] | None = None):
        super().__init__(message)
        self.message = message
        self.pos = pos
        self.source: str | None = None

    def __str__(self) -> str:
        if self.pos is None:
            return f"{self.kind}: {self.message}"
        return f"{self.kind} at {self.pos[0]}:{self.pos[1]}: {self.message}"


class ParseError(ProcatError):
    kind = "ParseError"


class UnknownObject(ProcatError):
    kind = "UnknownObject"


class UnknownBox(ProcatError):
    kind = "UnknownBox"


class UnknownTerm(ProcatError):
    kind = "UnknownTerm"


class TypeMismatch(ProcatError):
    kind = "TypeMismatch"

    def __init__(self, message, pos=None, expected=None, actual=None):
        super().__init__(message, pos)
        self.expected = expected
        self.actual = actual


class UnboundObject(ProcatError):
    kind = "UnboundObject"


class UnboundBox(ProcatError):
    kind = "UnboundBox"


class BindingError(ProcatError):
    """Malformed bindings file; ``path`` addresses the offending JSON node."""

    kind = "BindingError"

    def __init__(self, message, path: str = "$", pos=None):
        super().__init__(f"{path}: {message}", pos)
        self.path = path


class UnsupportedInBackend(ProcatError):
    kind = "UnsupportedInBackend"


class CapExceeded(ProcatError):
    kind = "CapExceeded"


class ShapeMismatch(ProcatError):
    """Internal invariant violation: a matrix of the wrong shape reached evaluation."""

    kind = "ShapeMismatch"


class InvalidCandidate(ProcatError):
    kind = "InvalidCandidate"


class NotInvertible(ProcatError):
    kind = "NotInvertible"
