"""Exception hierarchy shared by the kernel and the pipelines."""


class P4SurfError(Exception):
    """Base class for all library errors."""


class UsageError(P4SurfError):
    """Caller violated a precondition (bad shapes, bad arguments)."""


class DegreeError(UsageError):
    """Inhomogeneous data or mismatched degrees."""


class ShapeError(UsageError):
    """Matrix composition or twist bookkeeping mismatch."""


class DimensionError(P4SurfError):
    """A scheme does not have the dimension an operation requires."""


class ConstructionError(P4SurfError):
    """A pipeline stage produced an object violating its contract."""


class DegeneracyError(ConstructionError):
    """A random choice was degenerate; retry with a fresh seed."""


class ParseError(UsageError):
    """Textual input could not be parsed."""

    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        loc = ""
        if line is not None:
            loc = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + loc)
