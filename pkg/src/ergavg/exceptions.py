"""
Exceptions
==========

All errors raised by the package are ``ValueError`` subclasses so callers
can keep catching ``ValueError``.

.. autosummary::

    ~DimensionError
    ~StructureError
    ~EmptyWindowError
    ~NegativeObservableError
    ~WindowError
    ~SystemFileError
    ~GridFileError
"""


class DimensionError(ValueError):
    """Objects live on different spaces or have the wrong length."""


class StructureError(ValueError):
    """An object violates its structural invariants."""


class EmptyWindowError(ValueError):
    """A Følner window or sub-box is empty."""


class NegativeObservableError(ValueError):
    """A nonnegative observable was required."""

    def __init__(self, indices):
        """Remember the offending point indices."""
        self.indices = [int(i) for i in indices]
        super().__init__(f"observable has negative entries at indices {self.indices}")


class WindowError(ValueError):
    """A (shifted) box escapes the grid window."""


class SystemFileError(ValueError):
    """A system file could not be parsed or validated."""

    def __init__(self, message, *, field="", line=None, column=None):
        """Keep the field path and, for syntax errors, the position."""
        self.field = field
        self.line = line
        self.column = column
        where = []
        if field:
            where.append(f"field {field!r}")
        if line is not None:
            where.append(f"line {line}, column {column}")
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(f"{prefix}{message}")


class GridFileError(ValueError):
    """A binary grid or coloring file is malformed."""
