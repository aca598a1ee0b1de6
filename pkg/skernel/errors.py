# FILE: skernel/errors.py
"""Exception hierarchy shared by every module.

Everything derives from ``ValueError`` so callers that only know the
builtin still catch our failures.
"""


class SkernelError(ValueError):
    """Root of all library errors."""


class ParameterError(SkernelError):
    """Out-of-range operator index, invalid (n, k), missing cap, unknown vertex."""


class PreconditionError(SkernelError):
    """Input is valid on its own but not acceptable for this operation."""


class RangeError(SkernelError):
    """Requested degree lies outside the trusted truncation range."""


class StructuralError(SkernelError):
    """A structural identity fails: d∘d ≠ 0, a simplicial identity, a shape, a commuting square."""


class InputError(SkernelError):
    """Malformed document. ``field`` and ``line`` locate the problem when known."""

    def __init__(self, message, field=None, line=None):
        self.field = field
        self.line = line
        where = []
        if field is not None:
            where.append(f"field '{field}'")
        if line is not None:
            where.append(f"line {line}")
        if where:
            message = f"{message} ({', '.join(where)})"
        super().__init__(message)
