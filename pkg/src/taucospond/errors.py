"""Exception hierarchy.

Errors split into two families that the CLI maps to distinct exit codes:
mathematical/input errors and resource refusals (:class:`BudgetExceeded`).
"""

from __future__ import annotations


class TaucospondError(Exception):
    """Base class for every error raised by this package."""


class SpecSyntaxError(TaucospondError):
    """Malformed algebra document."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


class AlgebraError(TaucospondError):
    """Semantically invalid algebra (unknown vertex, non-parallel relation, ...)."""


class InfiniteDimensionalError(AlgebraError):
    """The quotient of the path algebra could not be certified finite dimensional."""


class FieldModeError(TaucospondError):
    """Operation needs a prime field (it enumerates field elements)."""


class DimensionMismatch(TaucospondError, ValueError):
    pass


class BudgetExceeded(TaucospondError):
    """An exhaustive search would exceed the configured state budget."""


class PreconditionError(TaucospondError):
    """Inputs violate a documented precondition."""


class IncompleteInventoryError(TaucospondError):
    """An operation needing the full list of indecomposables got a partial one."""


class AssertionFailure(TaucospondError):
    """A mathematical consistency check failed (implementation bug or bad input)."""
