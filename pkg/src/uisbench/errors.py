"""Shared exception types for the workbench."""

from __future__ import annotations


class UisError(Exception):
    """Base class for all workbench errors."""


class ValidationError(UisError):
    """One or more fields violate their declared invariants.

    ``violations`` is a list of (field, message) pairs so callers (and the
    HTTP layer) can report problems field by field.
    """

    def __init__(self, violations: list[tuple[str, str]] | str, field: str | None = None):
        if isinstance(violations, str):
            violations = [(field or "", violations)]
        self.violations = violations
        msgs = "; ".join(f"{f}: {m}" if f else m for f, m in violations)
        super().__init__(msgs)

    @property
    def field(self) -> str | None:
        return self.violations[0][0] or None


class CombinationError(UisError):
    """A belief combination is undefined for the given operands."""


class TotalConflictError(CombinationError):
    """Dempster combination of fully conflicting mass functions."""


class DegeneratePriorError(UisError):
    """A prior probability of exactly 0 or 1 cannot be updated by odds."""


class UnrepresentableReadingError(UisError):
    """Reading so extreme that every mixture density underflows to zero."""


class DegenerateTableError(UisError):
    """A conditional is requested on a zero-probability conditioning event."""


class PhaseError(UisError):
    """Session operation called in the wrong protocol phase."""

    def __init__(self, message: str, phase: str):
        super().__init__(message)
        self.phase = phase


class UnbalancedDesignError(UisError):
    """Mixed-design ANOVA requires equal group sizes and trial counts."""
