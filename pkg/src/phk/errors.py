"""Exception hierarchy shared by all phk modules."""

from __future__ import annotations


class PhkError(Exception):
    """Base class for all errors raised by this package."""


class VariableMismatchError(PhkError):
    """Operands belong to polynomial rings with different variable counts."""


class GradingError(PhkError):
    """A grading is missing, malformed, or incompatible with the operation."""


class NotPoissonError(PhkError):
    """The bracket table violates the Jacobi identity.

    Carries the offending coordinate triples so reports can show witnesses.
    """

    def __init__(self, failures):
        self.failures = tuple(failures)
        triples = ", ".join(f"({i},{j},{k})" for i, j, k, _ in self.failures)
        super().__init__(f"Jacobi identity fails on triples {triples}")


class NotPoissonDerivationError(PhkError):
    """A map of generators does not extend to a Poisson derivation."""


class PresentationError(PhkError):
    """A filtered presentation is structurally invalid."""


class CatalogError(PhkError):
    """Unknown catalog name or invalid builder parameters."""


class ExprSyntaxError(PhkError):
    """Expression text failed to parse; ``pos`` is the 0-based offset."""

    def __init__(self, message: str, pos: int):
        self.pos = pos
        super().__init__(f"{message} (at position {pos})")


class SpecFormatError(PhkError):
    """An on-disk algebra/presentation file is malformed."""
