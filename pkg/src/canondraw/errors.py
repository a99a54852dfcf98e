"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class CanonDrawError(Exception):
    pass


class OverlapError(CanonDrawError, ValueError):
    pass


class MissingVertexError(CanonDrawError, KeyError):
    pass


class UnknownEdgeError(CanonDrawError, KeyError):
    pass


class UnknownVertexError(CanonDrawError, KeyError):
    pass


class NotAdjacentError(CanonDrawError, ValueError):
    pass


class NotABijectionError(CanonDrawError, ValueError):
    pass


class InvalidDrawingError(CanonDrawError, ValueError):
    """Raised by loaders when a drawing fails local validation."""

    def __init__(self, violations):
        self.violations = list(violations)
        lines = "; ".join(str(v) for v in self.violations[:5])
        super().__init__(f"{len(self.violations)} violation(s): {lines}")


class InvalidTemplateError(CanonDrawError, ValueError):
    pass


class UnrealizableTemplateError(CanonDrawError):
    pass


class BudgetExceeded(CanonDrawError):
    """Search gave up after the configured number of node expansions.

    Never to be read as a negative answer.
    """

    def __init__(self, budget: int):
        self.budget = budget
        super().__init__(f"search budget of {budget} expansions exhausted")


class NotFound(CanonDrawError):
    """Exact search finished without a certificate."""

    def __init__(self, message: str = "no certificate found", colour=None):
        self.colour = colour
        super().__init__(message)


class SimplicityViolation(CanonDrawError):
    pass


class TransitivityViolation(CanonDrawError):
    pass


class WitnessMismatchError(CanonDrawError, ValueError):
    pass
