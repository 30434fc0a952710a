class ContactLabError(Exception):
    """Base class for all package errors."""


class JacobiError(ContactLabError):
    """An analysis was asked to run on structure constants that violate Jacobi."""

    def __init__(self, violations):
        self.violations = violations
        i, j, k, _ = violations[0]
        super().__init__(f"Jacobi identity fails ({len(violations)} triples), first at ({i}, {j}, {k})")


class DegenerateError(ContactLabError):
    """A form that was required to be contact or symplectic is degenerate."""


class NotApplicable(ContactLabError):
    """The requested step does not apply in this regime."""


class ConstructionError(ContactLabError):
    """A construction precondition (gate) was violated."""


class InconsistencyError(ContactLabError):
    """Two independent routes to the same quantity disagree."""


class ParseError(ContactLabError):
    """An algebra file is malformed; the message names the offending field."""
