"""Exception types raised by the solver pipeline."""


class QuasisolveError(Exception):
    """Base class for all package errors."""


class InvalidBase(QuasisolveError, ValueError):
    """A base key violates its invariants (zero base, bad angle, ...)."""


class InvalidEquation(QuasisolveError, ValueError):
    """Equation coefficients are malformed (empty, or a^(k) == 0)."""


class SingularSystem(QuasisolveError):
    """Elimination met a pivot below tolerance.

    ``warnings`` carries any near-resonance notes from multiplicity
    detection; a singular sliced system usually means the multiplicity
    was misjudged.
    """

    def __init__(self, message, warnings=()):
        self.warnings = tuple(warnings)
        if self.warnings:
            message = message + " [" + "; ".join(self.warnings) + "]"
        super().__init__(message)


class VerificationFailed(QuasisolveError):
    """The substitution residual of a computed solution is too large."""

    def __init__(self, message, residual=None, warnings=()):
        self.residual = residual
        self.warnings = tuple(warnings)
        if self.warnings:
            message = message + " [" + "; ".join(self.warnings) + "]"
        super().__init__(message)


class NoConsistentSolution(QuasisolveError):
    """The collocation ansatz cannot reproduce the right-hand side."""


class ParseError(QuasisolveError, ValueError):
    """Syntax or semantic error in an equation string, with position."""

    def __init__(self, message, text="", position=0):
        self.text = text
        self.position = position
        self.reason = message
        super().__init__(f"{message} at position {position}")

    def pretty(self):
        """Message followed by the source line and a caret under the error."""
        return f"error: {self.reason}\n  {self.text}\n  {' ' * self.position}^"
