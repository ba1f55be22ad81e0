"""Exception types shared across the package."""


class ProbTeamError(Exception):
    """Base class for all errors raised by probteam."""


class NonemptyRequired(ProbTeamError, ValueError):
    """An operation needs a team with nonempty support."""


class VarsNotInDomain(ProbTeamError, ValueError):
    """A formula or restriction mentions variables the team does not bind."""

    def __init__(self, missing, domain=()):
        self.missing = tuple(sorted(missing))
        self.domain = tuple(domain)
        super().__init__(
            f"variables {', '.join(self.missing)} not in domain "
            f"{{{', '.join(self.domain)}}}"
        )


class FormulaSyntaxError(ProbTeamError, ValueError):
    """Parse failure, carrying the offending character offset."""

    def __init__(self, message, text="", position=0):
        self.text = text
        self.position = position
        super().__init__(f"{message} at position {position}")

    def caret(self):
        return f"{self.text}\n{' ' * self.position}^"


class DialectError(ProbTeamError, ValueError):
    """A construct is not allowed in the requested logic."""


class ArityMismatch(ProbTeamError, ValueError):
    pass


class ShapeError(ProbTeamError, ValueError):
    """A real-arithmetic sentence does not have the shape the witness checker expects."""


class EvalError(ProbTeamError, ArithmeticError):
    pass


class DivisionByZero(EvalError):
    """Defined nonzero numerator over a defined zero denominator."""
