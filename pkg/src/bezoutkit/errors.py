"""Exception hierarchy shared by the toolkit."""


class BezoutkitError(Exception):
    """Base class for every error raised by bezoutkit."""


class RingMismatch(BezoutkitError, ValueError):
    """Operands live in different polynomial rings."""


class InexactDivision(BezoutkitError, ArithmeticError):
    """The divisor does not divide the dividend exactly."""


class NonSquareMatrix(BezoutkitError, ValueError):
    pass


class ParseError(BezoutkitError, ValueError):
    """Malformed input text.

    ``line`` and ``column`` are 1-based; ``expected`` is the set of token
    descriptions that would have been accepted at that position.
    """

    def __init__(self, message, line=1, column=1, expected=()):
        self.message = message
        self.line = line
        self.column = column
        self.expected = tuple(sorted(expected))
        detail = f"{message} at line {line}, column {column}"
        if self.expected:
            detail += f" (expected one of: {', '.join(self.expected)})"
        super().__init__(detail)


class UnknownVariable(ParseError):
    def __init__(self, name, line=1, column=1):
        self.name = name
        super().__init__(f"unknown variable {name!r}", line, column)


class ArityMismatch(ParseError):
    """Number of component polynomials differs from the number of variables."""


class MathPreconditionError(BezoutkitError):
    """A mathematical hypothesis required by an operation does not hold."""


class NotFiniteFibers(MathPreconditionError):
    """The ideal (f - q) is neither zero-dimensional nor the unit ideal."""


class UnitIdeal(MathPreconditionError):
    """The quotient ring is zero, so it has no monomial basis."""


class NotDruzkowski(MathPreconditionError):
    def __init__(self, jacobian):
        self.jacobian = jacobian
        super().__init__(f"Jacobian is not the constant 1: {jacobian}")


class SearchSpaceTooLarge(MathPreconditionError):
    pass
