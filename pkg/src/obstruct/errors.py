"""Exception hierarchy.

Errors split into two groups that the CLI maps to different exit codes:
``MathError`` subclasses signal that the input is mathematically invalid
(status ``invalid``), everything else under ``ObstructError`` signals a
usage or resource problem (status ``error``).
"""


class ObstructError(Exception):
    """Base class for all package errors."""


class MathError(ObstructError):
    """The input fails a mathematical condition."""


class PolySyntaxError(ObstructError, ValueError):
    def __init__(self, text, position, expected):
        self.text = text
        self.position = position
        self.expected = expected
        super().__init__(f"at position {position}: expected {expected} in {text!r}")


class UnknownVariable(ObstructError, ValueError):
    def __init__(self, name, position=None):
        self.name = name
        self.position = position
        where = "" if position is None else f" at position {position}"
        super().__init__(f"unknown variable {name!r}{where}")


class ResourceBudgetExceeded(ObstructError):
    pass


class NotAUnit(MathError):
    pass


class NotOnQuadric(MathError):
    def __init__(self, residual, message=None):
        self.residual = residual
        super().__init__(message or f"point is not on the quadric, residual {residual}")


class NotOrthogonal(MathError):
    def __init__(self, residual):
        self.residual = residual
        super().__init__("matrix is not orthogonal for the split form")


class IllegalIndices(MathError, ValueError):
    pass


class NotLocal(MathError):
    pass


class InternalUnitFailure(ObstructError):
    pass


class NotComaximal(MathError):
    def __init__(self, gb=None):
        self.gb = gb
        super().__init__("ideals are not comaximal")


class ChainBroken(MathError):
    def __init__(self, junction, message):
        self.junction = junction
        super().__init__(f"junction {junction}: {message}")


class NotIdentityAtZero(MathError):
    pass


class NotSurjectiveModSquare(MathError):
    def __init__(self, generator, normal_form=None):
        self.generator = generator
        self.normal_form = normal_form
        super().__init__(f"generator {generator} is not in (f) + I^2")


class OrientationInvalid(ObstructError):
    pass


class CertificateFailure(ObstructError):
    pass


class BudgetExhausted(ObstructError):
    pass


class ComaximalityFailsOnPath(MathError):
    pass


class UnknownSuite(ObstructError):
    pass


class CertificateInvalid(MathError):
    """Raised by the independent checker; carries the first failing check."""

    def __init__(self, check):
        self.check = check
        super().__init__(check)
