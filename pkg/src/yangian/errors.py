"""Exception hierarchy shared across the package."""


class YangianError(Exception):
    """Base class for errors raised by this package."""


class ParseError(YangianError, ValueError):
    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class PadeError(YangianError, ValueError):
    """No rational function of the allowed degree reproduces a series."""


class NonRationalSpectrum(YangianError, ValueError):
    """A restricted matrix has eigenvalues outside the rationals."""


class InconsistentEigenvalues(YangianError, ValueError):
    """An eigenvalue sequence is not the expansion of P(u+1)/P(u)."""


class NotHighestWeight(YangianError, ValueError):
    pass


class SubspaceNotInvariant(YangianError, ValueError):
    pass


class InexactDivision(YangianError, ArithmeticError):
    pass


class TheoremViolation(YangianError, AssertionError):
    """A computed object contradicts a proven statement.

    Never caught inside the library: it always reaches the caller.
    """
