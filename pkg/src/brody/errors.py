"""Exception types shared across the library.

Every error carries a stable machine-readable ``code`` (the class name unless
overridden) which the CLI propagates under the ``"error"`` key in JSON output.
"""


class Error(Exception):
    """Base class for all library errors."""

    code: str = ""

    def __init__(self, message: str = ""):
        super().__init__(message)
        if not self.code:
            self.code = type(self).__name__


# algebra

class IndeterminateAtPoint(Error):
    """Numerator and denominator vanish to full depth at the point."""


class ZeroFunction(Error):
    """Operation undefined for the identically-zero function."""


class ZeroDenominator(Error):
    """Denominator is the zero polynomial."""


# expr

class ParseError(Error):
    """Syntax error with byte offset and the set of tokens that were expected."""

    code = "SyntaxError"

    def __init__(self, message: str, offset: int, expected: frozenset[str]):
        super().__init__(message)
        self.offset = offset
        self.expected = frozenset(expected)


# spherical

class NumericOverflow(Error):
    """Both the function and its derivative overflowed at the sample point."""


# classify

class LambdaOne(Error):
    """The two-exponential family degenerates at lambda = 1."""


class OutOfCase(Error):
    """Parameter outside the cases the bound covers."""


class ConstantMap(Error):
    """Operation undefined for constant maps."""


# products

class ZeroInSupport(Error):
    """Divisor support touches the origin."""


class TolUnreachable(Error):
    """The finite divisor cannot meet the requested tolerance."""

    def __init__(self, message: str, value=None, tail_bound=None):
        super().__init__(message)
        self.value = value
        self.tail_bound = tail_bound


class MultiplicityNotOne(Error):
    """Operation requires a simple (multiplicity-one) divisor point."""


class SeparationViolated(Error):
    """Divisor does not satisfy the required modulus separation."""


class LambdaNotGreaterOne(Error):
    """Separation ratio must exceed 1."""


# divisors

class NotUnitModulus(Error):
    """Direction vector is not on the unit circle."""


class PreconditionFailed(Error):
    """Growth-bound precondition could not be verified by sampling."""


# nevanlinna

class ZeroAtOrigin(Error):
    """Proximity/characteristic require f(0) != 0."""


class ZeroOnCircle(Error):
    """Integration circle passes through (or within 1e-6 of) a zero."""


class DivisorMismatch(Error):
    """Function does not vanish on the claimed divisor support."""


class InsufficientSamples(Error):
    """Too few usable samples for a stable estimate."""


# cli

class UnknownExperiment(Error):
    """Experiment name not in the registry."""
