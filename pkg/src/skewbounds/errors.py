"""Exception types shared across the package.

Structural failures (bad matrices, broken internal consistency checks) get
dedicated classes so callers can distinguish them from plain argument errors,
which are raised as ValueError with a descriptive message.
"""


class SkewboundsError(Exception):
    """Base class for domain errors raised by this package."""


class NotHermitianError(SkewboundsError):
    """Matrix is not Hermitian within tolerance."""


class NotPSDError(SkewboundsError):
    """Matrix has an eigenvalue below the allowed negative tolerance."""


class TraceNotOneError(SkewboundsError):
    """Candidate density matrix does not have unit trace."""


class NotNormalizedError(SkewboundsError):
    """State vector does not have unit norm."""


class BlochNormExceededError(SkewboundsError):
    """Bloch vector lies outside the unit ball."""


class NoConvergenceError(SkewboundsError):
    """Eigensolver failed to converge."""


class DimensionMismatchError(SkewboundsError):
    """Operands have incompatible dimensions."""


class CrossCheckError(SkewboundsError):
    """Two independent constructions of the same quantity disagree."""


class ChainViolationError(SkewboundsError):
    """A bound chain violated its ordering invariant; signals a numerical bug."""


class SpaceTooLargeError(SkewboundsError):
    """Exhaustive search was requested on a space above the enumeration guard."""


class UnknownExampleError(SkewboundsError):
    """Requested built-in scenario number does not exist."""


class ScenarioParseError(SkewboundsError):
    """Scenario file failed to parse or validate; message carries a JSON path."""


class ExampleAssertionError(SkewboundsError):
    """A reproduction assertion failed; message lists theta and quantity."""
