"""Exception hierarchy for the toolkit.

Two branches matter to callers: ``InputError`` (the caller handed us
something malformed, CLI exit code 1) and ``CheckFailure`` (a numerical
verification the toolkit performs did not hold, CLI exit code 2).
"""


class CylembedError(Exception):
    """Base class for all toolkit-specific errors."""


class InputError(CylembedError, ValueError):
    """Invalid input data or parameters."""


class CheckFailure(CylembedError):
    """A verification step failed; results cannot be certified."""


# core
class ZeroPolynomial(InputError):
    """Root finding requested for the identically-zero polynomial."""


class ZeroOnCurve(InputError):
    """A sampled value lies (numerically) on the zero set."""


class Undersampled(InputError):
    """Consecutive argument steps too large for unambiguous tracking."""


# inner
class DegreeMismatch(CheckFailure):
    """Zero count and boundary winding disagree."""


class CriticalPointNearBoundary(InputError):
    """A critical point sits too close to the boundary circle."""


# hyperelliptic
class DegenerateCurve(InputError):
    """Branch points are not pairwise distinct."""


class WindingMismatch(CheckFailure):
    """Computed boundary winding contradicts the branch-point count."""


# sigma
class G1Invalid(InputError):
    """Candidate first component violates the critical-fiber conditions."""


class SeparationImpossible(CheckFailure):
    """No low-degree correction separates the exceptional fibers."""


class SeparationViolated(CheckFailure):
    """Two distinct fiber points are not separated by either component."""


class NoAvoidingGraph(CheckFailure):
    """Greedy selection could not achieve a positive avoidance margin."""


class NoRoundDisc(CheckFailure):
    """No round disc centered at the arc midpoint fits inside the verified region."""


class InjectivityFailure(CheckFailure):
    """Two distinct sample points share an image."""

    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


# obstruction
class ZeroOnCircle(CheckFailure):
    """A test function vanishes on every retried counting circle."""


# rh
class IllPosedSampling(InputError):
    """Collocation system has fewer equations than unknowns."""


class UnstableDimension(CheckFailure):
    """Kernel count changes under mode refinement."""


# deform
class VanishingCoefficient(CheckFailure):
    """Linearized boundary coefficient vanishes somewhere."""


class NoConvergence(CheckFailure):
    """Newton continuation did not reach tolerance."""

    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = list(trace) if trace is not None else []


class OutOfSampleFailure(CheckFailure):
    """Residual blows up on a finer boundary grid."""


class InteriorEscape(CheckFailure):
    """An interior point maps outside the perturbed domain."""
