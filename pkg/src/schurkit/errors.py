"""Exception hierarchy for schurkit.

Everything raised on purpose derives from SchurkitError so callers (and the
CLI exit-code mapping) can distinguish toolkit failures from programming
errors. Classes that signal invalid *arguments* also derive from ValueError.
"""


class SchurkitError(Exception):
    """Base class for all schurkit errors."""


class GridError(SchurkitError):
    """A sample grid violates a uniformity or size requirement."""


class AlignmentError(GridError):
    """Two objects that must share a grid do not."""


class DomainError(SchurkitError):
    """A requested range falls outside (or between) the sampled grid."""


class BracketError(SchurkitError):
    """Bisection bracket endpoints do not straddle a root."""


class IntegrationError(SchurkitError):
    """The integrator produced a non-finite state or excessive frame drift."""


class ProfileError(SchurkitError, ValueError):
    """A curvature profile or reconstruction input is invalid."""


class JumpAngleError(ProfileError):
    """A tangent-jump angle lies outside [0, pi]."""


class NormalizationError(SchurkitError, ValueError):
    """A vector that must be unit (or orthonormal) is not."""


class ProjectionError(SchurkitError):
    """Cone projection is undefined: the curve dips below the plane horizon."""


class DegenerateSpeedError(SchurkitError):
    """A projected curve has (numerically) vanishing speed."""


class DegenerateTriangleError(SchurkitError):
    """Hinge comparison requested for side lengths violating the triangle inequality."""


class CausalError(SchurkitError):
    """A vector or chord has the wrong causal type for the requested operation."""


class HypothesisViolationError(SchurkitError):
    """A geometric precondition that valid inputs guarantee failed; the input is bad."""


class SpecError(SchurkitError, ValueError):
    """A curve-specification file violates the input schema."""
