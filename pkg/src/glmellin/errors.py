"""Exception hierarchy.

Every failure the library can signal derives from :class:`GlMellinError` so
callers (and the CLI) can map errors to structured output without catching
unrelated exceptions.
"""


class GlMellinError(Exception):
    """Base class for all library errors."""

    #: short machine-readable tag used in CLI error payloads
    code = "error"


class PoleError(GlMellinError, ValueError):
    """A gamma function was evaluated at (or too close to) one of its poles."""

    code = "pole"


class GammaPole(PoleError):
    """A closed-form residue formula hit a gamma pole (non-generic parameters)."""

    code = "gamma_pole"


class DegenerateDenominator(GlMellinError, ZeroDivisionError):
    """A rational coefficient has a (numerically) vanishing denominator."""

    code = "degenerate_denominator"


class ContourError(GlMellinError):
    """No vertical contour separates the poles with the requested margin."""

    code = "contour"


class NonConvergence(GlMellinError):
    """Quadrature refinement budget exhausted before reaching the tolerance."""

    code = "nonconvergence"


class PoleHit(GlMellinError):
    """The requested evaluation point is a pole of the Mellin transform."""

    code = "pole_hit"

    def __init__(self, message, classification=None):
        super().__init__(message)
        self.classification = classification


class HypothesisFailure(GlMellinError):
    """A genericity hypothesis of every admissible shift relation fails."""

    code = "hypothesis_failure"


class AmbiguousClassification(GlMellinError):
    """Two pole families coincide within tolerance at the given point."""

    code = "ambiguous_classification"


class CircleTooLarge(GlMellinError):
    """A residue circle would enclose a second singularity."""

    code = "circle_too_large"


class ConstraintViolation(GlMellinError, ValueError):
    """Input violates an equality constraint required by an identity."""

    code = "constraint_violation"


class PreconditionViolation(GlMellinError, ValueError):
    """Input violates a documented precondition."""

    code = "precondition_violation"


class IllConditioned(GlMellinError):
    """Interpolation data too close to singular to trust."""

    code = "ill_conditioned"
