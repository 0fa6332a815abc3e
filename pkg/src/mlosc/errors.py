"""Exception hierarchy for the oscillator library."""


class MloscError(Exception):
    """Base class for all library errors."""


class DomainError(MloscError, ValueError):
    """A parameter set or position violates its admissible domain."""


class UnreachableError(MloscError, ValueError):
    """Requested position is classically forbidden (squared velocity < 0)."""


class BranchMismatchError(MloscError, ValueError):
    """Position lies on the other side of a barrier / turning point."""


class InconsistentAmplitudeError(MloscError, ValueError):
    """(A, B) pair incompatible with the requested solution family."""


class MassSingularityError(MloscError, ValueError):
    """Effective mass factor 1 + lambda*x^2 is not positive."""


class StepSizeUnderflowError(MloscError, RuntimeError):
    """Adaptive integrator step collapsed (approach to a domain wall)."""


class ConvergenceError(MloscError, RuntimeError):
    """Iterative inversion failed to reach tolerance."""
