"""Exception hierarchy shared by every module of the package."""


class CurvedTTWError(Exception):
    """Base class for all errors raised by curvedttw."""


class PoleError(CurvedTTWError, ArithmeticError):
    """Evaluation at (or too near) a singularity of a potential or of Tan_k."""


class VariantError(CurvedTTWError, TypeError):
    """An invariant was requested for a potential variant that does not carry it."""


class NegativeJ2(CurvedTTWError, ValueError):
    """The separation constant J2 is not positive, so sqrt(J2) is not real."""


class IntegrationError(CurvedTTWError, RuntimeError):
    """Base class for failures of the time integrators."""


class StepUnderflow(IntegrationError):
    pass


class WallHit(IntegrationError):
    pass


class NoConvergence(IntegrationError):
    pass


class EvalError(CurvedTTWError, RuntimeError):
    """An observable faulted while its derivatives were being taken."""


class ConfigError(CurvedTTWError, ValueError):
    """Malformed or inadmissible run configuration."""
