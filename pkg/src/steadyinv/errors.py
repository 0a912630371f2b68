"""Exception hierarchy shared by all modules."""


class SteadyInvError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(SteadyInvError, ValueError):
    """Malformed user data (bad shapes, schema violations, bad config)."""


class SynthesisError(SteadyInvError, ArithmeticError):
    """Numerical or structural failure while computing a steady-state signal."""


class ZeroLeadingDenominator(SynthesisError, ZeroDivisionError):
    pass


class DimensionMismatch(ValidationError):
    pass


class ImproperTransferFunction(ValidationError):
    pass


class StepSizeTooLarge(ValidationError):
    pass


class PoleAtEvaluationPoint(SynthesisError):
    pass


class NotAsymptoticallyStable(SynthesisError):
    pass


class TransmissionZeroAtMode(SynthesisError):
    """|W(lambda)| is too small for a bounded input of the same class to exist."""


class NonFiniteState(SynthesisError):
    pass
