"""Steady-state input synthesis for asymptotically stable SISO LTI systems."""

from .errors import (
    DimensionMismatch,
    ImproperTransferFunction,
    NonFiniteState,
    NotAsymptoticallyStable,
    PoleAtEvaluationPoint,
    StepSizeTooLarge,
    SteadyInvError,
    SynthesisError,
    TransmissionZeroAtMode,
    ValidationError,
    ZeroLeadingDenominator,
)
from .lti import (
    ModeDerivatives,
    Stability,
    StateSpace,
    TransferFunction,
    eval_tf,
    is_asymptotically_stable,
    ss_to_tf,
    tf_taylor_at,
    tf_to_ss,
)
from .poly import Polynomial, eval_poly, series_div, taylor_shift
from .signal import CanonicalMode, ModeSum, SignalTerm, canonicalize, eval_signal, to_terms
from .sim import SimConfig, Trace, VerificationReport, check_response, simulate, verify_tracking
from .synth import (
    SynthesisReport,
    steady_state_response,
    synthesize_input,
    synthesize_polynomial_paper,
)

__version__ = "0.1.0"
