"""
Brute-force verification by fixed-step RK4 integration.

The plant is integrated from a zero state with the closed-form input evaluated
analytically at every RK4 stage time. Tracking is judged on the tail of the
horizon, after the transient excited by the zero initial state has decayed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np
from scipy.linalg import matrix_balance

from .errors import NonFiniteState, StepSizeTooLarge, ValidationError
from .lti import StateSpace, TransferFunction, ss_to_tf, tf_to_ss
from .signal import ModeSum, eval_signal
from .synth import SynthesisReport, steady_state_response, synthesize_input

__all__ = [
    "SimConfig",
    "Trace",
    "VerificationReport",
    "simulate",
    "verify_tracking",
    "check_response",
    "realize",
]

MAX_DT_NORM = 0.5


@dataclass(frozen=True)
class SimConfig:
    t_final: float = 50.0
    dt: float = 1e-3
    tail_fraction: float = 0.5
    tol: float = 1e-3
    x0: tuple[float, ...] | None = None

    def __post_init__(self):
        for name in ("t_final", "dt", "tail_fraction", "tol"):
            if not math.isfinite(getattr(self, name)):
                raise ValidationError(f"{name} must be finite")
        if not 0 < self.dt < self.t_final:
            raise ValidationError(f"need 0 < dt < t_final, got dt={self.dt}, t_final={self.t_final}")
        if not 0 < self.tail_fraction < 1:
            raise ValidationError(f"tail_fraction must be in (0, 1), got {self.tail_fraction}")
        if not self.tol > 0:
            raise ValidationError(f"tol must be positive, got {self.tol}")

    @property
    def n_samples(self) -> int:
        # guard against t_final/dt landing a hair below an integer
        return int(math.floor(self.t_final / self.dt * (1 + 1e-12))) + 1

    @property
    def tail_start(self) -> float:
        return self.tail_fraction * self.t_final


@dataclass(frozen=True)
class Trace:
    t: np.ndarray
    u: np.ndarray
    y: np.ndarray
    y_desired: np.ndarray
    abs_err: np.ndarray

    COLUMNS = ("t", "u", "y", "y_desired", "abs_err")

    def __len__(self) -> int:
        return len(self.t)

    def rows(self) -> Iterator[tuple[float, float, float, float, float]]:
        for row in zip(self.t, self.u, self.y, self.y_desired, self.abs_err):
            yield tuple(float(v) for v in row)

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            fh.write(",".join(self.COLUMNS) + "\n")
            for row in self.rows():
                fh.write(",".join(f"{v:.17g}" for v in row) + "\n")


@dataclass(frozen=True)
class VerificationReport:
    max_tail_rel_err: float
    passed: bool
    transient_end: float
    trace_summary: dict[str, float]
    trace: Trace = field(repr=False)
    synthesis: SynthesisReport | None = field(default=None, repr=False)


def realize(plant: TransferFunction | StateSpace) -> tuple[TransferFunction, StateSpace]:
    """
    Return both forms of a plant.

    A transfer function is realized in controllable canonical form and then
    diagonally balanced; companion matrices of fast plants have huge row sums
    that would otherwise trip the step-size guard. A user-supplied state-space
    model is simulated as given.
    """
    if isinstance(plant, StateSpace):
        return ss_to_tf(plant), plant
    ss = tf_to_ss(plant)
    if ss.n == 0:
        return plant, ss
    A, T = matrix_balance(ss.A, permute=False, separate=True)
    scale = T[0]
    return plant, StateSpace(A, ss.B / scale[:, None], ss.C * scale[None, :], ss.D)


def _rk4_step(A, b, x, u0, uh, u1, h):
    k1 = A @ x + b * u0
    k2 = A @ (x + 0.5 * h * k1) + b * uh
    k3 = A @ (x + 0.5 * h * k2) + b * uh
    k4 = A @ (x + h * k3) + b * u1
    return x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def simulate(ss: StateSpace, input: ModeSum, cfg: SimConfig = SimConfig(),
             reference: ModeSum | None = None) -> Trace:
    """
    Integrate the plant driven by ``input`` with classical RK4.

    The plant is linear, so one RK4 step is an affine map
    ``x -> Phi x + G [u(t), u(t + h/2), u(t + h)]``. ``Phi`` and ``G`` are
    obtained by pushing unit vectors through the ordinary RK4 stages, and the
    loop then only applies that map.

    ``reference`` fills the ``y_desired`` column (zero when omitted).
    """
    n, h = ss.n, cfg.dt
    norm = float(np.max(np.sum(np.abs(ss.A), axis=1))) if n else 0.0
    if h * norm > MAX_DT_NORM:
        raise StepSizeTooLarge(f"dt * ||A||_inf = {h * norm:.3g} exceeds {MAX_DT_NORM}")
    N = cfg.n_samples
    t = np.arange(N) * h
    u = np.asarray(eval_signal(input, t), dtype=float)
    d = float(ss.D[0, 0])

    if n:
        A, b, c = ss.A, ss.B[:, 0], ss.C[0]
        Phi = np.column_stack([_rk4_step(A, b, e, 0.0, 0.0, 0.0, h) for e in np.eye(n)])
        zero = np.zeros(n)
        G = np.column_stack([
            _rk4_step(A, b, zero, *units, h) for units in np.eye(3)
        ])
        u_half = np.asarray(eval_signal(input, t[:-1] + 0.5 * h), dtype=float)
        drive = G @ np.vstack([u[:-1], u_half, u[1:]])
        X = np.empty((N, n))
        x = np.zeros(n) if cfg.x0 is None else np.asarray(cfg.x0, dtype=float)
        if x.shape != (n,):
            raise ValidationError(f"x0 must have length {n}")
        X[0] = x
        with np.errstate(over="ignore", invalid="ignore"):
            for k in range(N - 1):
                x = Phi @ x + drive[:, k]
                X[k + 1] = x
            y = X @ c + d * u
        if not np.all(np.isfinite(X)):
            raise NonFiniteState("state overflowed; shorten t_final or slow the input growth")
    else:
        y = d * u

    y_ref = np.zeros(N) if reference is None else np.asarray(eval_signal(reference, t), dtype=float)
    return Trace(t, u, y, y_ref, np.abs(y - y_ref))


def _report(trace: Trace, cfg: SimConfig, synthesis=None) -> VerificationReport:
    tail = trace.t >= cfg.tail_start
    rel = trace.abs_err[tail] / np.maximum(1.0, np.abs(trace.y_desired[tail]))
    err = float(np.max(rel))
    summary = {
        "min_abs_err": float(np.min(trace.abs_err)),
        "max_abs_err": float(np.max(trace.abs_err)),
        "final_abs_err": float(trace.abs_err[-1]),
    }
    return VerificationReport(err, err <= cfg.tol, cfg.tail_start, summary, trace, synthesis)


def verify_tracking(plant: TransferFunction | StateSpace, desired: ModeSum,
                    cfg: SimConfig = SimConfig()) -> VerificationReport:
    """
    Synthesize the steady-state input for ``desired`` and check it by simulation.

    The tail error is ``|y - y_d| / max(1, |y_d|)`` maximized over
    ``t >= tail_fraction * t_final``.
    """
    tf, ss = realize(plant)
    synthesis = synthesize_input(tf, desired)
    trace = simulate(ss, synthesis.input, cfg, reference=desired)
    return _report(trace, cfg, synthesis)


def check_response(plant: TransferFunction | StateSpace, input: ModeSum,
                   cfg: SimConfig = SimConfig(), expected: ModeSum | None = None) -> VerificationReport:
    """Simulate ``input`` and compare against ``expected`` (default: the computed steady-state response)."""
    tf, ss = realize(plant)
    if expected is None:
        expected = steady_state_response(tf, input)
    trace = simulate(ss, input, cfg, reference=expected)
    return _report(trace, cfg)
