"""
Steady-state forward map and its inverse for exponential-polynomial signals.

For a stable plant ``W`` and an input mode ``sum_m p_m t^m e^(lambda t)``, the
forced response is the mode at the same ``lambda`` with

    q_n = sum_{m=n}^{K} p_m * binom(m, m-n) * W^(m-n)(lambda).

The map is upper triangular with diagonal ``W(lambda)``, so the input that
produces a desired output follows by back-substitution from the top power.
Polynomial, sinusoidal, exponential and pseudo-periodic signals are all special
cases (``lambda`` real or complex, degree zero or not).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .errors import NotAsymptoticallyStable, TransmissionZeroAtMode, ValidationError
from .lti import Stability, TransferFunction, is_asymptotically_stable, tf_taylor_at
from .signal import MAX_DEGREE, CanonicalMode, ModeSum

__all__ = [
    "ZERO_GAIN_TOL",
    "WARN_GAIN_TOL",
    "SynthesisReport",
    "steady_state_response",
    "synthesize_input",
    "synthesize_polynomial_paper",
    "binomial_table",
]

log = logging.getLogger(__name__)

ZERO_GAIN_TOL = 1e-9
WARN_GAIN_TOL = 1e-6


def binomial_table(n: int) -> list[list[float]]:
    """Pascal triangle in doubles; exact for ``n <= 30``."""
    rows = [[1.0]]
    for i in range(1, n + 1):
        prev = rows[-1]
        rows.append([1.0] + [prev[j - 1] + prev[j] for j in range(1, i)] + [1.0])
    return rows


_BINOM = binomial_table(MAX_DEGREE)


@dataclass(frozen=True)
class SynthesisReport:
    input: ModeSum
    per_mode_gain: dict[complex, float]
    warnings: list[str] = field(default_factory=list)
    amplification: float = 0.0


def _require_stable(tf: TransferFunction) -> None:
    verdict = is_asymptotically_stable(tf)
    if verdict is not Stability.STABLE:
        raise NotAsymptoticallyStable(f"plant is {verdict.value.lower()}: {tf!r}")


def _falling_weights(tf: TransferFunction, lam: complex, degree: int) -> list[complex]:
    """Derivatives ``W^(i)(lam)`` for ``i = 0..degree``."""
    d = tf_taylor_at(tf, lam, degree)
    out = []
    fact = 1.0
    for i, c in enumerate(d.coeffs):
        if i > 0:
            fact *= i
        out.append(c * fact)
    return out


def _forward_mode(derivs: list[complex], poly: tuple[complex, ...]) -> list[complex]:
    K = len(poly) - 1
    q = []
    for n in range(K + 1):
        acc = 0j
        for m in range(n, K + 1):
            acc += poly[m] * _BINOM[m][m - n] * derivs[m - n]
        q.append(acc)
    return q


def _check_degree(mode: CanonicalMode) -> None:
    if mode.degree > MAX_DEGREE:
        raise ValidationError(f"mode degree {mode.degree} exceeds {MAX_DEGREE}")


def steady_state_response(tf: TransferFunction, input: ModeSum) -> ModeSum:
    """
    Forced steady-state output of ``tf`` driven by ``input``.

    Examples
    --------
    >>> from steadyinv.signal import canonicalize, SignalTerm, to_terms
    >>> y = steady_state_response(TransferFunction([1], [1, 1]), canonicalize([SignalTerm(1, degree=2)]))
    >>> [c.real for c in y.modes[0].poly]
    [2.0, -2.0, 1.0]
    """
    _require_stable(tf)
    out = []
    for mode in input.modes:
        _check_degree(mode)
        derivs = _falling_weights(tf, mode.lam, mode.degree)
        out.append((mode.lam, _forward_mode(derivs, mode.poly)))
    return ModeSum.from_modes(out)


def synthesize_input(tf: TransferFunction, desired: ModeSum) -> SynthesisReport:
    """
    Steady-state input whose forced response equals ``desired``.

    Each mode is solved independently by back-substitution on the triangular
    forward map. Raises :class:`TransmissionZeroAtMode` when ``|W(lambda)|`` is
    below ``ZERO_GAIN_TOL``; gains below ``WARN_GAIN_TOL`` only produce a warning.
    """
    _require_stable(tf)
    pieces = []
    gains: dict[complex, float] = {}
    warnings: list[str] = []
    for mode in desired.modes:
        _check_degree(mode)
        derivs = _falling_weights(tf, mode.lam, mode.degree)
        w0 = derivs[0]
        gain = abs(w0)
        if gain < ZERO_GAIN_TOL:
            raise TransmissionZeroAtMode(
                f"|W({mode.lam})| = {gain:.3g} < {ZERO_GAIN_TOL:g}; "
                "no bounded steady-state input of this class exists"
            )
        if gain < WARN_GAIN_TOL:
            msg = f"mode {mode.lam}: near transmission zero, amplification = {1 / gain:.3g}"
            log.warning(msg)
            warnings.append(msg)
        gains[mode.lam] = gain
        K = mode.degree
        p = [0j] * (K + 1)
        for n in range(K, -1, -1):
            acc = mode.poly[n]
            for m in range(n + 1, K + 1):
                acc -= p[m] * _BINOM[m][m - n] * derivs[m - n]
            p[n] = acc / w0
        pieces.append((mode.lam, p))
    amplification = max((1.0 / g for g in gains.values()), default=0.0)
    return SynthesisReport(ModeSum.from_modes(pieces), gains, warnings, amplification)


def synthesize_polynomial_paper(tf: TransferFunction, k: int) -> ModeSum:
    """
    Input tracking ``t^k`` by successive cancellation of residual terms.

    Start from ``t^k / W(0)``, then repeatedly pick the highest surviving power
    of the output residual and cancel it with a scaled lower-degree input,
    subtracting that input's full steady-state response each time.
    """
    if not 0 <= k <= MAX_DEGREE:
        raise ValidationError(f"k must be in [0, {MAX_DEGREE}]")
    _require_stable(tf)
    derivs = _falling_weights(tf, 0j, k)
    c0 = derivs[0]
    if abs(c0) < ZERO_GAIN_TOL:
        raise TransmissionZeroAtMode(f"DC gain |W(0)| = {abs(c0):.3g} is too small")
    residual = [0j] * k + [1 + 0j]
    u = [0j] * (k + 1)
    for n in range(k, -1, -1):
        un = residual[n] / c0
        u[n] += un
        piece = (0j,) * n + (un,)
        for i, q in enumerate(_forward_mode(derivs, piece)):
            residual[i] -= q
    return ModeSum.from_modes([(0j, u)])
