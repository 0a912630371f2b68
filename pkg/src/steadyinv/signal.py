"""
Real exponential-polynomial signals and their complex-mode representation.

A user-facing term is ``Y * t^k * e^(a t) * sin(w t + psi)``; with ``w == 0``
it means ``Y * t^k * e^(a t)`` and the phase is ignored. Internally every
signal is a sum of modes ``lambda = a + j|w|`` carrying a polynomial envelope
``sum_m c_m t^m``. An oscillatory mode contributes ``Im{sum_m c_m t^m e^(lambda t)}``,
a non-oscillatory one contributes ``sum_m c_m t^m e^(a t)`` with real ``c_m``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import ValidationError

__all__ = [
    "MAX_DEGREE",
    "SignalTerm",
    "CanonicalMode",
    "ModeSum",
    "canonicalize",
    "eval_signal",
    "eval_terms",
    "to_terms",
]

MAX_DEGREE = 30


@dataclass(frozen=True)
class SignalTerm:
    amplitude: float
    degree: int = 0
    growth: float = 0.0
    omega: float = 0.0
    phase: float = 0.0

    def __post_init__(self):
        if not isinstance(self.degree, (int, np.integer)) or isinstance(self.degree, bool):
            raise ValidationError(f"degree must be an integer, got {self.degree!r}")
        if not 0 <= self.degree <= MAX_DEGREE:
            raise ValidationError(f"degree must be in [0, {MAX_DEGREE}], got {self.degree}")
        for name in ("amplitude", "growth", "omega", "phase"):
            if not math.isfinite(getattr(self, name)):
                raise ValidationError(f"{name} must be finite")

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        env = self.amplitude * t**self.degree * np.exp(self.growth * t)
        if self.omega == 0:
            return env
        return env * np.sin(self.omega * t + self.phase)


@dataclass(frozen=True)
class CanonicalMode:
    lam: complex
    poly: tuple[complex, ...]

    @property
    def oscillatory(self) -> bool:
        return self.lam.imag > 0

    @property
    def degree(self) -> int:
        return len(self.poly) - 1

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        env = np.zeros_like(t, dtype=complex)
        for c in reversed(self.poly):
            env = env * t + c
        if self.oscillatory:
            return np.imag(env * np.exp(self.lam * t))
        return np.real(env) * np.exp(self.lam.real * t)


@dataclass(frozen=True)
class ModeSum:
    """Sum of modes with pairwise distinct ``lambda``."""

    modes: tuple[CanonicalMode, ...] = field(default_factory=tuple)

    def __post_init__(self):
        lams = [m.lam for m in self.modes]
        if len(set(lams)) != len(lams):
            raise ValidationError("modes must have distinct lambda")

    def __call__(self, t):
        return eval_signal(self, t)

    def __iter__(self):
        return iter(self.modes)

    def __len__(self) -> int:
        return len(self.modes)

    def mode(self, lam: complex) -> CanonicalMode | None:
        for m in self.modes:
            if m.lam == lam:
                return m
        return None

    @classmethod
    def from_modes(cls, modes: Iterable[tuple[complex, Sequence[complex]]]) -> ModeSum:
        """Build from ``(lambda, coeffs)`` pairs, merging repeats and dropping zeros."""
        acc: dict[complex, list[complex]] = {}
        for lam, coeffs in modes:
            lam = complex(lam)
            if lam.imag < 0:
                raise ValidationError("mode frequency must be nonnegative")
            cur = acc.setdefault(lam, [])
            for i, c in enumerate(coeffs):
                if i >= len(cur):
                    cur.append(0j)
                cur[i] += complex(c)
        out = []
        for lam in sorted(acc, key=lambda z: (z.real, z.imag)):
            coeffs = acc[lam]
            if lam.imag == 0:
                coeffs = [complex(c.real) for c in coeffs]
            while coeffs and coeffs[-1] == 0:
                coeffs.pop()
            if coeffs:
                out.append(CanonicalMode(lam, tuple(coeffs)))
        return cls(tuple(out))


def canonicalize(terms: Iterable[SignalTerm]) -> ModeSum:
    """
    Merge real signal terms into complex modes.

    Uses ``Y sin(w t + psi) = Im{Y e^(j psi) e^(j w t)}``; a negative frequency is
    folded with ``sin(-w t + psi) = -sin(w t - psi)``.

    Example:
        >>> ms = canonicalize([SignalTerm(1, omega=1), SignalTerm(1, omega=1, phase=np.pi / 2)])
        >>> ms.modes[0].lam, np.round(ms.modes[0].poly[0], 12)
        (1j, (1+1j))
    """
    pieces = []
    for term in terms:
        if term.amplitude == 0:
            continue
        if term.omega == 0:
            lam, c = complex(term.growth, 0.0), complex(term.amplitude)
        elif term.omega > 0:
            lam = complex(term.growth, term.omega)
            c = term.amplitude * complex(math.cos(term.phase), math.sin(term.phase))
        else:
            lam = complex(term.growth, -term.omega)
            c = -term.amplitude * complex(math.cos(term.phase), -math.sin(term.phase))
        coeffs = [0j] * term.degree + [c]
        pieces.append((lam, coeffs))
    return ModeSum.from_modes(pieces)


def eval_signal(ms: ModeSum, t):
    """Evaluate the real signal at scalar or array ``t``."""
    t_arr = np.asarray(t, dtype=float)
    out = np.zeros_like(t_arr)
    for m in ms.modes:
        out = out + m(t_arr)
    return float(out) if np.ndim(t) == 0 else out


def eval_terms(terms: Iterable[SignalTerm], t):
    """Direct sum of real terms, bypassing the mode representation."""
    t_arr = np.asarray(t, dtype=float)
    out = np.zeros_like(t_arr)
    for term in terms:
        out = out + term(t_arr)
    return float(out) if np.ndim(t) == 0 else out


def to_terms(ms: ModeSum) -> list[SignalTerm]:
    """
    Closed-form real terms of a mode sum.

    Oscillatory coefficients ``r e^(j theta)`` become ``r t^m e^(a t) sin(w t + theta)``
    with ``r >= 0`` and ``theta`` in ``(-pi, pi]``. Non-oscillatory coefficients keep
    their sign in the amplitude since the phase carries no meaning there.
    """
    terms = []
    for m in ms.modes:
        a, w = m.lam.real, m.lam.imag
        for k, c in enumerate(m.poly):
            if c == 0:
                continue
            if not m.oscillatory:
                terms.append(SignalTerm(amplitude=c.real, degree=k, growth=a))
                continue
            theta = math.atan2(c.imag, c.real)
            if theta <= -math.pi:
                theta = math.pi
            terms.append(SignalTerm(amplitude=abs(c), degree=k, growth=a, omega=w, phase=theta))
    return terms
