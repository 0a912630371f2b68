"""
Continuous-time SISO plants: transfer function and state-space forms.

Polynomials are in ascending powers of ``s`` throughout. Transfer functions
are normalized to a monic denominator when they are built.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (
    DimensionMismatch,
    ImproperTransferFunction,
    PoleAtEvaluationPoint,
    ValidationError,
)
from .poly import Polynomial, eval_poly, series_div, taylor_shift

__all__ = [
    "TransferFunction",
    "StateSpace",
    "ModeDerivatives",
    "Stability",
    "ss_to_tf",
    "tf_to_ss",
    "eval_tf",
    "tf_taylor_at",
    "is_asymptotically_stable",
]

POLE_TOL = 1e-12
ROUTH_TOL = 1e-12


@dataclass(frozen=True, init=False)
class TransferFunction:
    """
    Proper or biproper rational transfer function ``W(s) = num(s) / den(s)``.

    Parameters
    ----------
    num, den : sequence of real
        Coefficients in ascending powers of ``s``.
    """

    num: Polynomial
    den: Polynomial

    def __init__(self, num: Sequence[float] | Polynomial, den: Sequence[float] | Polynomial):
        num = num if isinstance(num, Polynomial) else Polynomial(num)
        den = den if isinstance(den, Polynomial) else Polynomial(den)
        if den.is_zero:
            raise ValidationError("denominator is the zero polynomial")
        if not all(np.isfinite(c) for c in num.coeffs + den.coeffs):
            raise ValidationError("transfer function coefficients must be finite")
        if not (num.is_real and den.is_real):
            raise ValidationError("transfer function coefficients must be real")
        if num.degree is not None and num.degree > den.degree:
            raise ImproperTransferFunction(
                f"numerator degree {num.degree} exceeds denominator degree {den.degree}"
            )
        lead = den.lead.real
        object.__setattr__(self, "num", Polynomial(c / lead for c in num.coeffs))
        object.__setattr__(self, "den", Polynomial(c / lead for c in den.coeffs))

    @property
    def order(self) -> int:
        return self.den.degree

    @property
    def num_real(self) -> np.ndarray:
        return np.array([c.real for c in self.num.coeffs], dtype=float)

    @property
    def den_real(self) -> np.ndarray:
        return np.array([c.real for c in self.den.coeffs], dtype=float)

    def __call__(self, s: complex) -> complex:
        return eval_tf(self, s)

    def __repr__(self) -> str:
        return f"TransferFunction(num={self.num_real.tolist()}, den={self.den_real.tolist()})"


@dataclass(frozen=True, init=False)
class StateSpace:
    """``x' = A x + B u``, ``y = C x + D u`` with a scalar input and output."""

    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    D: np.ndarray

    def __init__(self, A, B, C, D):
        D = np.atleast_2d(np.asarray(D, dtype=float))
        A = np.asarray(A, dtype=float)
        if A.size == 0:
            A = np.zeros((0, 0))
        n = A.shape[0]
        B = np.asarray(B, dtype=float).reshape(-1, 1) if np.size(B) else np.zeros((n, 1))
        C = np.asarray(C, dtype=float).reshape(1, -1) if np.size(C) else np.zeros((1, n))
        if A.ndim != 2 or A.shape != (n, n):
            raise DimensionMismatch(f"A must be square, got shape {A.shape}")
        if B.shape != (n, 1):
            raise DimensionMismatch(f"B must be {n}x1, got {B.shape}")
        if C.shape != (1, n):
            raise DimensionMismatch(f"C must be 1x{n}, got {C.shape}")
        if D.shape != (1, 1):
            raise DimensionMismatch(f"D must be 1x1, got {D.shape}")
        for name, m in zip("ABCD", (A, B, C, D)):
            if not np.all(np.isfinite(m)):
                raise ValidationError(f"{name} has non-finite entries")
            m.setflags(write=False)
            object.__setattr__(self, name, m)

    @property
    def n(self) -> int:
        return self.A.shape[0]

    def transfer_at(self, s: complex) -> complex:
        """``C (sI - A)^{-1} B + D`` by a direct linear solve."""
        d = complex(self.D[0, 0])
        if self.n == 0:
            return d
        x = np.linalg.solve(s * np.eye(self.n) - self.A, self.B[:, 0])
        return complex(self.C[0] @ x) + d


@dataclass(frozen=True)
class ModeDerivatives:
    """Local Taylor data of ``W`` at ``lam``: ``coeffs[i] = W^(i)(lam) / i!``."""

    lam: complex
    coeffs: tuple[complex, ...]

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def derivative(self, i: int) -> complex:
        return self.coeffs[i] * _factorial(i)


def _factorial(i: int) -> float:
    out = 1.0
    for k in range(2, i + 1):
        out *= k
    return out


def ss_to_tf(ss: StateSpace) -> TransferFunction:
    """
    Transfer function of a state-space model via the Leverrier-Faddeev recurrence.

    With ``N_0 = I``, ``c_k = -tr(A N_{k-1}) / k`` and ``N_k = A N_{k-1} + c_k I``,
    the characteristic polynomial is ``s^n + c_1 s^{n-1} + ... + c_n`` and
    ``adj(sI - A) = sum_k N_k s^{n-1-k}``.
    """
    n = ss.n
    d = float(ss.D[0, 0])
    if n == 0:
        return TransferFunction([d], [1.0])
    A, b, c = ss.A, ss.B[:, 0], ss.C[0]
    char_desc = [1.0]
    adj_desc = []  # c @ N_k @ b, descending powers s^{n-1-k}
    N = np.eye(n)
    for k in range(1, n + 1):
        adj_desc.append(float(c @ N @ b))
        AN = A @ N
        ck = -np.trace(AN) / k
        char_desc.append(ck)
        N = AN + ck * np.eye(n)
    den = np.array(char_desc[::-1])
    num = np.zeros(n + 1)
    num[:n] = adj_desc[::-1]
    num += d * den
    return TransferFunction(num, den)


def tf_to_ss(tf: TransferFunction) -> StateSpace:
    """
    Controllable canonical realization of a proper transfer function.

    Example:
        >>> ss = tf_to_ss(TransferFunction([3, 2], [2, 3, 1]))
        >>> ss.A.tolist(), ss.C.tolist()
        ([[0.0, 1.0], [-2.0, -3.0]], [[3.0, 2.0]])
    """
    den = tf.den_real
    n = len(den) - 1
    num = np.zeros(n + 1)
    num[: len(tf.num_real)] = tf.num_real
    d = num[n]  # den is monic, so the feedthrough is the s^n numerator coefficient
    if n == 0:
        return StateSpace(np.zeros((0, 0)), np.zeros((0, 1)), np.zeros((1, 0)), [[d]])
    A = np.zeros((n, n))
    A[:-1, 1:] = np.eye(n - 1)
    A[-1, :] = -den[:n]
    B = np.zeros((n, 1))
    B[-1, 0] = 1.0
    C = (num[:n] - d * den[:n]).reshape(1, n)
    return StateSpace(A, B, C, [[d]])


def eval_tf(tf: TransferFunction, s: complex) -> complex:
    nv = eval_poly(tf.num, s)
    dv = eval_poly(tf.den, s)
    if abs(dv) < POLE_TOL * max(1.0, abs(nv)):
        raise PoleAtEvaluationPoint(f"W(s) has a pole at s={s}")
    return nv / dv


def tf_taylor_at(tf: TransferFunction, lam: complex, order: int) -> ModeDerivatives:
    """Taylor coefficients ``W^(i)(lam) / i!`` for ``i = 0..order``."""
    eval_tf(tf, lam)  # pole check with the shared threshold
    num = taylor_shift(tf.num, lam, order)
    den = taylor_shift(tf.den, lam, order)
    return ModeDerivatives(complex(lam), tuple(series_div(num, den, order)))


class Stability(enum.Enum):
    STABLE = "Stable"
    MARGINAL = "Marginal"
    UNSTABLE = "Unstable"

    def __str__(self) -> str:
        return self.value


def is_asymptotically_stable(tf: TransferFunction) -> Stability:
    """
    Routh-Hurwitz classification of the denominator.

    A sign change in the first column means instability. A vanishing pivot
    means roots on (or possibly right of) the imaginary axis and is reported
    as marginal unless a sign change was already seen. An all-zero row is
    replaced by the derivative of its auxiliary polynomial so the remaining
    rows can still reveal right-half-plane roots.
    """
    return _routh(tf.den_real)


def _routh(asc: np.ndarray) -> Stability:
    coeffs = np.asarray(asc, dtype=float)[::-1]
    n = len(coeffs) - 1
    if n <= 0:
        return Stability.STABLE
    coeffs = coeffs / coeffs[0]
    # a root-free closed left half-plane forces nonnegative coefficients
    if np.any(coeffs < 0):
        return Stability.UNSTABLE
    width = n // 2 + 1
    prev = np.zeros(width)
    prev[: len(coeffs[0::2])] = coeffs[0::2]
    cur = np.zeros(width)
    cur[: len(coeffs[1::2])] = coeffs[1::2]
    scale = float(np.max(np.abs(coeffs)))
    sign = 1.0
    degenerate = False
    for power in range(n - 1, -1, -1):
        # cur is the row for s^power, prev for s^(power+1)
        scale = max(scale, float(np.max(np.abs(cur))))
        if np.all(np.abs(cur) <= ROUTH_TOL * scale):
            degenerate = True
            # auxiliary polynomial lives in prev; its powers are power+1, power-1, ...
            powers = np.arange(power + 1, -1, -2)
            cur = np.zeros(width)
            cur[: len(powers)] = prev[: len(powers)] * powers
            scale = max(scale, float(np.max(np.abs(cur))))
        pivot = cur[0]
        if abs(pivot) <= ROUTH_TOL * scale:
            return Stability.MARGINAL
        if np.sign(pivot) != sign:
            return Stability.UNSTABLE
        if power == 0:
            break
        nxt = np.zeros(width)
        for i in range(width - 1):
            nxt[i] = (pivot * prev[i + 1] - prev[0] * cur[i + 1]) / pivot
        prev, cur = cur, nxt
    return Stability.MARGINAL if degenerate else Stability.STABLE
