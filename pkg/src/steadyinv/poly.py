"""
Dense univariate polynomials and truncated power series over complex scalars.

Coefficients are stored in ascending order: ``coeffs[i]`` multiplies ``s**i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import ZeroLeadingDenominator

__all__ = [
    "Polynomial",
    "trim",
    "eval_poly",
    "taylor_shift",
    "series_div",
]


def trim(coeffs: Iterable[complex]) -> tuple[complex, ...]:
    """Drop exactly-zero high-order coefficients. No magnitude threshold."""
    out = [complex(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


@dataclass(frozen=True)
class Polynomial:
    coeffs: tuple[complex, ...] = ()

    def __init__(self, coeffs: Iterable[complex] = ()):
        object.__setattr__(self, "coeffs", trim(coeffs))

    @property
    def degree(self) -> int | None:
        """Degree, or None for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else None

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_real(self) -> bool:
        return all(c.imag == 0 for c in self.coeffs)

    @property
    def lead(self) -> complex:
        return self.coeffs[-1] if self.coeffs else 0j

    def __call__(self, z: complex) -> complex:
        return eval_poly(self, z)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __add__(self, other: Polynomial) -> Polynomial:
        n = max(len(self), len(other))
        a = list(self.coeffs) + [0j] * (n - len(self))
        b = list(other.coeffs) + [0j] * (n - len(other))
        return Polynomial(x + y for x, y in zip(a, b))

    def __neg__(self) -> Polynomial:
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other: Polynomial) -> Polynomial:
        return self + (-other)

    def __mul__(self, other: Polynomial | complex) -> Polynomial:
        if not isinstance(other, Polynomial):
            return Polynomial(c * other for c in self.coeffs)
        if self.is_zero or other.is_zero:
            return Polynomial()
        out = [0j] * (len(self) + len(other) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__


def _coeffs(p: Polynomial | Sequence[complex]) -> Sequence[complex]:
    return p.coeffs if isinstance(p, Polynomial) else p


def eval_poly(p: Polynomial | Sequence[complex], z: complex) -> complex:
    """Evaluate ``p`` at ``z`` by Horner's scheme."""
    acc = 0j
    for c in reversed(_coeffs(p)):
        acc = acc * z + c
    return acc


def taylor_shift(p: Polynomial | Sequence[complex], z0: complex, order: int) -> list[complex]:
    """
    First ``order + 1`` Taylor coefficients of ``p`` about ``z0``.

    Returns ``a`` with ``p(z0 + u) = sum(a[i] * u**i)``, i.e. ``a[i] = p^(i)(z0) / i!``,
    computed by repeated synthetic division.

    Example:
        >>> taylor_shift([0, 0, 1], 1, 2)
        [(1+0j), (2+0j), (1+0j)]
    """
    if order < 0:
        raise ValueError("order must be nonnegative")
    work = [complex(c) for c in _coeffs(p)]
    out: list[complex] = []
    # each pass divides by (s - z0); the remainder is the next Taylor coefficient
    while work and len(out) <= order:
        acc = 0j
        quotient = [0j] * (len(work) - 1)
        for i in range(len(work) - 1, -1, -1):
            acc = acc * z0 + work[i]
            if i > 0:
                quotient[i - 1] = acc
        out.append(acc)
        work = quotient
    out.extend([0j] * (order + 1 - len(out)))
    return out


def series_div(num: Sequence[complex], den: Sequence[complex], order: int) -> list[complex]:
    """
    Truncated power-series quotient ``num / den`` up to ``u**order``.

    The result ``q`` satisfies ``sum(q[j] * den[i - j] for j <= i) == num[i]``
    for every ``i <= order`` (missing entries count as zero).
    """
    if order < 0:
        raise ValueError("order must be nonnegative")
    den = [complex(c) for c in _coeffs(den)]
    num = [complex(c) for c in _coeffs(num)]
    if not den or den[0] == 0:
        raise ZeroLeadingDenominator("constant term of the denominator series is zero")
    d0 = den[0]
    q: list[complex] = []
    for i in range(order + 1):
        acc = num[i] if i < len(num) else 0j
        for j in range(max(0, i - len(den) + 1), i):
            acc -= q[j] * den[i - j]
        q.append(acc / d0)
    return q
