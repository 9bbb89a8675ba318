"""Deterministic Airy-operator eigenvalues and the counting function.

The k-th eigenvalue of -d^2/dx^2 + x on the half line with a Dirichlet wall
is the magnitude of the k-th negative zero of Ai.  The closed-form
approximation (3*pi/2 * (k - 1/4))^(2/3) brackets every zero well within
+-0.5, which makes bisection safe for all k.
"""

from __future__ import annotations

import bisect
import enum
import functools
import math
from dataclasses import dataclass

from .errors import InvalidArgumentError
from .specfun import airy_ai


class SpectrumMethod(enum.Enum):
    AIRY_ZERO = "airy_zero"
    MT59_APPROX = "mt59_approx"


@dataclass(frozen=True)
class SpectrumTable:
    eigenvalues: tuple[float, ...]
    method: SpectrumMethod
    k_max: int

    def __post_init__(self):
        if self.k_max < 1 or len(self.eigenvalues) != self.k_max:
            raise InvalidArgumentError("k_max must match the eigenvalue count")

    def __getitem__(self, k: int) -> float:
        """1-based access: table[k] is lambda_k."""
        if not 1 <= k <= self.k_max:
            raise InvalidArgumentError(f"k={k} outside [1, {self.k_max}]")
        return self.eigenvalues[k - 1]


def mt59_eigenvalue(k: int) -> float:
    """Closed-form approximation (3*pi/2 * (k - 1/4))^(2/3)."""
    return (1.5 * math.pi * (k - 0.25)) ** (2.0 / 3.0)


@functools.lru_cache(maxsize=100_000)
def _airy_zero_magnitude(k: int) -> float:
    """Magnitude of the k-th negative zero of Ai, bisected to 1e-12."""
    guess = mt59_eigenvalue(k)
    # the approximation error is O(1/k) while neighbouring zeros sit
    # pi/sqrt(lambda) apart, so cap the bracket at half the local spacing
    half = min(0.5, 0.45 * math.pi / math.sqrt(guess))
    lo, hi = guess - half, guess + half
    flo = airy_ai(-lo)
    fhi = airy_ai(-hi)
    if flo * fhi > 0.0:  # cannot happen for the MT59 bracket, but be safe
        raise InvalidArgumentError(f"bracket failure at k={k}")
    while hi - lo > 1e-12:
        mid = 0.5 * (lo + hi)
        fmid = airy_ai(-mid)
        if fmid == 0.0:
            return mid
        if flo * fmid < 0.0:
            hi = mid
        else:
            lo, flo = mid, fmid
    return 0.5 * (lo + hi)


def airy_eigs(k_max: int, method: SpectrumMethod = SpectrumMethod.AIRY_ZERO) -> SpectrumTable:
    """Table of the k_max smallest Airy-operator eigenvalues."""
    if not isinstance(k_max, int) or k_max < 1:
        raise InvalidArgumentError(f"k_max must be a positive integer, got {k_max!r}")
    if k_max > 10**6:
        raise InvalidArgumentError("k_max capped at 1e6")
    method = SpectrumMethod(method)
    if method is SpectrumMethod.AIRY_ZERO:
        eigs = tuple(_airy_zero_magnitude(k) for k in range(1, k_max + 1))
    else:
        eigs = tuple(mt59_eigenvalue(k) for k in range(1, k_max + 1))
    return SpectrumTable(eigenvalues=eigs, method=method, k_max=k_max)


def count_eigs_below(T: float) -> int:
    """k(T) = #{n : lambda_n <= T}, using exact Airy zeros."""
    T = float(T)
    if not math.isfinite(T) or T < 0.0:
        raise InvalidArgumentError(f"T must be finite and nonnegative, got {T!r}")
    # lambda_1 > 2.338, so T below that means zero eigenvalues
    if T < 2.3:
        return 0
    # the approximation is within +-0.02 of the true eigenvalue, so a small
    # index margin around the closed-form inverse is enough
    k_guess = max(1, int((2.0 / (3.0 * math.pi)) * T**1.5 + 0.25))
    k_hi = k_guess + 3
    while _airy_zero_magnitude(k_hi) <= T:
        k_hi += 3
    eigs = [_airy_zero_magnitude(k) for k in range(1, k_hi + 1)]
    return bisect.bisect_right(eigs, T)
