"""Statistics of sampled edge point configurations.

Everything here is a pure fold over an immutable EnsembleSample: counting
measures, the empirical exponential moment of counts, thinned-maximum
CDF estimates, deviation-band constants against the deterministic Airy
spectrum, and the multiplicative functional that carries the interface
growth connection.  Estimators refuse to run when the configurations are
too shallow for the requested statistic instead of silently truncating.
"""

from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .airy_spectrum import SpectrumTable
from .ensembles import EnsembleSample, PointConfiguration, thin
from .errors import AccuracyError, InvalidArgumentError, TruncationError
from .fredholm import airy_kernel
from .specfun import airy_ai, airy_cdf


class IntervalKind(enum.Enum):
    RAY = "ray"
    BLOCK = "block"


class DeviationSide(enum.Enum):
    LOWER = "lower"
    UPPER = "upper"


@dataclass(frozen=True)
class Interval:
    """Either the ray [-s, inf) or the block [-k*l, -(k-1)*l)."""

    kind: IntervalKind
    s_or_l: float
    k: int = 1

    def __post_init__(self):
        if self.s_or_l <= 0.0:
            raise InvalidArgumentError("s_or_l must be positive")
        if self.k < 1:
            raise InvalidArgumentError("block index k must be >= 1")
        if self.kind is IntervalKind.RAY and self.k != 1:
            raise InvalidArgumentError("ray intervals have k = 1")

    @property
    def bounds(self) -> tuple[float, float]:
        if self.kind is IntervalKind.RAY:
            return (-self.s_or_l, math.inf)
        l, k = self.s_or_l, self.k
        if k == 1:
            return (-l, math.inf)
        return (-k * l, -(k - 1) * l)


@dataclass(frozen=True)
class McEstimate:
    value: float
    std_error: float
    replicates: int
    low_power: bool = False

    def agrees_with(self, other: "McEstimate | float", n_se: float = 3.0) -> bool:
        if isinstance(other, McEstimate):
            tol = n_se * math.hypot(self.std_error, other.std_error)
            return abs(self.value - other.value) <= tol
        return abs(self.value - float(other)) <= n_se * self.std_error


def _mc(values: np.ndarray, low_power: bool = False) -> McEstimate:
    n = len(values)
    se = float(np.std(values, ddof=1) / math.sqrt(n)) if n > 1 else 0.0
    return McEstimate(value=float(np.mean(values)), std_error=se,
                      replicates=n, low_power=low_power)


def count_in(config: PointConfiguration, interval: Interval) -> int:
    """Number of points of the configuration in the interval."""
    if config.k_kept == 0:
        return 0
    lo, hi = interval.bounds
    if config.deepest > lo:
        raise TruncationError(
            f"configuration bottoms out at {config.deepest:.4g} but the "
            f"interval needs coverage below {lo:.4g}",
            needed_depth=lo)
    pts = np.asarray(config.points)
    return int(np.count_nonzero((pts >= lo) & (pts < hi)))


def rho1_goe(x: float) -> float:
    """One-point density of the orthogonal-ensemble edge process:
    the soft-edge kernel diagonal plus (1/2) Ai(x) int_{-inf}^x Ai."""
    x = float(x)
    return airy_kernel(x, x) + 0.5 * airy_ai(x) * airy_cdf(x)


@functools.lru_cache(maxsize=1)
def _rho1_positive_mass() -> float:
    val, err = quad(rho1_goe, 0.0, 14.0, epsabs=1e-10, limit=200)
    return val


@functools.lru_cache(maxsize=4096)
def mean_count(s: float) -> float:
    """Expected number of points in [-s, inf), by adaptive quadrature of
    the one-point density."""
    s = float(s)
    if not (math.isfinite(s) and s > 0.0):
        raise InvalidArgumentError(f"s must be positive, got {s!r}")
    val, err = quad(rho1_goe, -s, 0.0, epsabs=1e-9, limit=max(200, int(20 * s)))
    if err > 1e-6:
        raise AccuracyError(f"density quadrature error {err:.3g} too large at s={s}")
    return val + _rho1_positive_mass()


def _require_depth(sample: EnsembleSample, depth: float, what: str) -> None:
    worst = max(c.deepest for c in sample.configs)
    if worst > depth:
        raise TruncationError(
            f"{what} needs configurations reaching below {depth:.4g}; "
            f"shallowest replicate stops at {worst:.4g}",
            needed_depth=depth)


def empirical_cgf(sample: EnsembleSample, s: float, v: float) -> McEstimate:
    """Monte Carlo mean of exp(-v * #{points >= s})."""
    s = float(s)
    v = float(v)
    if v < 0.0:
        raise InvalidArgumentError("v must be nonnegative")
    if v == 0.0:
        return McEstimate(value=1.0, std_error=0.0, replicates=sample.replicate_count)
    _require_depth(sample, s, "the exponential count moment")
    pts = sample.as_array()
    counts = (pts >= s).sum(axis=1)
    return _mc(np.exp(-v * counts))


def thinned_max_cdf(sample: EnsembleSample, s: float, gamma: float,
                    seed: int) -> McEstimate:
    """Monte Carlo estimate of P(max of the gamma-thinned configuration < s).

    An empty thinned configuration counts as below s.  Thinning seeds are
    derived from (seed, replicate) so the estimate is independent of the
    CGF computed on the same sample.
    """
    s = float(s)
    if not 0.0 <= gamma <= 1.0:
        raise InvalidArgumentError(f"gamma must lie in [0, 1], got {gamma!r}")
    _require_depth(sample, s, "the thinned-maximum CDF")
    hits = np.empty(sample.replicate_count)
    for r, config in enumerate(sample.configs):
        thinned = thin(config, gamma,
                       seed=int(np.random.SeedSequence(
                           entropy=seed, spawn_key=(r, 0x7411)).generate_state(1)[0]))
        top = thinned.points[0] if thinned.k_kept else -math.inf
        hits[r] = 1.0 if top < s else 0.0
    return _mc(hits)


def c_eps(config: PointConfiguration, eps: float, spectrum: SpectrumTable) -> float:
    """Smallest band width C such that (1-eps)*lambda_k - C <= -a_k <=
    (1+eps)*lambda_k + C for every kept k, evaluated on this configuration."""
    if not 0.0 < eps < 1.0:
        raise InvalidArgumentError(f"eps must lie in (0, 1), got {eps!r}")
    if spectrum.k_max < config.k_kept:
        raise InvalidArgumentError(
            f"spectrum covers {spectrum.k_max} levels, configuration has "
            f"{config.k_kept}")
    lam = np.asarray(spectrum.eigenvalues[: config.k_kept])
    neg_a = -np.asarray(config.points)
    lower_defect = (1.0 - eps) * lam - neg_a
    upper_defect = neg_a - (1.0 + eps) * lam
    return float(max(np.max(lower_defect), np.max(upper_defect), 0.0))


def log_weight(x: float, s: float, T: float) -> float:
    """Per-point exponent (1/2) log(1 + exp(T^(1/3) (x + s))), the negative
    log of the multiplicative-functional factor."""
    arg = T ** (1.0 / 3.0) * (x + s)
    if arg > 700.0:
        return 0.5 * arg
    return 0.5 * math.log1p(math.exp(arg))


def laplace_functional(sample: EnsembleSample, s: float, T: float) -> McEstimate:
    """Monte Carlo mean of the multiplicative functional
    prod_k (1 + exp(T^(1/3)(a_k + s)))^(-1/2) over kept points."""
    s = float(s)
    T = float(T)
    if not (s > 0.0 and T > 0.0):
        raise InvalidArgumentError("s and T must be positive")
    # omitted points x below the required depth contribute at most
    # (1/2) e^{T^(1/3)(x+s)} each, which keeps the truncated tail under 1e-8
    depth = -s - 40.0 * T ** (-1.0 / 3.0)
    _require_depth(sample, depth, "the multiplicative functional")
    t13 = T ** (1.0 / 3.0)
    pts = sample.as_array()
    arg = t13 * (pts + s)
    big = arg > 700.0
    j = np.where(big, 0.5 * arg, 0.5 * np.log1p(np.exp(np.where(big, 0.0, arg))))
    return _mc(np.exp(-j.sum(axis=1)))


def tail_prob_max(sample: EnsembleSample, s: float) -> McEstimate:
    """Empirical P(a_1 < -s), flagged low-power when fewer than 20 hits."""
    s = float(s)
    if s < 0.0:
        raise InvalidArgumentError("s must be nonnegative")
    tops = sample.as_array()[:, 0]
    hits = (tops < -s).astype(float)
    return _mc(hits, low_power=bool(hits.sum() < 20))


def deviation_prob(sample: EnsembleSample, interval: Interval, c: float,
                   side: DeviationSide) -> McEstimate:
    """Empirical probability that the interval count deviates from its
    quadrature mean by c * (interval scale)^(3/2) on the given side."""
    if c <= 0.0:
        raise InvalidArgumentError("c must be positive")
    side = DeviationSide(side)
    if interval.kind is IntervalKind.RAY or interval.k == 1:
        mean = mean_count(interval.s_or_l)
    else:
        l, k = interval.s_or_l, interval.k
        mean = mean_count(k * l) - mean_count((k - 1) * l)
    threshold = c * interval.s_or_l**1.5
    counts = np.array([count_in(cfg, interval) for cfg in sample.configs], dtype=float)
    if side is DeviationSide.LOWER:
        hits = (counts - mean <= -threshold).astype(float)
    else:
        hits = (counts - mean >= threshold).astype(float)
    return _mc(hits, low_power=bool(hits.sum() < 20))
