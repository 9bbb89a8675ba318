"""Closed-form tail-bound envelopes with the existential constants exposed
as configuration.

The theory only proves that positive constants exist; the defaults here
(K2 = 1/24 matching the known cubic tail constant, C = 1, S0 = 5) are
calibration choices that make every bound computable.  Outputs that hold
only under the unproved deep-tail conjecture carry conditional = True.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from .errors import InvalidArgumentError


class TailRegime(enum.Enum):
    DEEP_TAIL = "deep_tail"
    CROSSOVER = "crossover"
    GOE_REGIME = "goe_regime"


@dataclass(frozen=True)
class BoundConstants:
    """Calibratable stand-ins for the existential constants.

    block_rate is the rate constant of the block-count deviation bound
    exp(-block_rate * l^(1-delta)).
    """

    C: float = 1.0
    K1: float = 1.0
    K2: float = 1.0 / 24.0
    eta: float = 0.3
    kappa: float = 1.0
    S0: float = 5.0
    block_rate: float = 1.0

    def __post_init__(self):
        for name in ("C", "K1", "K2", "eta", "kappa", "S0", "block_rate"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0.0):
                raise InvalidArgumentError(f"constant {name} must be strictly positive")


@dataclass(frozen=True)
class BoundReport:
    s: float
    T: float
    eps: float
    delta: float
    terms_lower: tuple[tuple[str, float], ...]
    terms_upper: tuple[tuple[str, float], ...]
    dominant_lower: str
    dominant_upper: str
    regime: TailRegime

    @property
    def lower(self) -> float:
        return min(sum(v for _, v in self.terms_lower), 1.0)

    @property
    def upper(self) -> float:
        return min(sum(v for _, v in self.terms_upper), 1.0)


@dataclass(frozen=True)
class ConditionalBound:
    value: float
    conditional: bool = True


@dataclass(frozen=True)
class DeviationCurves:
    weak: float
    strong: float
    block: float
    crossing: float  # scale beyond which the strong curve undercuts the weak
    strong_conditional: bool = field(default=True)


def _classify(s: float, T: float, threshold: float) -> TailRegime:
    pivot = T ** (2.0 / 3.0)
    if s > pivot * threshold:
        return TailRegime.DEEP_TAIL
    if s < pivot / threshold:
        return TailRegime.GOE_REGIME
    return TailRegime.CROSSOVER


def _materialize(exponents: tuple[tuple[str, float], ...]):
    """Turn (label, exponent) pairs into (label, e^-exponent) terms plus the
    dominant label, decided on the exponent scale so underflow cannot tie."""
    # large calibration constants can flip an exponent negative; cap the
    # resulting term instead of overflowing
    terms = tuple((label, math.exp(-e) if e > -700.0 else math.inf)
                  for label, e in exponents)
    dominant = min(exponents, key=lambda le: le[1])[0]
    return terms, dominant


def kpz_tail_bounds(s: float, T: float, eps: float, delta: float,
                    constants: BoundConstants = BoundConstants(),
                    regime_threshold: float = 3.0) -> BoundReport:
    """Evaluate the lower- and upper-tail envelope sums term by term.

    Lower: exp(-(2(1+C*eps)/15pi) T^(1/3) s^(5/2)) + exp(-K2 s^3).
    Upper: exp(-(2(1-C*eps)/15pi) T^(1/3) s^(5/2))
           + exp(-(eps/2) s T^(1/3) - eta s^(3/2))
           + exp(-((1-C*eps)/24) s^3).
    """
    s = float(s)
    T = float(T)
    eps = float(eps)
    delta = float(delta)
    if not (math.isfinite(s) and s >= constants.S0):
        raise InvalidArgumentError(f"s must be >= S0 = {constants.S0}, got {s!r}")
    if not (math.isfinite(T) and T > 0.0):
        raise InvalidArgumentError(f"T must be positive, got {T!r}")
    if not 0.0 < eps < 1.0 / 3.0:
        raise InvalidArgumentError(f"eps must lie in (0, 1/3), got {eps!r}")
    if not 0.0 < delta < 0.25:
        raise InvalidArgumentError(f"delta must lie in (0, 1/4), got {delta!r}")
    if regime_threshold <= 1.0:
        raise InvalidArgumentError("regime_threshold must exceed 1")

    t13 = T ** (1.0 / 3.0)
    ce = constants.C * eps
    lower_exp = (
        ("five_halves", (2.0 * (1.0 + ce) / (15.0 * math.pi)) * t13 * s**2.5),
        ("cubic", constants.K2 * s**3),
    )
    upper_exp = (
        ("five_halves", (2.0 * (1.0 - ce) / (15.0 * math.pi)) * t13 * s**2.5),
        ("intermediate", (eps / 2.0) * s * t13 + constants.eta * s**1.5),
        ("cubic", ((1.0 - ce) / 24.0) * s**3),
    )
    lower, dom_lower = _materialize(lower_exp)
    upper, dom_upper = _materialize(upper_exp)
    return BoundReport(s=s, T=T, eps=eps, delta=delta,
                       terms_lower=lower, terms_upper=upper,
                       dominant_lower=dom_lower,
                       dominant_upper=dom_upper,
                       regime=_classify(s, T, regime_threshold))


def f1_bound_curve(s: float, delta: float) -> ConditionalBound:
    """Conjecture-conditional envelope exp(-(1/3pi) s^(3-delta)) for the
    orthogonal-ensemble thinned tail."""
    s = float(s)
    delta = float(delta)
    if not 0.0 < delta < 0.4:
        raise InvalidArgumentError(f"delta must lie in (0, 2/5), got {delta!r}")
    if not (math.isfinite(s) and s >= 1.0):
        raise InvalidArgumentError(f"s must be >= 1, got {s!r}")
    return ConditionalBound(value=math.exp(-(1.0 / (3.0 * math.pi)) * s ** (3.0 - delta)))


def deviation_bound_curves(s_or_l: float, c: float, delta: float, eta: float,
                           constants: BoundConstants = BoundConstants()) -> DeviationCurves:
    """The three count-deviation envelopes at scale s (ray) or l (block):
    weak exp(-eta s^(3/2)), strong exp(-(1/2) c s^(3-delta)) (conditional),
    block exp(-block_rate * l^(1-delta)); plus the scale where the strong
    exponent overtakes the weak one."""
    s = float(s_or_l)
    c = float(c)
    delta = float(delta)
    eta = float(eta)
    if not (math.isfinite(s) and s > 0.0):
        raise InvalidArgumentError(f"scale must be positive, got {s_or_l!r}")
    if c <= 0.0 or eta <= 0.0:
        raise InvalidArgumentError("c and eta must be positive")
    if not 0.0 < delta < 0.4:
        raise InvalidArgumentError(f"delta must lie in (0, 2/5), got {delta!r}")
    weak = math.exp(-eta * s**1.5)
    strong = math.exp(-0.5 * c * s ** (3.0 - delta))
    block = math.exp(-constants.block_rate * s ** (1.0 - delta))
    crossing = (2.0 * eta / c) ** (1.0 / (1.5 - delta))
    return DeviationCurves(weak=weak, strong=strong, block=block, crossing=crossing)
