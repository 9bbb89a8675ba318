"""Ablowitz-Segur solutions of Painleve II and the distribution functions
built from them.

The solution family u(x) of u'' = x*u + 2*u^3 decaying like
sqrt(gamma)*Ai(x) on the right is integrated backwards from x_start = 8,
where the nonlinear correction to the Airy boundary behaviour is below
1e-14 relative.  Backward integration is stable for gamma < 1: the growing
mode at +infinity is the decaying one when marching left.
"""

from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad, solve_ivp

from .errors import ConsistencyError, DivergenceError, InvalidArgumentError
from .specfun import airy_ai, airy_ai_prime, airy_cdf

X_START = 8.0
ALEPH_HM = 2.0 * math.sqrt(2.0) / 3.0  # boundary of the Hastings-McLeod region
DEFAULT_TOL = 1e-6
DEFAULT_ZETA0 = 0.3


class AsymptoticRegion(enum.Enum):
    BOUTROUX = "boutroux"
    STOKES = "stokes"
    HASTINGS_MCLEOD = "hastings_mcleod"


@dataclass(frozen=True)
class ThinningParams:
    """Thinning parameters derived from the exponent weight v."""

    v: float
    gamma: float
    gamma2: float

    @classmethod
    def from_v(cls, v: float) -> "ThinningParams":
        v = float(v)
        if not math.isfinite(v) or v < 0.0:
            raise InvalidArgumentError(f"v must be finite and nonnegative, got {v!r}")
        return cls(v=v, gamma=-math.expm1(-v), gamma2=-math.expm1(-2.0 * v))


@dataclass(frozen=True)
class Painleve2Solution:
    gamma: float
    grid: np.ndarray  # ascending x
    u: np.ndarray
    u_prime: np.ndarray
    x_start: float
    residual: float

    def __call__(self, x: float) -> float:
        return float(np.interp(x, self.grid, self.u))


def _blowup_envelope(x: float) -> float:
    return 10.0 * math.sqrt(max(-x, 0.0) / 2.0) + 10.0


def _pick_step(x_min: float, tol: float) -> float:
    """Grid step small enough that the 4th-order residual stencil resolves
    the oscillation frequency sqrt(-x) at the deep end of the grid."""
    z = max(-x_min, 10.0)
    # stencil error ~ h^4/30 * u^(6), u^(6) ~ z^3 * sqrt(z/2)
    h = (30.0 * 0.3 * tol / (z**3.0 * math.sqrt(z / 2.0) + 1.0)) ** 0.25
    return min(0.01, h)


def _ode_residual(x: np.ndarray, u: np.ndarray, up: np.ndarray, h: float) -> float:
    """Max defect of u'' = x*u + 2*u^3, u'' from a 5-point stencil on u'."""
    if len(x) < 5:
        return 0.0
    upp = (up[:-4] - 8.0 * up[1:-3] + 8.0 * up[3:-1] - up[4:]) / (12.0 * h)
    rhs = x[2:-2] * u[2:-2] + 2.0 * u[2:-2] ** 3
    return float(np.max(np.abs(upp - rhs)))


@functools.lru_cache(maxsize=256)
def _solve_cached(gamma: float, x_min: float, tol: float, halve_step: bool) -> Painleve2Solution:
    h = _pick_step(x_min, tol)
    if halve_step:
        h /= 2.0
    n = max(int(math.ceil((X_START - x_min) / h)), 8)
    grid = np.linspace(X_START, x_min, n + 1)  # descending for the march

    if gamma == 0.0:
        g = grid[::-1].copy()
        z = np.zeros_like(g)
        return Painleve2Solution(gamma=0.0, grid=g, u=z, u_prime=z.copy(),
                                 x_start=X_START, residual=0.0)

    sq = math.sqrt(gamma)
    y0 = [sq * airy_ai(X_START), sq * airy_ai_prime(X_START)]

    def rhs(x, y):
        return [y[1], x * y[0] + 2.0 * y[0] ** 3]

    def blowup(x, y):
        return abs(y[0]) - _blowup_envelope(x)

    blowup.terminal = True

    sol = solve_ivp(rhs, (X_START, x_min), y0, method="DOP853",
                    t_eval=grid, rtol=1e-11, atol=1e-13, events=blowup)
    if sol.status == 1 or not sol.success:
        last = float(sol.t[-1]) if sol.t.size else X_START
        raise DivergenceError(
            f"Painleve II solution blew up near x={last:.4g} (gamma={gamma})",
            last_good_x=last)

    g = sol.t[::-1].copy()
    u = sol.y[0][::-1].copy()
    up = sol.y[1][::-1].copy()
    resid = _ode_residual(g, u, up, abs(g[1] - g[0]))
    if resid > tol:
        raise DivergenceError(
            f"ODE defect {resid:.3g} exceeds tol {tol:.3g} (gamma={gamma})")
    return Painleve2Solution(gamma=gamma, grid=g, u=u, u_prime=up,
                             x_start=X_START, residual=resid)


def solve_uas(gamma: float, x_min: float, tol: float = DEFAULT_TOL, *,
              halve_step: bool = False) -> Painleve2Solution:
    """Solve for u(x; gamma) on [x_min, 8] from the right boundary data."""
    gamma = float(gamma)
    x_min = float(x_min)
    if not (0.0 <= gamma < 1.0):
        raise InvalidArgumentError(f"gamma must lie in [0, 1), got {gamma!r}")
    if not math.isfinite(x_min) or x_min < -200.0:
        raise InvalidArgumentError(f"x_min must be finite and >= -200, got {x_min!r}")
    if not (tol > 0.0):
        raise InvalidArgumentError("tol must be positive")
    if x_min >= X_START:
        x_min = X_START - 1.0
    return _solve_cached(gamma, x_min, float(tol), bool(halve_step))


def _tail_mu(gamma: float, a: float) -> float:
    """Closed-form right tail of the mu integral: sqrt(gamma) * int_a^inf Ai."""
    return math.sqrt(gamma) * (1.0 - airy_cdf(a))


def _tail_f2(gamma: float, s: float, a: float) -> float:
    """Right tail of int (t - s) u^2 using the boundary regime u^2 ~ gamma Ai^2."""
    val, _ = quad(lambda t: (t - s) * airy_ai(t) ** 2, a, a + 25.0,
                  epsabs=1e-14, epsrel=1e-10)
    return gamma * val


def mu_integral(s: float, gamma: float, tol: float = DEFAULT_TOL, *,
                halve_step: bool = False) -> float:
    """mu(s, gamma) = int_s^inf u(x; gamma) dx."""
    s = float(s)
    if gamma == 0.0:
        return 0.0
    if s >= X_START:
        return _tail_mu(gamma, s)
    sol = solve_uas(gamma, s, tol, halve_step=halve_step)
    mask = sol.grid >= s - 1e-12
    core = _simpson(sol.u[mask], sol.grid[mask])
    return core + _tail_mu(gamma, sol.x_start)


def _simpson(y: np.ndarray, x: np.ndarray) -> float:
    from scipy.integrate import simpson

    return float(simpson(y, x=x))


def f2_analytic(s: float, v: float, tol: float = DEFAULT_TOL, *,
                halve_step: bool = False) -> float:
    """Thinned-maximum CDF on the determinantal side:
    exp(-int_s^inf (t - s) u^2(t; gamma) dt) with gamma = 1 - e^(-v)."""
    p = ThinningParams.from_v(v)
    return _f2_gamma(float(s), p.gamma, tol, halve_step)


def _f2_gamma(s: float, gamma: float, tol: float, halve_step: bool) -> float:
    if gamma == 0.0:
        return 1.0
    if s >= X_START:
        return math.exp(-_tail_f2(gamma, s, s))
    sol = solve_uas(gamma, s, tol, halve_step=halve_step)
    mask = sol.grid >= s - 1e-12
    x = sol.grid[mask]
    integrand = (x - s) * sol.u[mask] ** 2
    core = _simpson(integrand, x)
    return math.exp(-(core + _tail_f2(gamma, s, sol.x_start)))


def f1_analytic(s: float, v: float, tol: float = DEFAULT_TOL) -> float:
    """Thinned-maximum CDF of the orthogonal-ensemble edge process; equals
    the exponential moment E[exp(-v * N[s, inf))] of the point count."""
    p = ThinningParams.from_v(v)
    if p.v == 0.0:
        return 1.0
    f2 = _f2_gamma(float(s), p.gamma2, tol, False)
    mu = mu_integral(float(s), p.gamma2, tol)
    radicand = 1.0 + (math.cosh(mu) - math.sqrt(p.gamma2) * math.sinh(mu) - 1.0) / (2.0 - p.gamma)
    if radicand < 0.0:
        raise ConsistencyError(
            f"negative radicand {radicand:.3g} at (s={s}, v={v}); solver fault")
    return math.sqrt(f2) * math.sqrt(radicand)


def aleph(x: float, gamma: float) -> float:
    """Scaling parameter -log(1 - gamma) / (-x)^(3/2) for x < 0."""
    x = float(x)
    gamma = float(gamma)
    if not math.isfinite(x) or x >= 0.0:
        raise InvalidArgumentError(f"x must be finite and negative, got {x!r}")
    if not (0.0 <= gamma < 1.0):
        raise InvalidArgumentError(f"gamma must lie in [0, 1), got {gamma!r}")
    return -math.log1p(-gamma) / (-x) ** 1.5


def classify_region(x: float, gamma: float, zeta0: float = DEFAULT_ZETA0) -> AsymptoticRegion:
    """Asymptotic regime of u(x; gamma) by the value of aleph(x, gamma)."""
    if not (0.0 < zeta0 < ALEPH_HM):
        raise InvalidArgumentError(f"zeta0 must lie in (0, {ALEPH_HM:.6f})")
    a = aleph(x, gamma)
    if a >= ALEPH_HM:
        return AsymptoticRegion.HASTINGS_MCLEOD
    if a > ALEPH_HM - zeta0:
        return AsymptoticRegion.STOKES
    return AsymptoticRegion.BOUTROUX


def uas_hm_asymptotic(x: float, v: float, x0: float = 5.0) -> float:
    """Leading deep-negative expression in the Hastings-McLeod region:
    -sqrt(-x/2) * (1 - exp((2*sqrt(2)/3)(-x)^(3/2) - v) / (pi (-x)^(3/4) 2^(5/4)))."""
    x = float(x)
    v = float(v)
    if not math.isfinite(x) or x >= 0.0:
        raise InvalidArgumentError(f"x must be negative, got {x!r}")
    if -x < x0:
        raise InvalidArgumentError(f"requires -x >= {x0} (deep negative axis)")
    # aleph = -log(1 - gamma)/(-x)^{3/2} with gamma = 1 - e^{-v} is just
    # v/(-x)^{3/2}; computing it from v directly survives v so large that
    # gamma rounds to 1
    if v / (-x) ** 1.5 < ALEPH_HM:
        raise InvalidArgumentError(
            "requires the Hastings-McLeod region aleph(x, gamma) >= 2*sqrt(2)/3")
    z = -x
    corr = math.exp(ALEPH_HM * z**1.5 - v) / (math.pi * z**0.75 * 2.0**1.25)
    return -math.sqrt(z / 2.0) * (1.0 - corr)
