"""Self-check suites behind the `verify` subcommand.

The fast suite exercises the analytic spine (special functions, spectrum,
quadrature/ODE cross-oracles) in under two minutes.  The full suite adds
Monte Carlo campaigns; statistical rows use standard-error tolerances, and
rows comparing data against envelopes with calibrated constants are marked
calibration-only — they record disagreement but never fail the build.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

from . import bounds, ensembles, pointstats
from .airy_spectrum import _airy_zero_magnitude, count_eigs_below, mt59_eigenvalue
from .fredholm import fredholm_certificate, fredholm_det_airy
from .painleve import f1_analytic, f2_analytic
from .specfun import airy_cdf

MT59_K = 0.02
MEAN_COUNT_DEFECT_CAP = 0.5
CAL_ETA = 0.3
CAL_BLOCK_RATE = 0.35
CAL_DELTA = 0.1
# desk-scale calibration of the existential bracket constants: C large
# enough that the two-term envelope drops below the observed functional at
# s as small as 2, K2 matching (the defaults only bind asymptotically)
CAL_C = 25.0
CAL_K2 = 0.3


@dataclass(frozen=True)
class CheckRow:
    check_id: str
    expected: str
    observed: str
    tolerance: str
    passed: bool
    low_power: bool = False
    calibration_only: bool = False

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass
class VerifyReport:
    suite: str
    seed: int
    rows: list[CheckRow] = field(default_factory=list)

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.rows)

    @property
    def low_power_count(self) -> int:
        return sum(r.low_power for r in self.rows)

    def as_dict(self) -> dict:
        return {"suite": self.suite, "seed": self.seed,
                "all_passed": self.all_passed,
                "low_power_count": self.low_power_count,
                "checks": [r.as_dict() for r in self.rows]}


def _num(x: float) -> str:
    return repr(float(x))


def _row(check_id: str, expected: float, observed: float, tolerance: float,
         **kw) -> CheckRow:
    return CheckRow(check_id=check_id, expected=_num(expected),
                    observed=_num(observed), tolerance=_num(tolerance),
                    passed=bool(abs(observed - expected) <= tolerance), **kw)


def _airy_checks(rows: list[CheckRow]) -> None:
    rows.append(_row("airy_integral_total_mass", 1.0, airy_cdf(40.0), 1e-8))
    rows.append(_row("airy_integral_to_zero", 2.0 / 3.0, airy_cdf(0.0), 1e-8))
    rows.append(_row("airy_integral_beyond_zero", 1.0 / 3.0,
                     1.0 - airy_cdf(0.0), 1e-8))


def _spectrum_checks(rows: list[CheckRow]) -> None:
    rows.append(_row("spectrum_lambda1", 2.3381074, _airy_zero_magnitude(1), 1e-6))
    worst = max(k * abs(_airy_zero_magnitude(k) - mt59_eigenvalue(k))
                for k in range(1, 201))
    rows.append(_row("spectrum_closed_form_scaled_error", 0.0, worst, MT59_K))


def _counting_checks(rows: list[CheckRow]) -> None:
    lead = lambda t: (2.0 / (3.0 * math.pi)) * t**1.5
    worst_t = max(abs(count_eigs_below(t) - lead(t))
                  for t in (3.0, 5.0, 10.0, 20.0, 35.0, 50.0))
    rows.append(_row("counting_function_vs_leading_order", 0.0, worst_t, 1.0))
    worst_s = max(abs(pointstats.mean_count(float(s)) - lead(s))
                  for s in range(1, 13))
    rows.append(_row("mean_count_defect_bounded", 0.0, worst_s,
                     MEAN_COUNT_DEFECT_CAP))


def _cross_oracle_checks(rows: list[CheckRow]) -> None:
    for s, v in ((-4.0, 1.0), (0.0, 0.288), (2.0, 3.0)):
        gamma = -math.expm1(-v)
        diff = abs(f2_analytic(s, v) - fredholm_det_airy(s, gamma, order=80))
        rows.append(_row(f"painleve_fredholm_crosscheck_s{s:g}_v{v:g}",
                         0.0, diff, 1e-4))
    cert = fredholm_certificate(-3.0, 0.5, order=80)
    rows.append(_row("fredholm_doubling_convergence", 0.0,
                     cert.doubling_change, 1e-6))


def _se_row(check_id: str, est: pointstats.McEstimate, target: float,
            n_se: float = 3.0) -> CheckRow:
    tol = n_se * est.std_error
    return CheckRow(check_id=check_id, expected=_num(target),
                    observed=_num(est.value), tolerance=_num(tol),
                    passed=bool(abs(est.value - target) <= tol),
                    low_power=est.low_power)


def _identity_checks(rows: list[CheckRow], sample: ensembles.EnsembleSample,
                     seed: int) -> None:
    s, v = -1.0, 1.0
    f1 = f1_analytic(s, v)
    rows.append(_se_row("exp_count_moment_vs_analytic",
                        pointstats.empirical_cgf(sample, s, v), f1))
    gamma = -math.expm1(-v)
    est = pointstats.thinned_max_cdf(sample, s, gamma, seed=seed + 1)
    rows.append(_se_row("thinned_max_cdf_vs_analytic", est, f1))


def laplace_bracket_rows(sample: ensembles.EnsembleSample,
                         s_values=(2.0, 3.0), t_values=(8.0, 27.0),
                         eps: float = 0.1) -> list[CheckRow]:
    """Calibration rows: Monte Carlo multiplicative functional vs the
    two-sided envelope sums evaluated with the disclosed constants."""
    consts = bounds.BoundConstants(C=CAL_C, K2=CAL_K2, eta=CAL_ETA,
                                   S0=min(s_values),
                                   block_rate=CAL_BLOCK_RATE)
    out = []
    for s in s_values:
        for t in t_values:
            est = pointstats.laplace_functional(sample, s, t)
            rep = bounds.kpz_tail_bounds(s, t, eps, CAL_DELTA, consts)
            slack = 3.0 * est.std_error
            inside = rep.lower - slack <= est.value <= rep.upper + slack
            name = f"laplace_functional_bracket_s{s:g}_T{t:g}"
            if not inside:
                name += "_calibration_failure"
            out.append(CheckRow(
                check_id=name,
                expected=f"[{rep.lower!r}, {rep.upper!r}]",
                observed=_num(est.value), tolerance=_num(slack),
                passed=True, low_power=est.low_power, calibration_only=True))
    return out


def crossover_rows(t: float = 8.0) -> list[CheckRow]:
    """The regime classifier must pass goe -> crossover -> deep tail as s
    sweeps across T^(2/3)."""
    pivot = t ** (2.0 / 3.0)
    consts = bounds.BoundConstants(S0=0.5)
    seen = [bounds.kpz_tail_bounds(s, t, 0.1, 0.1, consts).regime.value
            for s in (pivot / 4.0, pivot, pivot * 4.0)]
    ok = seen == ["goe_regime", "crossover", "deep_tail"]
    return [CheckRow(check_id="crossover_classifier_sweep",
                     expected="['goe_regime', 'crossover', 'deep_tail']",
                     observed=str(seen), tolerance="exact", passed=ok)]


def deviation_rows(sample: ensembles.EnsembleSample) -> list[CheckRow]:
    """Empirical count-deviation probabilities: monotone decay on the scale
    grid and domination by the weak envelopes with calibrated constants."""
    rows = []
    scales = (3.0, 4.0, 5.0)
    for side in (pointstats.DeviationSide.LOWER, pointstats.DeviationSide.UPPER):
        probs = []
        low = False
        for s in scales:
            est = pointstats.deviation_prob(
                sample, pointstats.Interval(pointstats.IntervalKind.RAY, s),
                0.25, side)
            probs.append(est.value)
            low = low or est.low_power
        mono = all(probs[i] >= probs[i + 1] for i in range(len(probs) - 1))
        rows.append(CheckRow(
            check_id=f"ray_deviation_{side.value}_monotone",
            expected="non-increasing on scales (3, 4, 5)",
            observed=str(probs), tolerance="exact", passed=mono, low_power=low))
        env_ok = all(p <= math.exp(-CAL_ETA * s**1.5) + 1e-12
                     for p, s in zip(probs, scales))
        rows.append(CheckRow(
            check_id=f"ray_deviation_{side.value}_below_weak_envelope",
            expected=f"<= exp(-{CAL_ETA} * s^1.5)", observed=str(probs),
            tolerance="envelope", passed=env_ok, low_power=low))
    block_probs = []
    low = False
    for ell in scales:
        est = pointstats.deviation_prob(
            sample, pointstats.Interval(pointstats.IntervalKind.BLOCK, ell, k=2),
            0.25, pointstats.DeviationSide.UPPER)
        block_probs.append(est.value)
        low = low or est.low_power
    env_ok = all(p <= math.exp(-CAL_BLOCK_RATE * ell ** (1.0 - CAL_DELTA)) + 1e-12
                 for p, ell in zip(block_probs, scales))
    rows.append(CheckRow(
        check_id="block_deviation_below_weak_envelope",
        expected=f"<= exp(-{CAL_BLOCK_RATE} * l^{1.0 - CAL_DELTA:g})",
        observed=str(block_probs), tolerance="envelope", passed=env_ok,
        low_power=low))
    return rows


def run_verify(suite: str, seed: int, replicates: int = 2000,
               workers: int = 1) -> VerifyReport:
    if suite not in ("fast", "full"):
        raise ValueError(f"unknown suite {suite!r}")
    report = VerifyReport(suite=suite, seed=seed)
    _airy_checks(report.rows)
    _spectrum_checks(report.rows)
    _counting_checks(report.rows)
    _cross_oracle_checks(report.rows)
    if suite == "full":
        sample = ensembles.sample_tridiag_edge(n=800, k=30,
                                               replicates=replicates,
                                               seed=seed, workers=workers)
        _identity_checks(report.rows, sample, seed)
        report.rows.extend(laplace_bracket_rows(sample))
        report.rows.extend(deviation_rows(sample))
        report.rows.extend(crossover_rows())
    return report
