import math

import numpy as np
import pytest

from kpzedge.airy_spectrum import airy_eigs
from kpzedge.ensembles import PointConfiguration, SamplerKind
from kpzedge.errors import InvalidArgumentError, TruncationError
from kpzedge.pointstats import (DeviationSide, Interval, IntervalKind,
                                McEstimate, c_eps, count_in, deviation_prob,
                                empirical_cgf, laplace_functional, mean_count,
                                rho1_goe, tail_prob_max, thinned_max_cdf)


def _config(*points):
    return PointConfiguration(points=tuple(points), source=SamplerKind.SYNTHETIC)


def test_interval_encoding():
    assert Interval(IntervalKind.RAY, 4.0).bounds == (-4.0, math.inf)
    assert Interval(IntervalKind.BLOCK, 2.0, k=2).bounds == (-4.0, -2.0)
    assert Interval(IntervalKind.BLOCK, 2.0, k=1).bounds == (-2.0, math.inf)
    with pytest.raises(InvalidArgumentError):
        Interval(IntervalKind.RAY, -1.0)
    with pytest.raises(InvalidArgumentError):
        Interval(IntervalKind.RAY, 2.0, k=3)
    with pytest.raises(InvalidArgumentError):
        Interval(IntervalKind.BLOCK, 2.0, k=0)


def test_count_in_examples():
    empty = PointConfiguration(points=(), source=SamplerKind.SYNTHETIC)
    assert count_in(empty, Interval(IntervalKind.RAY, 4.0)) == 0
    cfg = _config(-1.0, -3.0, -5.0)
    assert count_in(cfg, Interval(IntervalKind.RAY, 4.0)) == 2
    assert count_in(cfg, Interval(IntervalKind.BLOCK, 2.0, k=2)) == 1


def test_count_in_truncation_error():
    cfg = _config(-1.0, -3.0)
    with pytest.raises(TruncationError) as exc:
        count_in(cfg, Interval(IntervalKind.RAY, 4.0))
    assert exc.value.needed_depth == -4.0


def test_count_in_block_additivity():
    cfg = _config(-0.5, -1.7, -2.1, -3.9, -5.5, -7.0, -8.2)
    ell, kmax = 2.0, 4
    total = count_in(cfg, Interval(IntervalKind.RAY, kmax * ell))
    parts = sum(count_in(cfg, Interval(IntervalKind.BLOCK, ell, k=k))
                for k in range(1, kmax + 1))
    assert total == parts


def test_rho1_goe_deep_negative_leading_order():
    assert rho1_goe(-9.0) == pytest.approx(math.sqrt(9.0) / math.pi, rel=0.02)


def test_mean_count_bounded_defect():
    assert abs(mean_count(4.0) - 16.0 / (3.0 * math.pi)) < 1.0
    for s in (1.0, 4.0, 8.0, 12.0):
        assert abs(mean_count(s) - (2.0 / (3.0 * math.pi)) * s**1.5) <= 0.5


def test_mean_count_validation():
    with pytest.raises(InvalidArgumentError):
        mean_count(0.0)
    with pytest.raises(InvalidArgumentError):
        mean_count(-2.0)


def test_mean_count_vs_monte_carlo(big_sample):
    # 2000 replicates: the desk scale at which the finite-n bias of the
    # n = 2000 sampler stays below the Monte Carlo noise floor
    pts = big_sample.as_array()[:2000]
    for s in (2.0, 4.0, 6.0):
        counts = (pts >= -s).sum(axis=1).astype(float)
        se = counts.std(ddof=1) / math.sqrt(len(counts))
        assert abs(counts.mean() - mean_count(s)) <= 3.0 * se


def test_cgf_v_zero_exact(big_sample):
    est = empirical_cgf(big_sample, -1.0, 0.0)
    assert est.value == 1.0 and est.std_error == 0.0


def test_cgf_rejects_negative_v(big_sample):
    with pytest.raises(InvalidArgumentError):
        empirical_cgf(big_sample, -1.0, -0.5)


def test_cgf_depth_guard(big_sample):
    with pytest.raises(TruncationError):
        empirical_cgf(big_sample, -200.0, 1.0)


def test_cgf_nonincreasing_in_v(big_sample):
    vals = [empirical_cgf(big_sample, -1.0, v).value
            for v in (0.0, 0.5, 1.0, 2.0, 4.0)]
    assert all(a >= b for a, b in zip(vals, vals[1:]))


def test_cgf_large_v_approaches_max_indicator(big_sample):
    est = empirical_cgf(big_sample, -1.0, 50.0)
    tail = tail_prob_max(big_sample, 1.0)
    tol = 3.0 * math.hypot(est.std_error, tail.std_error) + 1e-6
    assert abs(est.value - tail.value) <= tol


def test_thinned_max_matches_cgf_paired(big_sample):
    v = 1.0
    gamma = -math.expm1(-v)
    cgf = empirical_cgf(big_sample, -1.0, v)
    tm = thinned_max_cdf(big_sample, -1.0, gamma, seed=314159)
    tol = 3.0 * math.hypot(cgf.std_error, tm.std_error)
    assert abs(cgf.value - tm.value) <= tol


def test_thinned_max_gamma_extremes(big_sample):
    assert thinned_max_cdf(big_sample, -1.0, 0.0, seed=1).value == 1.0
    assert thinned_max_cdf(big_sample, 50.0, 1.0, seed=1).value == 1.0


def test_c_eps_synthetic():
    spectrum = airy_eigs(5)
    exact = _config(*(-spectrum[k] for k in range(1, 6)))
    assert c_eps(exact, 0.1, spectrum) == 0.0
    eps = 0.1
    # push the deepest point 2 beyond its tolerance band (keeps ordering)
    shifted = _config(*(-spectrum[k] for k in range(1, 5)),
                      -((1.0 + eps) * spectrum[5] + 2.0))
    assert c_eps(shifted, eps, spectrum) == pytest.approx(2.0, abs=1e-12)


def test_c_eps_nonincreasing_in_eps():
    spectrum = airy_eigs(8)
    cfg = _config(*(-(1.15 * spectrum[k]) for k in range(1, 9)))
    vals = [c_eps(cfg, e, spectrum) for e in (0.05, 0.1, 0.2, 0.4)]
    assert all(a >= b for a, b in zip(vals, vals[1:]))


def test_c_eps_spectrum_too_short():
    spectrum = airy_eigs(2)
    cfg = _config(-1.0, -2.0, -3.0)
    with pytest.raises(InvalidArgumentError):
        c_eps(cfg, 0.1, spectrum)


def test_c_eps_tail_shape(big_sample):
    spectrum = airy_eigs(big_sample.k)
    vals = np.array([c_eps(c, 0.3, spectrum) for c in big_sample.configs])
    probs = [(vals >= t).mean() for t in (1.0, 2.0, 3.0)]
    assert all(a >= b for a, b in zip(probs, probs[1:]))
    assert probs[-1] < 0.05


def test_log_weight_small_t_limit():
    # per-point factor tends to 2^(-1/2), i.e. the exponent to (1/2) log 2;
    # the full-sample small-T limit is unreachable because the truncation
    # depth requirement scales like T^(-1/3)
    from kpzedge.pointstats import log_weight

    for x in (-30.0, -5.0, 0.0, 2.0):
        assert log_weight(x, 1.0, 1e-30) == pytest.approx(0.5 * math.log(2.0),
                                                          abs=1e-8)


def test_laplace_decreasing_in_s(big_sample):
    vals = [laplace_functional(big_sample, s, 10.0).value for s in (1.0, 2.0, 3.0)]
    assert all(0.0 < v < 1.0 for v in vals)
    assert all(a > b for a, b in zip(vals, vals[1:]))


def test_laplace_depth_guard(big_sample):
    with pytest.raises(TruncationError):
        laplace_functional(big_sample, 2.0, 0.001)


def test_tail_prob_low_power_flag(big_sample):
    assert tail_prob_max(big_sample, 0.0).low_power is False
    assert tail_prob_max(big_sample, 8.0).low_power is True


def test_tail_prob_near_typical(big_sample):
    est = tail_prob_max(big_sample, 0.0)
    assert est.value == pytest.approx(0.83, abs=3.0 * est.std_error + 0.02)


def test_deviation_huge_c_no_hits(big_sample):
    iv = Interval(IntervalKind.RAY, 4.0)
    est = deviation_prob(big_sample, iv, 1000.0, DeviationSide.UPPER)
    assert est.value == 0.0 and est.low_power


def test_deviation_nested_in_c(big_sample):
    iv = Interval(IntervalKind.RAY, 4.0)
    p_small = deviation_prob(big_sample, iv, 0.25, DeviationSide.LOWER).value
    p_big = deviation_prob(big_sample, iv, 0.5, DeviationSide.LOWER).value
    assert p_big <= p_small


def test_mc_estimate_se_convention():
    est = McEstimate(value=0.5, std_error=0.1, replicates=10)
    assert est.agrees_with(0.7, n_se=3.0)
    assert not est.agrees_with(0.9, n_se=3.0)
