"""Random phase sequences and the truncated random series."""

import numpy as np
import pytest

from lerchlab.lerch import LerchParameters, StripPoint, eval_series
from lerchlab.randomseries import (
    PhaseSequence,
    RandomSeriesConfig,
    eval_random_series,
    phase_at,
    sample_phases,
    tail_estimate,
)

from support.oracles import ks_two_sample


def test_unit_modulus():
    ph = sample_phases(42, 5000)
    assert np.max(np.abs(np.abs(ph.phases) - 1.0)) <= 1e-14


def test_determinism():
    a = sample_phases(9, 256)
    b = sample_phases(9, 256)
    assert np.array_equal(a.phases, b.phases)
    c = sample_phases(10, 256)
    assert not np.array_equal(a.phases, c.phases)


def test_counter_based_isolation():
    ph = sample_phases(12345, 64).phases
    for n in (0, 1, 2, 3, 4, 5, 31, 63):
        assert abs(phase_at(12345, n) - ph[n]) < 1e-15


def test_phase_mean_over_many_seeds():
    mean = np.mean([phase_at(seed, 0) for seed in range(100000)])
    assert abs(mean) <= 0.02


def test_identity_phases_reproduce_partial_sum():
    """omega = 1 gives the plain partial sum bit for bit."""
    p = LerchParameters(1.0 / np.pi, 2.0 / 3.0)
    s = StripPoint(1.4, -3.0)
    n = 1500
    omega = PhaseSequence(np.ones(n, dtype=complex), seed=0, n=n)
    model = eval_random_series(s, RandomSeriesConfig(n, p), omega)
    plain = eval_series(s, p, n)
    assert model == plain.value


def test_single_term():
    p = LerchParameters(0.42, 0.77)
    s = StripPoint(0.8, 1.0)
    omega = sample_phases(5, 1)
    val = eval_random_series(s, RandomSeriesConfig(1, p), omega)
    assert abs(val - omega.phases[0] * 0.42 ** -complex(0.8, 1.0)) < 1e-14


def test_second_moment_orthogonality():
    """E|L_N|^2 = sum (n+alpha)^(-2 sigma) under independent uniform phases."""
    p = LerchParameters(1.0 / np.pi, 1.0 / 3.0)
    s = StripPoint(0.75, 0.0)
    n = 100
    cfg = RandomSeriesConfig(n, p)
    vals = np.array(
        [eval_random_series(s, cfg, sample_phases(seed, n)) for seed in range(4000)]
    )
    predicted = float(np.sum((np.arange(n) + p.alpha) ** (-2 * s.sigma)))
    assert abs(np.mean(np.abs(vals) ** 2) / predicted - 1.0) <= 0.03


def test_rotation_linearity():
    p = LerchParameters(0.5, 0.25)
    s = StripPoint(0.9, 2.0)
    n = 300
    omega = sample_phases(17, n)
    zeta0 = np.exp(1.23j)
    rotated = PhaseSequence(zeta0 * omega.phases, seed=17, n=n)
    a = eval_random_series(s, RandomSeriesConfig(n, p), rotated)
    b = zeta0 * eval_random_series(s, RandomSeriesConfig(n, p), omega)
    assert abs(a - b) <= 1e-12 * max(1.0, abs(b))


def test_distributional_rotation_symmetry():
    """Re L_N and Re(zeta0 L_N) have matching empirical laws over seeds."""
    p = LerchParameters(1.0 / np.pi, 1.0 / 3.0)
    s = StripPoint(0.75, 0.0)
    n = 200
    cfg = RandomSeriesConfig(n, p)
    vals = np.array(
        [eval_random_series(s, cfg, sample_phases(seed, n)) for seed in range(10000)]
    )
    zeta0 = np.exp(1j * np.pi / 4)
    ks = ks_two_sample(vals.real, (zeta0 * vals).real)
    assert ks <= 0.02


def test_truncation_mismatch():
    p = LerchParameters(1.0, 0.5)
    omega = sample_phases(1, 10)
    with pytest.raises(ValueError):
        eval_random_series(StripPoint(0.8, 0.0), RandomSeriesConfig(11, p), omega)


def test_sigma_precondition():
    p = LerchParameters(1.0, 0.5)
    omega = sample_phases(1, 10)
    with pytest.raises(ValueError):
        eval_random_series(StripPoint(0.5, 0.0), RandomSeriesConfig(10, p), omega)


def test_tail_estimate_examples():
    """Frozen against the integral-comparison oracle int_{N-1} x^(-2s) dx."""
    t1 = tail_estimate(RandomSeriesConfig(100, LerchParameters(1.0, 1.0)), StripPoint(1.0, 0.0))
    assert t1 <= np.sqrt(1.0 / 99.0) + 1e-12  # oracle value ~= 0.1005
    t2 = tail_estimate(
        RandomSeriesConfig(10**4, LerchParameters(1.0, 1.0)), StripPoint(0.75, 0.0)
    )
    assert t2 <= np.sqrt((10**4 - 1.0) ** -0.5 / 0.5) + 1e-12  # ~= 0.1415
    # the bound really is an upper bound on the true tail
    true_tail_sq = float(np.sum((np.arange(100, 400000) + 1.0) ** -2.0))
    assert t1**2 >= true_tail_sq


def test_tail_estimate_monotone():
    p = LerchParameters(0.8, 0.3)
    s = StripPoint(0.7, 0.0)
    vals = [tail_estimate(RandomSeriesConfig(n, p), s) for n in (10, 100, 1000, 10000)]
    assert all(a > b for a, b in zip(vals, vals[1:]))
