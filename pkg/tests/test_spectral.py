import cmath
import math

import numpy as np
import pytest

import sievestats as ss
from sievestats.spectral import (
    MovingAverageSpec,
    SpectralSpec,
    _draw_amplitudes,
    _reconstruct,
    empirical_autocovariance,
)


def test_spec_validation():
    with pytest.raises(ValueError, match="distinct"):
        SpectralSpec(((0.5, 1.0), (0.5, 2.0)))
    with pytest.raises(ValueError, match="positive"):
        SpectralSpec(((0.5, 0.0),))
    with pytest.raises(ValueError, match="outside"):
        SpectralSpec(((4.0, 1.0),))
    with pytest.raises(ValueError, match="at least one atom"):
        ss.sample_spectral(SpectralSpec(()), 10, seed=1)


def test_zero_frequency_atom_gives_constant_sequence():
    real = ss.sample_spectral(SpectralSpec(((0.0, 1.0),)), 50, seed=42)
    assert np.all(real.x == real.x[0])
    assert real.x[0] == real.z[0]


def test_pi_frequency_atom_alternates():
    real = ss.sample_spectral(SpectralSpec(((math.pi, 1.0),)), 6, seed=42)
    z = real.z[0]
    assert real.x[0] == pytest.approx(z)
    assert real.x[1] == pytest.approx(-z)
    assert real.x[2] == pytest.approx(z, rel=1e-12)
    assert real.x[5] == pytest.approx(-z, rel=1e-12)


def test_reconstruction_matches_termwise_sum():
    spec = SpectralSpec(((0.5, 1.0), (-1.3, 2.0), (3.0, 0.25)))
    real = ss.sample_spectral(spec, 300, seed=7)
    direct = np.array(
        [
            sum(z * cmath.exp(1j * lam * k) for z, (lam, _) in zip(real.z, spec.atoms))
            for k in range(300)
        ]
    )
    assert np.abs(real.x - direct).max() < 1e-12


def test_theoretical_covariance_examples():
    assert ss.theoretical_covariance(SpectralSpec(((0.0, 2.0),)), 5) == pytest.approx(2.0)
    assert ss.theoretical_covariance(SpectralSpec(((math.pi, 1.0),)), 1) == pytest.approx(
        -1.0, abs=1e-12
    )
    spec = SpectralSpec(((math.pi / 2, 1.0), (-math.pi / 2, 1.0)))
    assert ss.theoretical_covariance(spec, 1) == pytest.approx(
        2 * math.cos(math.pi / 2), abs=1e-12
    )


def test_covariance_bounded_by_lag_zero():
    spec = SpectralSpec(((0.3, 1.5), (1.1, 0.5), (-2.0, 0.75)))
    r0 = ss.theoretical_covariance(spec, 0)
    assert r0 == pytest.approx(spec.total_variance())
    for h in range(1, 30):
        assert abs(ss.theoretical_covariance(spec, h)) <= abs(r0) + 1e-12


def test_empirical_autocovariance_matches_theory_on_average():
    # Average over a pinned seed set; single realizations keep the realized
    # |z|^2 rather than the ensemble variances.
    spec = SpectralSpec(((0.5, 1.0), (-1.3, 2.0), (3.0, 0.25)))
    n, replicates = 400, 64
    children = np.random.SeedSequence(2024).spawn(replicates)
    lags = range(0, 11)
    acc = np.zeros(11, dtype=complex)
    for child in children:
        z = _draw_amplitudes(spec, np.random.default_rng(child))
        x = _reconstruct(spec, z, n)
        acc += empirical_autocovariance(x, lags, center=False)
    acc /= replicates
    theory = np.array([ss.theoretical_covariance(spec, h) for h in lags])
    tolerance = 5 * spec.total_variance() / math.sqrt(n)
    assert np.abs(acc - theory).max() <= tolerance


def test_two_atom_autocovariance_within_monte_carlo_error():
    spec = SpectralSpec(((0.7, 1.0), (-2.1, 0.5)))
    replicates, n = 100, 10**4
    lags = [0, 1, 2, 5, 10]
    children = np.random.SeedSequence(424242).spawn(replicates)
    samples = np.zeros((replicates, len(lags)), dtype=complex)
    for i, child in enumerate(children):
        z = _draw_amplitudes(spec, np.random.default_rng(child))
        x = _reconstruct(spec, z, n)
        samples[i] = empirical_autocovariance(x, lags, center=False)
    mean = samples.mean(axis=0)
    stderr = samples.std(axis=0, ddof=1) / math.sqrt(replicates)
    for j, h in enumerate(lags):
        theory = ss.theoretical_covariance(spec, h)
        assert abs(mean[j] - theory) <= 3 * abs(stderr[j])


def test_ergodic_average_exact_at_zero_frequency():
    real = ss.sample_spectral(SpectralSpec(((0.0, 1.0),)), 100, seed=42)
    assert abs(ss.ergodic_average(real) - complex(real.z[0])) < 1e-14


def test_ergodic_average_geometric_bound():
    spec = SpectralSpec(((math.pi / 2, 1.0),))
    for n in (10, 100, 1000):
        real = ss.sample_spectral(spec, n, seed=3)
        bound = abs(real.z[0]) * 2 / (abs(1 - cmath.exp(1j * math.pi / 2)) * n)
        assert abs(ss.ergodic_average(real)) <= bound * (1 + 1e-9)


def test_mse_study_zero_atom_is_exactly_zero():
    study = ss.mse_study(SpectralSpec(((0.0, 1.0),)), [100, 10**4], 100, seed=9)
    assert study.mse == (0.0, 0.0)


def test_mse_study_decay_without_zero_atom():
    spec = SpectralSpec(((1.0, 1.0), (2.2, 0.5)))
    study = ss.mse_study(spec, [100, 10**4], 200, seed=1234)
    assert study.mse[1] <= 0.02 * study.mse[0]


def test_mse_study_medians_decay():
    spec = SpectralSpec(((1.0, 1.0), (2.2, 0.5)))
    study = ss.mse_study(spec, [100, 1000, 10**4], 200, seed=1234)
    med = study.median_sq_error
    assert med[0] > med[1] > med[2]


def test_mse_study_validation():
    spec = SpectralSpec(((1.0, 1.0),))
    with pytest.raises(ValueError, match="100 replicates"):
        ss.mse_study(spec, [100], 50, seed=1)
    with pytest.raises(ValueError, match="positive"):
        ss.mse_study(spec, [0], 100, seed=1)


def test_covariance_average_zero_atom_exact():
    spec = SpectralSpec(((0.0, 2.0),))
    for n in (1, 7, 100):
        assert ss.covariance_average(spec, n) == 2.0


def test_covariance_average_pi_atom_cancels_on_even_n():
    spec = SpectralSpec(((math.pi, 1.0),))
    assert abs(ss.covariance_average(spec, 10)) < 1e-9
    assert abs(ss.covariance_average(spec, 10**4)) < 1e-9


def test_covariance_average_mixed_spectrum():
    spec = SpectralSpec(((0.0, 2.0), (math.pi / 3, 1.0)))
    assert ss.covariance_average(spec, 10**4) == pytest.approx(2.0, abs=1e-3)


def test_moving_average_matches_loop_oracle():
    coeffs = (0.5, -1.0, 2.0)
    spec = MovingAverageSpec(coeffs)
    y = ss.sample_moving_average(spec, 40, seed=3)
    rng = np.random.default_rng(np.random.SeedSequence(3))
    xi = rng.standard_normal(40 + 2)
    direct = np.array(
        [sum(coeffs[k] * xi[t + 2 - k] for k in range(3)) for t in range(40)]
    )
    assert np.abs(y - direct).max() < 1e-12


def test_moving_average_white_noise():
    y = ss.sample_moving_average(MovingAverageSpec((1.0,)), 10**5, seed=5)
    r1 = empirical_autocovariance(y, [1])[0]
    assert abs(r1) <= 3 / math.sqrt(10**5)


def _bartlett_se(spec: MovingAverageSpec, h: int, n: int) -> float:
    r = lambda m: ss.ma_theoretical_covariance(spec, m)
    span = spec.span
    s = sum(r(m) ** 2 + r(m + h) * r(m - h) for m in range(-span - 2, span + 3))
    return math.sqrt(abs(s) / n)


def test_moving_average_covariance_matches_convolution_oracle():
    spec = MovingAverageSpec((1.0, 1.0))
    assert ss.ma_theoretical_covariance(spec, 0) == pytest.approx(2.0)
    assert ss.ma_theoretical_covariance(spec, 1) == pytest.approx(1.0)
    assert ss.ma_theoretical_covariance(spec, 2) == 0.0
    n = 10**5
    y = ss.sample_moving_average(spec, n, seed=77)
    emp = empirical_autocovariance(y, [0, 1, 2])
    for h in (0, 1, 2):
        theory = ss.ma_theoretical_covariance(spec, h)
        assert abs(emp[h] - theory) <= 3 * _bartlett_se(spec, h, n)


def test_ma_covariance_is_a_convolution():
    coeffs = (0.5, -1.0, 2.0, 0.25)
    spec = MovingAverageSpec(coeffs)
    for h in range(0, 6):
        direct = sum(
            coeffs[j + h] * coeffs[j] for j in range(len(coeffs) - h)
        ) if h < len(coeffs) else 0.0
        assert ss.ma_theoretical_covariance(spec, h) == pytest.approx(direct)


def test_moving_average_mean_recovery():
    spec = MovingAverageSpec((2.0,), mean=1.5)
    y = ss.sample_moving_average(spec, 10**4, seed=11)
    assert y.mean() == pytest.approx(1.5, abs=3 * 2.0 / math.sqrt(10**4))


def test_moving_average_span_validation():
    spec = MovingAverageSpec((1.0,) * 11)
    with pytest.raises(ValueError, match="too small"):
        ss.sample_moving_average(spec, 100, seed=1)
    with pytest.raises(ValueError, match="coefficient"):
        MovingAverageSpec(())


def test_arithmetic_ergodic_check_constant_function():
    cps = (10, 100, 1000)
    series = ss.SummationSeries(ss.SQUAREFREE, cps, cps)  # S(n) = n, f constant 1
    traj = ss.arithmetic_ergodic_check(series, 1.0)
    assert traj.mean_gap == (0.0, 0.0, 0.0)
    assert traj.scaled_deviation == (0.0, 0.0, 0.0)
    assert traj.max_scaled_deviation == 0.0


def test_arithmetic_ergodic_check_mertens_trajectory():
    cps = [10**3, 10**4, 10**5, 10**6]
    series = ss.accumulate(ss.MOEBIUS, 10**6, cps)
    traj = ss.arithmetic_ergodic_check(series, 0.0)
    gaps = [abs(g) for g in traj.mean_gap]
    assert gaps[-1] < gaps[0]           # S(n)/n shrinking toward zero
    assert traj.max_scaled_deviation < 1.0  # |M(n)|/sqrt(n) stays below 1 here


def test_arithmetic_ergodic_check_squarefree_bound():
    cps = [int(v) for v in np.unique(np.geomspace(100, 10**6, 30).astype(int))]
    series = ss.accumulate(ss.SQUAREFREE, 10**6, cps)
    traj = ss.arithmetic_ergodic_check(series, 6 / math.pi**2)
    assert traj.max_scaled_deviation <= 2.0


def test_arithmetic_ergodic_check_requires_checkpoints():
    series = ss.SummationSeries(ss.MOEBIUS, (), ())
    with pytest.raises(ValueError, match="no checkpoints"):
        ss.arithmetic_ergodic_check(series, 0.0)
