"""Synthetic stationary sequences with atomic spectra, and ergodic averaging.

A spectrum is a finite list of atoms (frequency, variance).  Realizations draw
one complex Gaussian amplitude per atom, so the sequence is
x_t = m + sum_k z_k exp(i lambda_k t) and its covariance is the finite
trigonometric sum R(h) = sum_k sigma_k^2 exp(i lambda_k h).  The ergodic
average of a realization converges to m plus the realized amplitude at
frequency zero; with no zero atom the average decays like 1/n.

All randomness flows through numpy's PCG64 generator: a study with master
seed s gives replicate r the stream SeedSequence(s).spawn(...)[r], so results
are reproducible and schedule-independent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .sums import SummationSeries


@dataclass(frozen=True)
class SpectralSpec:
    """Atomic spectral measure: atoms are (frequency in [-pi, pi], variance > 0)."""

    atoms: tuple[tuple[float, float], ...]
    mean: float = 0.0

    def __post_init__(self):
        freqs = [a[0] for a in self.atoms]
        if len(set(freqs)) != len(freqs):
            raise ValueError("atom frequencies must be distinct")
        for lam, sig2 in self.atoms:
            if not -math.pi <= lam <= math.pi:
                raise ValueError(f"frequency {lam} outside [-pi, pi]")
            if sig2 <= 0:
                raise ValueError("atom variances must be positive")

    def total_variance(self) -> float:
        return sum(sig2 for _, sig2 in self.atoms)

    def zero_atom_index(self) -> int | None:
        for i, (lam, _) in enumerate(self.atoms):
            if lam == 0.0:
                return i
        return None


@dataclass(frozen=True)
class SpectralRealization:
    spec: SpectralSpec
    seed: int | None
    z: np.ndarray  # complex amplitude per atom
    x: np.ndarray  # complex sequence, indices 0..n-1


def _draw_amplitudes(spec: SpectralSpec, rng: np.random.Generator) -> np.ndarray:
    sig2 = np.array([a[1] for a in spec.atoms], dtype=np.float64)
    scale = np.sqrt(sig2 / 2.0)
    return rng.standard_normal(len(sig2)) * scale + 1j * rng.standard_normal(len(sig2)) * scale


def _reconstruct(spec: SpectralSpec, z: np.ndarray, n: int) -> np.ndarray:
    lam = np.array([a[0] for a in spec.atoms], dtype=np.float64)
    phases = np.exp(1j * np.outer(np.arange(n), lam))
    return phases @ z + spec.mean


def sample_spectral(spec: SpectralSpec, n: int, seed: int) -> SpectralRealization:
    """Realize x_0..x_{n-1}; amplitudes are independent complex Gaussians.

    Independence implies the required orthogonality E z_i conj(z_j) = 0.
    """
    if not spec.atoms:
        raise ValueError("spectrum must contain at least one atom")
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    z = _draw_amplitudes(spec, rng)
    return SpectralRealization(spec, seed, z, _reconstruct(spec, z, n))


def theoretical_covariance(spec: SpectralSpec, h: int) -> complex:
    """R(h) = sum_k sigma_k^2 exp(i lambda_k h) (the atomic spectral transform)."""
    return complex(sum(sig2 * np.exp(1j * lam * h) for lam, sig2 in spec.atoms))


def ergodic_average(realization: SpectralRealization) -> complex:
    """A_n = (1/n) sum_{k<n} x_k of the realized sequence."""
    return complex(realization.x.mean())


def _partial_mean_factor(lam: float, n: int) -> complex:
    # (1/n) sum_{k<n} exp(i lam k); exactly 1 at lam = 0.
    if lam == 0.0:
        return 1.0 + 0.0j
    return (np.exp(1j * lam * n) - 1.0) / (n * (np.exp(1j * lam) - 1.0))


@dataclass(frozen=True)
class MseStudy:
    n_values: tuple[int, ...]
    mse: tuple[float, ...]
    median_sq_error: tuple[float, ...]
    replicates: int
    seed: int


def mse_study(spec: SpectralSpec, n_values, replicates: int, seed: int) -> MseStudy:
    """Mean-square error of A_n against its limit, averaged over replicates.

    The limit is mean + z at frequency zero (the realized amplitude) when a
    zero atom exists, else the mean alone.  Per-replicate averages are
    evaluated atom-wise through exact partial geometric sums, which equals
    averaging the reconstructed series term by term.
    """
    if not spec.atoms:
        raise ValueError("spectrum must contain at least one atom")
    if replicates < 100:
        raise ValueError("need at least 100 replicates")
    ns = [int(v) for v in n_values]
    if not ns or any(v < 1 for v in ns):
        raise ValueError("n values must be positive")
    lam = np.array([a[0] for a in spec.atoms], dtype=np.float64)
    moving = lam != 0.0
    factors = np.array(
        [[_partial_mean_factor(l, n) for l in lam[moving]] for n in ns],
        dtype=np.complex128,
    ).reshape(len(ns), -1)
    children = np.random.SeedSequence(seed).spawn(replicates)
    errs = np.empty((replicates, len(ns)), dtype=np.float64)
    for r, child in enumerate(children):
        z = _draw_amplitudes(spec, np.random.default_rng(child))
        drift = factors @ z[moving] if moving.any() else np.zeros(len(ns), dtype=complex)
        errs[r] = np.abs(drift) ** 2
    return MseStudy(
        tuple(ns),
        tuple(float(v) for v in errs.mean(axis=0)),
        tuple(float(v) for v in np.median(errs, axis=0)),
        replicates,
        seed,
    )


def covariance_average(spec: SpectralSpec, n: int) -> float:
    """(1/n) sum_{k<n} R(k); converges to the variance of the zero atom."""
    if n < 1:
        raise ValueError("n must be >= 1")
    ks = np.arange(n)
    total = 0.0j
    for lam, sig2 in spec.atoms:
        total += sig2 * np.exp(1j * lam * ks).sum()
    return float((total / n).real)


@dataclass(frozen=True)
class MovingAverageSpec:
    """Finite moving average y_t = sum_{k<=K} a_k xi_{t-k} (+ mean)."""

    coefficients: tuple
    mean: float = 0.0

    def __post_init__(self):
        if not self.coefficients:
            raise ValueError("at least one coefficient is required")

    @property
    def span(self) -> int:
        return len(self.coefficients) - 1


def sample_moving_average(spec: MovingAverageSpec, n: int, seed: int) -> np.ndarray:
    """Length-n sample driven by i.i.d. standard normal innovations."""
    k = spec.span
    if n <= 10 * k:
        raise ValueError(f"n={n} too small for coefficient span {k} (need n > {10 * k})")
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    xi = rng.standard_normal(n + k)
    a = np.asarray(spec.coefficients)
    y = np.convolve(xi, a, mode="valid")
    return y + spec.mean


def ma_theoretical_covariance(spec: MovingAverageSpec, h: int):
    """R(h) = sum_j a_{j+h} conj(a_j) for unit-variance orthonormal innovations."""
    a = np.asarray(spec.coefficients)
    h = abs(int(h))
    if h > spec.span:
        return 0.0 if not np.iscomplexobj(a) else 0.0j
    value = np.sum(a[h:] * np.conj(a[: len(a) - h]))
    return complex(value) if np.iscomplexobj(a) else float(value.real)


def empirical_autocovariance(x: np.ndarray, lags, center: bool = True) -> np.ndarray:
    """R_hat(h) = (1/(n-h)) sum_k (x_{k+h} - m) conj(x_k - m) for each lag."""
    x = np.asarray(x)
    n = len(x)
    xc = x - x.mean() if center else x
    out = []
    for h in lags:
        h = int(h)
        if not 0 <= h < n:
            raise ValueError(f"lag {h} outside [0, {n})")
        m = n - h
        out.append(np.dot(xc[h:], np.conj(xc[:m])) / m)
    result = np.array(out)
    return result.real if not np.iscomplexobj(x) else result


@dataclass(frozen=True)
class ErgodicTrajectory:
    checkpoints: tuple[int, ...]
    mean_gap: tuple[float, ...]           # S(n)/n - m
    scaled_deviation: tuple[float, ...]   # (S(n) - n m)/sqrt(n)
    max_scaled_deviation: float


def arithmetic_ergodic_check(series: SummationSeries, m: float) -> ErgodicTrajectory:
    """Trajectories of S(n)/n - m and (S(n) - n m)/sqrt(n) at the checkpoints.

    Reported, not asserted: convergence is only guaranteed for sequences that
    are stationary with the mean m, and the scaled deviation records the
    observed square-root-order constant.
    """
    if not series.checkpoints:
        raise ValueError("series has no checkpoints")
    gaps = []
    scaled = []
    for n, s in zip(series.checkpoints, series.sums):
        gaps.append(s / n - m)
        scaled.append((s - n * m) / math.sqrt(n))
    return ErgodicTrajectory(
        series.checkpoints,
        tuple(gaps),
        tuple(scaled),
        max(abs(v) for v in scaled),
    )
