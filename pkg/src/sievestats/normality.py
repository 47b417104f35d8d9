"""Block-sum normality tests and closed-form moment constants.

A single deterministic sequence provides one realization of its partial sums,
so limiting normality is tested on disjoint block sums treated as
approximately independent replicates.  Standardization uses the block-sample
mean and standard deviation: the test targets shape, not location, and
dependence between blocks inflates the statistic rather than hiding it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .sieves import ValueTable

_SQRT2 = math.sqrt(2.0)


def binomial_variance(q: int, n: int) -> float:
    """Variance Q(1 - Q/n) of an n-trial count with Q observed successes."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 0 <= q <= n:
        raise ValueError("need 0 <= Q <= n")
    return q * (1.0 - q / n)


def normal_cdf(z: float) -> float:
    """Standard normal CDF via erfc (absolute error well below 1e-7)."""
    return 0.5 * math.erfc(-z / _SQRT2)


def ks_normal(samples) -> float:
    """Two-sided Kolmogorov-Smirnov distance from samples to the standard normal.

    The supremum is evaluated at the sample points from both sides of each
    jump of the empirical CDF.
    """
    z = np.asarray(samples, dtype=np.float64)
    if z.size < 30:
        raise ValueError("need at least 30 samples")
    if not np.all(np.isfinite(z)):
        raise ValueError("samples must be finite")
    z = np.sort(z)
    j = z.size
    cdf = np.array([normal_cdf(v) for v in z])
    d_plus = float(np.max(np.arange(1, j + 1) / j - cdf))
    d_minus = float(np.max(cdf - np.arange(0, j) / j))
    return max(d_plus, d_minus)


@dataclass(frozen=True)
class BlockSample:
    block_size: int
    block_count: int
    block_sums: tuple[float, ...]
    standardized: tuple[float, ...]
    sample_mean: float
    sample_sd: float


def standardize_blocks(values: np.ndarray, block_size: int) -> BlockSample:
    """Disjoint block sums T_j and their studentized values (T_j - mean)/sd."""
    if block_size < 100:
        raise ValueError("block size must be >= 100")
    values = np.asarray(values)
    count = len(values) // block_size
    if count < 30:
        raise ValueError(f"too few blocks ({count}); need >= 30")
    trimmed = values[: count * block_size].reshape(count, block_size)
    if np.issubdtype(values.dtype, np.integer):
        sums = trimmed.sum(axis=1, dtype=np.int64).astype(np.float64)
    else:
        sums = trimmed.sum(axis=1, dtype=np.float64)
    mean = float(sums.mean())
    sd = float(sums.std(ddof=1))
    if sd == 0.0:
        raise ValueError("degenerate variance: all block sums are equal")
    z = (sums - mean) / sd
    return BlockSample(
        block_size,
        count,
        tuple(float(t) for t in sums),
        tuple(float(v) for v in z),
        mean,
        sd,
    )


def block_standardize(table: ValueTable, n: int, block_size: int) -> BlockSample:
    return standardize_blocks(table.prefix(n), block_size)


@dataclass(frozen=True)
class NormalityReport:
    label: str
    n: int
    block_size: int
    block_count: int
    standardized: tuple[float, ...]
    ks_statistic: float
    sample_mean: float
    sample_sd: float


def report_from_blocks(label: str, n: int, blocks: BlockSample) -> NormalityReport:
    return NormalityReport(
        label,
        n,
        blocks.block_size,
        blocks.block_count,
        blocks.standardized,
        ks_normal(blocks.standardized),
        blocks.sample_mean,
        blocks.sample_sd,
    )


def report_from_values(label: str, values: np.ndarray, block_size: int) -> NormalityReport:
    return report_from_blocks(label, len(values), standardize_blocks(values, block_size))


def normality_report(table: ValueTable, n: int, block_size: int) -> NormalityReport:
    """Full pipeline: block sums -> standardization -> KS distance to the normal."""
    return report_from_values(str(table.kind), table.prefix(n), block_size)


def squarefree_parity_weight_moments() -> tuple[float, float]:
    """Limiting mean 3/pi^2 and variance 15/pi^2 - 9/pi^4 of the three-valued weight.

    The weight takes 2 and -1 with limiting probability 3/pi^2 each and 0 with
    probability 1 - 6/pi^2, giving mean (2 - 1)*3/pi^2 and second moment
    (4 + 1)*3/pi^2.
    """
    pi2 = math.pi**2
    mean = 3.0 / pi2
    variance = 15.0 / pi2 - 9.0 / pi2**2
    return mean, variance


def mertens_increment_variance() -> float:
    """Limiting variance 6/pi^2 of the Moebius values (density of squarefree numbers)."""
    return 6.0 / math.pi**2
