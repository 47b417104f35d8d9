"""Empirical moments, densities and the distribution function of f on [1, n].

The underlying probability model is the uniform measure on {1, ..., n}:
probabilities are plain frequencies, the mean is S(n)/n and the distribution
function uses the strict inequality F(y) = P{f(k) < y}.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass

import numpy as np

from .kinds import FunctionKind
from .sieves import ValueTable
from .sums import accumulate

#: Histograms are kept only for alphabets up to this many distinct values.
HISTOGRAM_LIMIT = 64

#: Exact distribution tables for von Mangoldt stop being practical above this.
VON_MANGOLDT_CDF_LIMIT = 10**7


@dataclass(frozen=True)
class EmpiricalMoments:
    n: int
    mean: float
    variance: float
    min_value: float
    max_value: float
    histogram: dict | None


def moments(table: ValueTable, n: int) -> EmpiricalMoments:
    """Mean S(n)/n, variance (1/n)sum f^2 - mean^2, extremes and histogram."""
    vals = table.prefix(n)
    if table.kind.is_integer_valued:
        total = int(vals.sum(dtype=np.int64))
        mean = total / n
        if table.kind.is_indicator:
            # For 0/1 values, (1/n)sum f^2 - mean^2 is exactly mean(1 - mean).
            variance = mean * (1.0 - mean)
        else:
            total_sq = int((vals.astype(np.int64) ** 2).sum())
            variance = max(total_sq / n - mean * mean, 0.0)
    else:
        mean = float(vals.sum()) / n
        variance = float(np.mean((vals - mean) ** 2))
    uniq, counts = np.unique(vals, return_counts=True)
    histogram = None
    if len(uniq) <= HISTOGRAM_LIMIT:
        if table.kind.is_integer_valued:
            histogram = {int(u): int(c) for u, c in zip(uniq, counts)}
        else:
            histogram = {float(u): int(c) for u, c in zip(uniq, counts)}
    return EmpiricalMoments(
        n, mean, float(variance), float(vals.min()), float(vals.max()), histogram
    )


def density(kind: FunctionKind, n: int, **kwargs) -> float:
    """Fraction Q(n)/n of integers in [1, n] satisfying an indicator kind."""
    if not kind.is_indicator:
        raise ValueError(f"density requires an indicator kind, got {kind}")
    if n < 1:
        raise ValueError("n must be >= 1")
    return accumulate(kind, n, [n], **kwargs).sums[0] / n


@dataclass(frozen=True)
class EmpiricalCdf:
    """F(y) = fraction of k <= n with f(k) < y (strict inequality).

    cdf_below lists F at each support value plus a final entry for +inf,
    which always equals 1.
    """

    n: int
    support: tuple
    counts: tuple[int, ...]
    cdf_below: tuple[float, ...]

    def below(self, y: float) -> float:
        """F(y) for an arbitrary threshold y."""
        idx = bisect.bisect_left(self.support, y)
        return self.cdf_below[idx]


def empirical_cdf(table: ValueTable, n: int) -> EmpiricalCdf:
    if table.kind.tag == "von_mangoldt" and n > VON_MANGOLDT_CDF_LIMIT:
        raise ValueError(
            f"exact distribution tables for von_mangoldt are unsupported beyond n={VON_MANGOLDT_CDF_LIMIT}"
        )
    vals = table.prefix(n)
    uniq, counts = np.unique(vals, return_counts=True)
    cum = np.concatenate(([0], np.cumsum(counts)))
    if table.kind.is_integer_valued:
        support = tuple(int(u) for u in uniq)
    else:
        support = tuple(float(u) for u in uniq)
    return EmpiricalCdf(
        n,
        support,
        tuple(int(c) for c in counts),
        tuple(float(c) / n for c in cum),
    )
