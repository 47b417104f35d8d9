"""Deviation-from-trend checks: square-root bounds, exponent scans, variance growth.

The running mean of a summation function is modeled as the linear trend n*C
with C the limiting value of S(n)/n; deviation checks compare |S(n) - nC|
against slowly growing multiples of sqrt(n) or against n^(1/2+xi).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .kinds import MOEBIUS, FunctionKind
from .sieves import DEFAULT_SEGMENT_SIZE, iter_segments
from .sums import SummationSeries, accumulate


@dataclass(frozen=True)
class PsiSpec:
    """Slowly growing comparison function: a constant, log, or log log."""

    form: str
    c: float | None = None

    def __post_init__(self):
        if self.form not in ("const", "log", "loglog"):
            raise ValueError(f"unknown psi form {self.form!r}")
        if self.form == "const" and (self.c is None or self.c <= 0):
            raise ValueError("const psi requires a positive constant")
        if self.form != "const" and self.c is not None:
            raise ValueError(f"{self.form} takes no constant")

    def __str__(self) -> str:
        if self.form == "const":
            return f"const:{self.c:g}"
        return self.form


def parse_psi(text: str) -> PsiSpec:
    if text.startswith("const:"):
        return PsiSpec("const", float(text.partition(":")[2]))
    return PsiSpec(text)


def psi(spec: PsiSpec | str, n: int) -> float:
    """Evaluate the comparison function; arguments are clamped so logs stay positive."""
    if isinstance(spec, str):
        spec = parse_psi(spec)
    if n < 1:
        raise ValueError("n must be >= 1")
    if spec.form == "const":
        return float(spec.c)
    if spec.form == "log":
        return math.log(max(n, 3))
    return math.log(math.log(max(n, 16)))


@dataclass(frozen=True)
class DeviationReport:
    label: str
    n_lo: int
    n_hi: int
    trend_constant: float
    psi: str | None
    xi: float | None
    worst_ratio: float
    argmax_n: int
    passed: bool
    skipped: int = 0


@dataclass(frozen=True)
class VarianceBound:
    generic: float    # n/4, the worst case over all densities
    empirical: float  # n p(1-p) with the sieved density
    density: float


def independent_variance_bound(kind: FunctionKind, n: int, **kwargs) -> VarianceBound:
    """Variance bounds n/4 and n p(1-p) for the sum of n indicator values."""
    if not kind.is_indicator:
        raise ValueError(f"variance bound requires an indicator kind, got {kind}")
    if n < 1:
        raise ValueError("n must be >= 1")
    q = accumulate(kind, n, [n], **kwargs).sums[0]
    p = q / n
    return VarianceBound(n / 4.0, n * p * (1.0 - p), p)


def counting_deviation_check(
    series: SummationSeries, c: float, psi_spec: PsiSpec | str
) -> DeviationReport:
    """worst_ratio = max_n |S(n) - nC| / (0.5 sqrt(n) Psi(n)) over the checkpoints."""
    if not series.kind.is_indicator:
        raise ValueError("counting deviation check requires an indicator kind")
    if not 0.0 <= c <= 1.0:
        raise ValueError("trend constant must lie in [0, 1]")
    if isinstance(psi_spec, str):
        psi_spec = parse_psi(psi_spec)
    worst, argmax = 0.0, series.checkpoints[0]
    for n, s in zip(series.checkpoints, series.sums):
        ratio = abs(s - n * c) / (0.5 * math.sqrt(n) * psi(psi_spec, n))
        if ratio > worst:
            worst, argmax = ratio, n
    return DeviationReport(
        str(series.kind),
        series.checkpoints[0],
        series.checkpoints[-1],
        c,
        str(psi_spec),
        None,
        worst,
        argmax,
        worst <= 1.0,
    )


def exponent_check(series: SummationSeries, c: float, xi: float) -> DeviationReport:
    """worst_ratio = max_n log|S(n) - nC| / ((1/2 + xi) log n) over the checkpoints.

    Checkpoints with |S(n) - nC| < 1 (or n < 2) are skipped to guard the
    logarithm; the skip count is reported.
    """
    if xi < 0:
        raise ValueError("xi must be >= 0")
    worst, argmax, skipped = None, 0, 0
    for n, s in zip(series.checkpoints, series.sums):
        dev = abs(s - n * c)
        if n < 2 or dev < 1.0:
            skipped += 1
            continue
        ratio = math.log(dev) / ((0.5 + xi) * math.log(n))
        if worst is None or ratio > worst:
            worst, argmax = ratio, n
    if worst is None:
        raise ValueError("all checkpoints skipped (every deviation below 1)")
    return DeviationReport(
        str(series.kind),
        series.checkpoints[0],
        series.checkpoints[-1],
        c,
        None,
        xi,
        worst,
        argmax,
        worst <= 1.0,
        skipped,
    )


def mertens_riemann_check(
    n_max: int,
    xi: float,
    *,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
    workers: int = 1,
) -> DeviationReport:
    """Exhaustive |M(n)| <= n^(1/2+xi) scan over every 2 <= n <= n_max.

    The scan is dense on purpose: sign changes of M make checkpoint grids
    unreliable here.  Streams over sieve segments, so memory stays bounded.
    """
    if xi < 0:
        raise ValueError("xi must be >= 0")
    if n_max < 2:
        raise ValueError("n_max must be >= 2")
    exponent = 0.5 + xi
    running = 0
    worst, argmax, skipped = None, 0, 0
    for lo, hi, vals in iter_segments(MOEBIUS, 1, n_max, segment_size=segment_size, workers=workers):
        m = np.cumsum(vals, dtype=np.int64) + running
        running = int(m[-1])
        nvals = np.arange(lo, hi + 1, dtype=np.float64)
        mask = (np.abs(m) >= 1) & (nvals >= 2)
        skipped += int(len(m) - np.count_nonzero(mask))
        if mask.any():
            ratios = np.log(np.abs(m[mask]).astype(np.float64)) / (exponent * np.log(nvals[mask]))
            i = int(np.argmax(ratios))
            if worst is None or ratios[i] > worst:
                worst = float(ratios[i])
                argmax = int(nvals[mask][i])
    if worst is None:
        raise ValueError("all values skipped (every |M(n)| below 1)")
    return DeviationReport(
        str(MOEBIUS), 2, n_max, 0.0, None, xi, worst, argmax, worst <= 1.0, skipped
    )


@dataclass(frozen=True)
class VarianceGrowth:
    n_values: tuple[int, ...]
    h_hat: tuple[float, ...]  # estimated D(S_n)/n
    slope: float              # log-log slope of h_hat over the trajectory


def growth_from_block_sums(
    block_sums: np.ndarray, block_size: int, grid_points: int = 25
) -> VarianceGrowth:
    """h_hat(n) from the sample variance of the first n/B disjoint block sums."""
    t = np.asarray(block_sums, dtype=np.float64)
    count = len(t)
    if count < 30:
        raise ValueError(f"too few blocks ({count}); need >= 30")
    ms = np.unique(np.geomspace(30, count, grid_points).astype(int))
    h = np.array([t[:m].var(ddof=1) / block_size for m in ms])
    ns = ms * block_size
    if np.all(h > 0):
        slope = float(np.polyfit(np.log(ns), np.log(h), 1)[0])
    else:
        slope = 0.0
    return VarianceGrowth(
        tuple(int(n) for n in ns), tuple(float(v) for v in h), slope
    )


def variance_growth(
    kind: FunctionKind,
    n_max: int,
    block_size: int,
    *,
    grid_points: int = 25,
    **kwargs,
) -> VarianceGrowth:
    """Trajectory of h_hat(n) = D(S_n)/n estimated from disjoint block sums.

    Near-linear variance growth shows up as a log-log slope near zero.
    """
    if block_size < 100:
        raise ValueError("block size must be >= 100")
    count = n_max // block_size
    if count < 30:
        raise ValueError(f"too few blocks ({count}); need >= 30")
    cps = [block_size * (i + 1) for i in range(count)]
    series = accumulate(kind, cps[-1], cps, **kwargs)
    sums = np.array(series.sums, dtype=np.float64)
    block = np.diff(np.concatenate(([0.0], sums)))
    return growth_from_block_sums(block, block_size, grid_points)
