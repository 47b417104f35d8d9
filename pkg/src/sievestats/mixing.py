"""Autocovariance, independence gaps, strong-mixing estimates and stationarity verdicts.

Mixing coefficients are estimated over single-coordinate cylinder events
(value subsets of the alphabet) with an exhaustive subset scan, and event
probabilities are frequencies over positions, so the estimate is a certified
lower bound on the full sigma-algebra supremum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .kinds import FunctionKind
from .sieves import ValueTable, sieve_table

DEFAULT_REPORT_LAGS = tuple(range(1, 21)) + (50, 100)

EVENT_FAMILY = "single-coordinate value subsets"


@dataclass(frozen=True)
class CovarianceSequence:
    n: int
    lags: tuple[int, ...]
    r_hat: tuple[float, ...]
    mean_used: float


def _validate_lags(lags, n: int, minimum: int = 0) -> list[int]:
    out = [int(h) for h in lags]
    if not out:
        raise ValueError("at least one lag is required")
    if any(h < minimum for h in out):
        raise ValueError(f"lags must be >= {minimum}")
    if any(b <= a for a, b in zip(out, out[1:])):
        raise ValueError("lags must be strictly increasing")
    if out[-1] >= n / 2:
        raise ValueError(f"max lag {out[-1]} must be below n/2 = {n / 2}")
    return out


def _autocov_int(x: np.ndarray, lags) -> tuple[list[float], float]:
    """Centered covariances from exact integer cross-moments."""
    n = len(x)
    total = int(x.sum())
    mean = total / n
    prefix = np.cumsum(x)
    out = []
    for h in lags:
        if h == 0:
            sq = int((x * x).sum())
            out.append(max(sq / n - mean * mean, 0.0))
            continue
        cross = int(np.dot(x[: n - h], x[h:]))
        s_head = int(prefix[n - h - 1])
        s_tail = total - int(prefix[h - 1])
        out.append((cross - mean * (s_head + s_tail)) / (n - h) + mean * mean)
    return out, mean


def _autocov_float(x: np.ndarray, lags) -> tuple[list[float], float]:
    n = len(x)
    mean = float(x.mean())
    xc = x - mean
    out = []
    for h in lags:
        if h == 0:
            out.append(float(np.dot(xc, xc)) / n)
        else:
            out.append(float(np.dot(xc[: n - h], xc[h:])) / (n - h))
    return out, mean


def _autocov_values(values: np.ndarray, lags) -> tuple[list[float], float]:
    if np.issubdtype(values.dtype, np.integer):
        return _autocov_int(values.astype(np.int64), lags)
    return _autocov_float(values.astype(np.float64), lags)


def autocovariance(table: ValueTable, n: int, lags) -> CovarianceSequence:
    """r_hat(h) = (1/(n-h)) sum_{k<=n-h} (f(k)-m)(f(k+h)-m), m the mean on [1, n]."""
    lags = _validate_lags(lags, n, minimum=0)
    vals = table.prefix(n)
    r_hat, mean = _autocov_values(vals, lags)
    return CovarianceSequence(n, tuple(lags), tuple(r_hat), mean)


def independence_gap(table: ValueTable, n: int, lag: int, b1, b2) -> float:
    """|P(f(k) in B1, f(k+lag) in B2) - P(f(k) in B1) P(f(k+lag) in B2)|.

    Frequencies run over k in [1, n-lag].
    """
    if lag < 1:
        raise ValueError("lag must be >= 1")
    if n - lag < 1:
        raise ValueError("empty range after the lag shift")
    alphabet = table.kind.alphabet()
    if alphabet is None:
        raise ValueError("independence gaps require a finite-alphabet kind")
    b1, b2 = frozenset(b1), frozenset(b2)
    if not b1 <= set(alphabet) or not b2 <= set(alphabet):
        raise ValueError(f"subsets must lie within the alphabet {alphabet}")
    vals = table.prefix(n)
    head = vals[: n - lag]
    tail = vals[lag:n]
    m = n - lag
    in1 = np.isin(head, sorted(b1)) if b1 else np.zeros(m, dtype=bool)
    in2 = np.isin(tail, sorted(b2)) if b2 else np.zeros(m, dtype=bool)
    joint = np.count_nonzero(in1 & in2)
    c1 = np.count_nonzero(in1)
    c2 = np.count_nonzero(in2)
    return abs(joint / m - (c1 / m) * (c2 / m))


@dataclass(frozen=True)
class MixingEstimate:
    n: int
    lags: tuple[int, ...]
    alpha_hat: tuple[float, ...]
    event_family: str = EVENT_FAMILY


def _subset_index_lists(size: int) -> list[list[int]]:
    # All nonempty proper subsets of {0..size-1} as index lists.
    return [
        [i for i in range(size) if mask >> i & 1]
        for mask in range(1, (1 << size) - 1)
    ]


def alpha_hat_values(values: np.ndarray, alphabet, lags) -> MixingEstimate:
    """Strong-mixing estimate for a raw value sequence over a finite alphabet."""
    n = len(values)
    lags = _validate_lags(lags, n, minimum=1)
    alphabet = np.asarray(sorted(alphabet))
    size = len(alphabet)
    if size > 8:
        raise ValueError("exhaustive subset scan limited to alphabets of <= 8 values")
    idx = np.searchsorted(alphabet, values)
    subsets = _subset_index_lists(size)
    out = []
    for h in lags:
        m = n - h
        pair = idx[:m].astype(np.int64) * size + idx[h:n]
        joint = np.bincount(pair, minlength=size * size).reshape(size, size)
        row = joint.sum(axis=1)
        col = joint.sum(axis=0)
        best = 0.0
        for sel1 in subsets:
            c1 = int(row[sel1].sum())
            block = joint[sel1, :].sum(axis=0)
            for sel2 in subsets:
                cj = int(block[sel2].sum())
                c2 = int(col[sel2].sum())
                # Same arithmetic as independence_gap, so max dominates exactly.
                gap = abs(cj / m - (c1 / m) * (c2 / m))
                if gap > best:
                    best = gap
        out.append(best)
    return MixingEstimate(n, tuple(lags), tuple(out))


def alpha_hat(table: ValueTable, n: int, lags) -> MixingEstimate:
    """Max independence gap over all nonempty proper subset pairs, per lag."""
    alphabet = table.kind.alphabet()
    if alphabet is None:
        raise ValueError("mixing estimates require a finite-alphabet kind")
    return alpha_hat_values(table.prefix(n), alphabet, lags)


@dataclass(frozen=True)
class SummabilityTrajectory:
    lags: tuple[int, ...]
    partial_sums: tuple[float, ...]
    tail_slope: float  # fitted per-lag growth of the partial sums on the last half


def alpha_summability(estimate: MixingEstimate) -> SummabilityTrajectory:
    """Partial sums of alpha_hat over lags 1..L plus a boundedness diagnostic."""
    lags = estimate.lags
    if list(lags) != list(range(1, len(lags) + 1)):
        raise ValueError("summability requires contiguous lags 1..L")
    partial = np.cumsum(estimate.alpha_hat)
    half = len(partial) // 2
    tail_x = np.asarray(lags[half:], dtype=np.float64)
    tail_y = partial[half:]
    slope = float(np.polyfit(tail_x, tail_y, 1)[0]) if len(tail_x) >= 2 else 0.0
    return SummabilityTrajectory(lags, tuple(float(v) for v in partial), slope)


@dataclass(frozen=True)
class StationarityReport:
    kind: FunctionKind
    n: int
    checkpoints: tuple[int, ...]
    mean_trajectory: tuple[float, ...]
    mean_limit_estimate: float
    tail_oscillation: float
    value_bound: float
    bounded: bool
    covariance_lags: tuple[int, ...]
    covariance_global: tuple[float, ...]
    covariance_stability: float
    mean_verdict: bool
    covariance_verdict: bool
    variance_verdict: bool
    thresholds: dict = field(default_factory=dict)


def stationarity_report(
    kind: FunctionKind,
    n: int,
    checkpoints,
    *,
    lags=None,
    table: ValueTable | None = None,
    window_count: int = 4,
    mean_tolerance: float = 0.01,
    covariance_factor: float = 3.0,
    covariance_min_lag: int = 10,
    segment_size=None,
    workers: int = 1,
) -> StationarityReport:
    """Constant-mean, covariance-decay and bounded-variance verdicts for one kind.

    The thresholds are engineering configuration, recorded in the report:
    the mean passes when the trajectory S(n)/n oscillates by at most
    mean_tolerance*(1+|C|) over the last half of the checkpoints, and the
    covariance passes when |r_hat(h)| <= covariance_factor*r_hat(0)/sqrt(n)
    for every tested lag h >= covariance_min_lag.
    """
    cps = [int(c) for c in checkpoints]
    if not cps or any(b <= a for a, b in zip(cps, cps[1:])):
        raise ValueError("checkpoints must be nonempty and strictly increasing")
    if cps[0] < 1 or cps[-1] > n:
        raise ValueError("checkpoints must lie in [1, n]")
    if table is None:
        kwargs = {} if segment_size is None else {"segment_size": segment_size}
        table = sieve_table(kind, 1, n, workers=workers, **kwargs)
    elif table.kind != kind:
        raise ValueError("table kind does not match the requested kind")
    vals = table.prefix(n)

    if kind.is_integer_valued:
        prefix = np.cumsum(vals, dtype=np.int64)
    else:
        prefix = np.cumsum(vals)
    traj = [float(prefix[c - 1]) / c for c in cps]
    c_limit = traj[-1]
    tail = traj[len(traj) // 2 :]
    tail_osc = max(abs(v - c_limit) for v in tail)

    if lags is None:
        lags = [h for h in DEFAULT_REPORT_LAGS if h < n / 2]
    lags = _validate_lags(lags, n, minimum=1)
    r_global, _ = _autocov_values(vals, lags)
    r0 = _autocov_values(vals, [0])[0][0]

    # Position stability: covariances recomputed on disjoint windows.
    window = n // window_count
    stability = 0.0
    if window >= 2:
        win_lags = [h for h in lags if h < window / 2]
        for w in range(window_count):
            seg = vals[w * window : (w + 1) * window]
            r_win, _ = _autocov_values(seg, win_lags)
            for rw, rg in zip(r_win, r_global):
                stability = max(stability, abs(rw - rg))

    bound = kind.value_bound()
    bounded = bound is not None
    observed_bound = float(np.max(np.abs(vals))) if len(vals) else 0.0
    value_bound = float(bound) if bounded else observed_bound

    mean_threshold = mean_tolerance * (1.0 + abs(c_limit))
    cov_threshold = covariance_factor * r0 / math.sqrt(n)
    tested = [
        (h, r) for h, r in zip(lags, r_global) if h >= covariance_min_lag
    ]
    covariance_verdict = all(abs(r) <= cov_threshold for _, r in tested)

    return StationarityReport(
        kind=kind,
        n=n,
        checkpoints=tuple(cps),
        mean_trajectory=tuple(traj),
        mean_limit_estimate=c_limit,
        tail_oscillation=tail_osc,
        value_bound=value_bound,
        bounded=bounded,
        covariance_lags=tuple(lags),
        covariance_global=tuple(r_global),
        covariance_stability=stability,
        mean_verdict=tail_osc <= mean_threshold,
        covariance_verdict=covariance_verdict,
        variance_verdict=bounded,
        thresholds={
            "mean_tolerance": mean_threshold,
            "covariance_bound": cov_threshold,
            "covariance_min_lag": covariance_min_lag,
        },
    )
