"""Exact prefix sums S(n) = sum_{i<=n} f(i) at checkpoints, streamed over segments."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .kinds import MOEBIUS, FunctionKind
from .sieves import DEFAULT_MAX_HI, DEFAULT_SEGMENT_SIZE, iter_segments

#: Dense prefix arrays are only materialized below this size.
PREFIX_ARRAY_LIMIT = 10**7


@dataclass(frozen=True)
class SummationSeries:
    """S(c) at each checkpoint c.

    Sums are exact Python integers for integer-valued kinds and compensated
    float64 sums for von Mangoldt.
    """

    kind: FunctionKind
    checkpoints: tuple[int, ...]
    sums: tuple

    def __post_init__(self):
        if len(self.checkpoints) != len(self.sums):
            raise ValueError("checkpoints and sums differ in length")

    def as_map(self) -> dict:
        return dict(zip(self.checkpoints, self.sums))


def _validate_checkpoints(checkpoints, n_max: int) -> list[int]:
    cps = [int(c) for c in checkpoints]
    if not cps:
        raise ValueError("at least one checkpoint is required")
    if cps[0] < 1:
        raise ValueError("checkpoints must be >= 1")
    if any(b <= a for a, b in zip(cps, cps[1:])):
        raise ValueError("checkpoints must be strictly increasing")
    if cps[-1] > n_max:
        raise ValueError(f"checkpoint {cps[-1]} exceeds n_max={n_max}")
    return cps


def accumulate(
    kind: FunctionKind,
    n_max: int,
    checkpoints,
    *,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
    workers: int = 1,
    max_hi: int = DEFAULT_MAX_HI,
) -> SummationSeries:
    """Exact S(c) for every checkpoint c, in one streaming pass over [1, n_max].

    Integer kinds accumulate in arbitrary-precision integers (int64 inside a
    segment never overflows: |f| <= 2 and segments hold < 2^21 values).
    von Mangoldt sums use pairwise summation inside segments and Kahan
    compensation across them.
    """
    cps = _validate_checkpoints(checkpoints, n_max)
    segments = iter_segments(
        kind, 1, n_max, segment_size=segment_size, workers=workers, max_hi=max_hi
    )
    sums: list = []
    idx = 0
    if kind.is_integer_valued:
        running = 0
        for lo, hi, vals in segments:
            if idx < len(cps) and cps[idx] <= hi:
                prefix = np.cumsum(vals, dtype=np.int64)
                while idx < len(cps) and cps[idx] <= hi:
                    sums.append(running + int(prefix[cps[idx] - lo]))
                    idx += 1
                running += int(prefix[-1])
            else:
                running += int(vals.sum(dtype=np.int64))
        return SummationSeries(kind, tuple(cps), tuple(sums))

    total, comp = 0.0, 0.0
    for lo, hi, vals in segments:
        if idx < len(cps) and cps[idx] <= hi:
            prefix = np.cumsum(vals)
            while idx < len(cps) and cps[idx] <= hi:
                sums.append(total + float(prefix[cps[idx] - lo]))
                idx += 1
            seg_total = float(prefix[-1])
        else:
            seg_total = float(vals.sum())
        y = seg_total - comp
        t = total + y
        comp = (t - total) - y
        total = t
    return SummationSeries(kind, tuple(cps), tuple(sums))


def mertens(n: int, **kwargs) -> int:
    """M(n) = sum_{k<=n} mu(k)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return accumulate(MOEBIUS, n, [n], **kwargs).sums[0]


def prefix_sums(
    kind: FunctionKind,
    n_max: int,
    *,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
    workers: int = 1,
) -> np.ndarray:
    """Dense S(1..n_max); memory-guarded to n_max <= 10^7 (use accumulate above that)."""
    if n_max > PREFIX_ARRAY_LIMIT:
        raise ValueError(
            f"dense prefix arrays are limited to n_max <= {PREFIX_ARRAY_LIMIT}; use accumulate"
        )
    chunks = []
    if kind.is_integer_valued:
        running = 0
        for _, _, vals in iter_segments(kind, 1, n_max, segment_size=segment_size, workers=workers):
            prefix = np.cumsum(vals, dtype=np.int64)
            prefix += running
            running = int(prefix[-1])
            chunks.append(prefix)
    else:
        running = 0.0
        for _, _, vals in iter_segments(kind, 1, n_max, segment_size=segment_size, workers=workers):
            prefix = np.cumsum(vals)
            prefix += running
            running = float(prefix[-1])
            chunks.append(prefix)
    return chunks[0] if len(chunks) == 1 else np.concatenate(chunks)


def write_series_csv(series: SummationSeries, path) -> None:
    """CSV emission: header `n,S`, one row per checkpoint."""
    integer = series.kind.is_integer_valued
    with open(path, "w", newline="\n") as fh:
        fh.write("n,S\n")
        for n, s in zip(series.checkpoints, series.sums):
            fh.write(f"{n},{int(s)}\n" if integer else f"{n},{float(s):.17g}\n")
