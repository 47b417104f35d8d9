"""Segmented sieves that materialize arithmetic-function values over a range.

All sieves stream over cache-sized segments, so ranges up to the configured
maximum (10^9 by default) run in bounded memory.  Segments are independent
and may be sieved concurrently; results are always delivered in ascending
order, so downstream reductions stay deterministic.

A slow trial-division oracle (`factor_signature`, `oracle_value`) computes
the same functions straight from the definitions and is the independent
cross-check used by the test suite.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .kinds import FunctionKind, parse_kind

DEFAULT_SEGMENT_SIZE = 1 << 20  # cache-resident marking buffers
DEFAULT_MAX_HI = 10**9


@dataclass(frozen=True)
class ValueTable:
    """Dense values of one arithmetic function on the inclusive range [lo, hi].

    Integer kinds use an int8 buffer; von Mangoldt uses float64.  A completed
    table is treated as immutable and is safe to share across threads.
    """

    kind: FunctionKind
    lo: int
    hi: int
    values: np.ndarray

    def __post_init__(self):
        if not 1 <= self.lo <= self.hi:
            raise ValueError(f"invalid range [{self.lo}, {self.hi}]")
        if len(self.values) != self.hi - self.lo + 1:
            raise ValueError("value buffer length does not match the range")

    def __len__(self) -> int:
        return self.hi - self.lo + 1

    def value_at(self, n: int):
        if not self.lo <= n <= self.hi:
            raise ValueError(f"{n} outside table range [{self.lo}, {self.hi}]")
        v = self.values[n - self.lo]
        return int(v) if self.kind.is_integer_valued else float(v)

    def prefix(self, n: int) -> np.ndarray:
        """Values f(1), ..., f(n); requires the table to cover [1, n]."""
        if self.lo != 1 or self.hi < n or n < 1:
            raise ValueError(f"table [{self.lo}, {self.hi}] does not cover [1, {n}]")
        return self.values[:n]


def prime_flags_upto(limit: int) -> np.ndarray:
    """Dense primality flags for 0..limit (plain Eratosthenes)."""
    flags = np.ones(limit + 1, dtype=bool)
    flags[: min(2, limit + 1)] = False
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return flags


def base_primes(limit: int) -> np.ndarray:
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    return np.flatnonzero(prime_flags_upto(limit)).astype(np.int64)


def _first_multiple(lo: int, step: int) -> int:
    return ((lo + step - 1) // step) * step


def _prime_flags_segment(lo: int, hi: int, primes: np.ndarray) -> np.ndarray:
    flags = np.ones(hi - lo + 1, dtype=bool)
    if lo == 1:
        flags[0] = False
    for p in primes:
        p = int(p)
        if p * p > hi:
            break
        start = max(p * p, _first_multiple(lo, p))
        if start <= hi:
            flags[start - lo :: p] = False
    return flags


def _moebius_segment(lo: int, hi: int, primes: np.ndarray) -> np.ndarray:
    mu = np.ones(hi - lo + 1, dtype=np.int8)
    acc = np.ones(hi - lo + 1, dtype=np.int64)
    for p in primes:
        p = int(p)
        if p > hi:
            break
        start = _first_multiple(lo, p)
        if start <= hi:
            sl = slice(start - lo, None, p)
            np.negative(mu[sl], out=mu[sl])
            acc[sl] *= p
        square = p * p
        start = _first_multiple(lo, square)
        if start <= hi:
            mu[start - lo :: square] = 0
    # A cofactor acc < n left after dividing out the base primes is a single
    # prime above the base set (two such primes would exceed hi).
    nvals = np.arange(lo, hi + 1, dtype=np.int64)
    flip = (mu != 0) & (acc != nvals)
    mu[flip] = -mu[flip]
    return mu


def _squarefree_segment(lo: int, hi: int, primes: np.ndarray) -> np.ndarray:
    free = np.ones(hi - lo + 1, dtype=np.int8)
    for p in primes:
        p = int(p)
        square = p * p
        if square > hi:
            break
        start = _first_multiple(lo, square)
        if start <= hi:
            free[start - lo :: square] = 0
    return free


def _divisor_counts_segment(lo: int, hi: int, primes: np.ndarray):
    """Distinct (omega) and with-multiplicity (big omega) prime counts."""
    size = hi - lo + 1
    omega = np.zeros(size, dtype=np.int8)
    bigomega = np.zeros(size, dtype=np.int8)
    acc = np.ones(size, dtype=np.int64)
    for p in primes:
        p = int(p)
        if p > hi:
            break
        start = _first_multiple(lo, p)
        if start <= hi:
            omega[start - lo :: p] += 1
        power = p
        while power <= hi:
            start = _first_multiple(lo, power)
            if start <= hi:
                sl = slice(start - lo, None, power)
                bigomega[sl] += 1
                acc[sl] *= p
            power *= p
    nvals = np.arange(lo, hi + 1, dtype=np.int64)
    leftover = acc != nvals
    omega[leftover] += 1
    bigomega[leftover] += 1
    return omega, bigomega


def _von_mangoldt_segment(lo: int, hi: int, primes: np.ndarray) -> np.ndarray:
    lam = np.zeros(hi - lo + 1, dtype=np.float64)
    flags = _prime_flags_segment(lo, hi, primes)
    nvals = np.arange(lo, hi + 1, dtype=np.float64)
    lam[flags] = np.log(nvals[flags])
    # Proper prime powers p^k (k >= 2) in range all have p <= sqrt(hi).
    for p in primes:
        p = int(p)
        power = p * p
        if power > hi:
            break
        logp = math.log(p)
        while power <= hi:
            if power >= lo:
                lam[power - lo] = logp
            power *= p
    return lam


def _segment_values(kind: FunctionKind, lo: int, hi: int, primes: np.ndarray) -> np.ndarray:
    tag = kind.tag
    if tag == "prime_indicator":
        return _prime_flags_segment(lo, hi, primes).astype(np.int8)
    if tag == "twin_prime_indicator":
        flags = _prime_flags_segment(lo, hi + 2, primes)
        return (flags[:-2] & flags[2:]).astype(np.int8)
    if tag == "squarefree_indicator":
        return _squarefree_segment(lo, hi, primes)
    if tag == "moebius":
        return _moebius_segment(lo, hi, primes)
    if tag == "squarefree_parity_weight":
        mu = _moebius_segment(lo, hi, primes)
        return np.where(mu == 1, 2, mu).astype(np.int8)
    if tag == "liouville":
        _, bigomega = _divisor_counts_segment(lo, hi, primes)
        return np.where(bigomega & 1, -1, 1).astype(np.int8)
    if tag == "omega_equals":
        omega, _ = _divisor_counts_segment(lo, hi, primes)
        return (omega == kind.k).astype(np.int8)
    if tag == "von_mangoldt":
        return _von_mangoldt_segment(lo, hi, primes)
    raise ValueError(f"unsupported kind: {kind}")


def iter_segments(
    kind: FunctionKind,
    lo: int,
    hi: int,
    *,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
    workers: int = 1,
    max_hi: int = DEFAULT_MAX_HI,
) -> Iterator[tuple[int, int, np.ndarray]]:
    """Yield (seg_lo, seg_hi, values) covering [lo, hi] in ascending order.

    With workers > 1 segments are sieved on a thread pool with a bounded
    prefetch window, but they are still yielded in range order, so consumers
    see the same stream regardless of scheduling.
    """
    if not 1 <= lo <= hi:
        raise ValueError(f"invalid range [{lo}, {hi}]")
    if hi > max_hi:
        raise ValueError(f"hi={hi} exceeds the configured maximum {max_hi}")
    if segment_size < 1:
        raise ValueError("segment_size must be positive")
    primes = base_primes(math.isqrt(hi + 2))  # +2 covers the twin lookahead
    bounds = [(a, min(a + segment_size - 1, hi)) for a in range(lo, hi + 1, segment_size)]
    if workers <= 1 or len(bounds) == 1:
        for a, b in bounds:
            yield a, b, _segment_values(kind, a, b, primes)
        return
    with ThreadPoolExecutor(max_workers=workers) as pool:
        pending = deque()
        it = iter(bounds)
        for a, b in itertools.islice(it, workers + 1):
            pending.append((a, b, pool.submit(_segment_values, kind, a, b, primes)))
        while pending:
            a, b, fut = pending.popleft()
            nxt = next(it, None)
            if nxt is not None:
                pending.append((nxt[0], nxt[1], pool.submit(_segment_values, kind, nxt[0], nxt[1], primes)))
            yield a, b, fut.result()


def sieve_table(
    kind: FunctionKind,
    lo: int,
    hi: int,
    *,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
    workers: int = 1,
    max_hi: int = DEFAULT_MAX_HI,
) -> ValueTable:
    """Materialize f(lo..hi) as a ValueTable."""
    parts = [
        values
        for _, _, values in iter_segments(
            kind, lo, hi, segment_size=segment_size, workers=workers, max_hi=max_hi
        )
    ]
    values = parts[0] if len(parts) == 1 else np.concatenate(parts)
    return ValueTable(kind, lo, hi, values)


# ---------------------------------------------------------------------------
# Trial-division oracle (slow; used for testing and for vendored data files)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FactorSignature:
    omega: int       # distinct prime divisors
    big_omega: int   # prime divisors with multiplicity
    squarefree: bool


def trial_factors(n: int) -> list[tuple[int, int]]:
    """Prime factorization [(p, e), ...] by trial division."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    out = []
    m = n
    d = 2
    while d * d <= m:
        if m % d == 0:
            e = 0
            while m % d == 0:
                m //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if m > 1:
        out.append((m, 1))
    return out


def factor_signature(n: int) -> FactorSignature:
    factors = trial_factors(n)
    omega = len(factors)
    big_omega = sum(e for _, e in factors)
    return FactorSignature(omega, big_omega, omega == big_omega)


def _is_prime_slow(n: int) -> bool:
    if n < 2:
        return False
    factors = trial_factors(n)
    return len(factors) == 1 and factors[0] == (n, 1)


def oracle_value(kind: FunctionKind, n: int):
    """Definition-level value of f(n), independent of the segmented sieves."""
    tag = kind.tag
    if tag == "prime_indicator":
        return 1 if _is_prime_slow(n) else 0
    if tag == "twin_prime_indicator":
        return 1 if _is_prime_slow(n) and _is_prime_slow(n + 2) else 0
    factors = trial_factors(n)
    omega = len(factors)
    big_omega = sum(e for _, e in factors)
    squarefree = omega == big_omega
    if tag == "squarefree_indicator":
        return 1 if squarefree else 0
    if tag == "moebius":
        if not squarefree:
            return 0
        return 1 if omega % 2 == 0 else -1
    if tag == "liouville":
        return -1 if big_omega % 2 else 1
    if tag == "squarefree_parity_weight":
        if not squarefree:
            return 0
        return 2 if omega % 2 == 0 else -1
    if tag == "omega_equals":
        return 1 if omega == kind.k else 0
    if tag == "von_mangoldt":
        return math.log(factors[0][0]) if omega == 1 else 0.0
    raise ValueError(f"unsupported kind: {kind}")


# ---------------------------------------------------------------------------
# On-disk CSV cache
# ---------------------------------------------------------------------------


def write_table_csv(table: ValueTable, path) -> None:
    """Cache format: header `kind,lo,hi`, then one value per line."""
    with open(path, "w", newline="\n") as fh:
        fh.write(f"{table.kind},{table.lo},{table.hi}\n")
        if table.kind.is_integer_valued:
            fh.writelines(f"{int(v)}\n" for v in table.values)
        else:
            fh.writelines(f"{float(v):.17g}\n" for v in table.values)


def read_table_csv(path) -> ValueTable:
    with open(path) as fh:
        header = fh.readline().strip().split(",")
        if len(header) != 3:
            raise ValueError(f"bad table header in {path}")
        kind = parse_kind(header[0])
        lo, hi = int(header[1]), int(header[2])
        if kind.is_integer_valued:
            wide = np.array([int(line) for line in fh], dtype=np.int64)
            alphabet = kind.alphabet()
            if not np.isin(wide, alphabet).all():
                raise ValueError(f"cached values outside the {kind} alphabet {alphabet}")
            values = wide.astype(np.int8)
        else:
            values = np.array([float(line) for line in fh], dtype=np.float64)
    return ValueTable(kind, lo, hi, values)
