"""Command-line orchestration: sieve tables, sums, statistics and checks.

Subcommands: table, sum, stats, dependence, normality, ergodic, deviation,
riemann-check, oeis-check.  Flags use long names only.  Integers are printed
exactly; reals with 17 significant digits.  Identical configurations
(including seeds) produce byte-identical output files.  The exit status is 0
when every requested check passes and nonzero otherwise.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import deviation as dev
from . import empirical, mixing, normality, oeis, spectral
from .kinds import FunctionKind, parse_kind
from .sieves import read_table_csv, sieve_table, write_table_csv
from .sums import PREFIX_ARRAY_LIMIT, accumulate


@dataclass(frozen=True)
class RunConfig:
    """Validated bundle of the numeric options shared by the subcommands."""

    kind: FunctionKind | None = None
    n_max: int | None = None
    checkpoints: tuple[int, ...] = ()
    block_size: int | None = None
    lags: tuple[int, ...] = ()
    seed: int = 0
    output: str = "-"
    cache_dir: str | None = None

    def __post_init__(self):
        for name in ("n_max", "block_size"):
            value = getattr(self, name)
            if value is not None and value < 1:
                raise ValueError(f"{name} must be positive")
        if any(c < 1 for c in self.checkpoints):
            raise ValueError("checkpoints must be positive")
        if any(h < 1 for h in self.lags):
            raise ValueError("lags must be positive")
        if self.n_max is not None and self.checkpoints and max(self.checkpoints) > self.n_max:
            raise ValueError("checkpoints must not exceed n_max")


def _fmt(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return f"{float(value):.17g}"


def _emit(text: str, output: str) -> None:
    if output == "-":
        sys.stdout.write(text)
    else:
        Path(output).write_text(text, newline="\n")


def _csv_text(header: str, rows) -> str:
    lines = [header]
    lines.extend(",".join(_fmt(cell) for cell in row) for row in rows)
    return "\n".join(lines) + "\n"


def _jsonable(obj):
    if isinstance(obj, FunctionKind):
        return str(obj)
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: _jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, complex):
        return {"imag": obj.imag, "real": obj.real}
    return obj


def _json_text(obj) -> str:
    return json.dumps(_jsonable(obj), sort_keys=True, indent=2) + "\n"


def _parse_int_list(text: str) -> tuple[int, ...]:
    """Comma-separated integers, with 'a..b' expanding to the inclusive range."""
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            a, _, b = part.partition("..")
            out.extend(range(int(a), int(b) + 1))
        elif part:
            out.append(int(part))
    return tuple(out)


def _parse_atoms(text: str) -> tuple[tuple[float, float], ...]:
    """Atoms as 'freq:variance' pairs, comma separated, e.g. '0:2,1.0471:1'."""
    atoms = []
    for part in text.split(","):
        lam, _, sig2 = part.strip().partition(":")
        atoms.append((float(lam), float(sig2)))
    return tuple(atoms)


def _geometric_grid(n_max: int, points: int = 50) -> list[int]:
    grid = np.unique(np.geomspace(1, n_max, points).astype(np.int64))
    return [int(v) for v in grid]


# ---------------------------------------------------------------------------
# Subcommand handlers
# ---------------------------------------------------------------------------


def _cmd_table(args) -> int:
    cfg = RunConfig(kind=parse_kind(args.kind), output=args.output, cache_dir=args.cache_dir)
    if cfg.cache_dir is not None:
        cache = Path(cfg.cache_dir) / f"{cfg.kind}_{args.lo}_{args.hi}.csv"
        if cache.exists():
            table = read_table_csv(cache)
        else:
            table = sieve_table(cfg.kind, args.lo, args.hi, workers=args.workers)
            cache.parent.mkdir(parents=True, exist_ok=True)
            write_table_csv(table, cache)
    else:
        table = sieve_table(cfg.kind, args.lo, args.hi, workers=args.workers)
    lines = [f"{table.kind},{table.lo},{table.hi}"]
    if table.kind.is_integer_valued:
        lines.extend(str(int(v)) for v in table.values)
    else:
        lines.extend(f"{float(v):.17g}" for v in table.values)
    _emit("\n".join(lines) + "\n", cfg.output)
    return 0


def _cmd_sum(args) -> int:
    cfg = RunConfig(
        kind=parse_kind(args.kind),
        n_max=args.n_max,
        checkpoints=_parse_int_list(args.checkpoints),
        output=args.output,
    )
    series = accumulate(cfg.kind, cfg.n_max, cfg.checkpoints, workers=args.workers)
    rows = list(zip(series.checkpoints, series.sums))
    _emit(_csv_text("n,S", rows), cfg.output)
    return 0


def _cmd_stats(args) -> int:
    cfg = RunConfig(kind=parse_kind(args.kind), n_max=args.n, output=args.output)
    table = sieve_table(cfg.kind, 1, cfg.n_max, workers=args.workers)
    mom = empirical.moments(table, cfg.n_max)
    cdf = empirical.empirical_cdf(table, cfg.n_max)
    _emit(_json_text({"cdf": cdf, "moments": mom}), cfg.output)
    return 0


def _cmd_dependence(args) -> int:
    cfg = RunConfig(
        kind=parse_kind(args.kind),
        n_max=args.n,
        lags=_parse_int_list(args.lags),
        output=args.output,
    )
    table = sieve_table(cfg.kind, 1, cfg.n_max, workers=args.workers)
    cov = mixing.autocovariance(table, cfg.n_max, cfg.lags)
    rows: list[tuple] = []
    if cfg.kind.alphabet() is not None:
        est = mixing.alpha_hat(table, cfg.n_max, cfg.lags)
        rows = list(zip(cov.lags, cov.r_hat, est.alpha_hat))
    else:
        rows = [(h, r, float("nan")) for h, r in zip(cov.lags, cov.r_hat)]
    _emit(_csv_text("lag,r_hat,alpha_hat", rows), cfg.output)
    if args.report is not None:
        checkpoints = (
            _parse_int_list(args.checkpoints)
            if args.checkpoints
            else _geometric_grid(cfg.n_max)
        )
        report = mixing.stationarity_report(
            cfg.kind, cfg.n_max, checkpoints, table=table
        )
        _emit(_json_text(report), args.report)
    return 0


def _cmd_normality(args) -> int:
    cfg = RunConfig(
        kind=parse_kind(args.kind), n_max=args.n, block_size=args.block_size,
        output=args.output,
    )
    table = sieve_table(cfg.kind, 1, cfg.n_max, workers=args.workers)
    blocks = normality.block_standardize(table, cfg.n_max, cfg.block_size)
    report = normality.report_from_blocks(str(cfg.kind), cfg.n_max, blocks)
    _emit(_json_text(report), cfg.output)
    if args.blocks_csv is not None:
        rows = zip(
            range(1, blocks.block_count + 1), blocks.block_sums, blocks.standardized
        )
        _emit(_csv_text("block,T,z", rows), args.blocks_csv)
    return 0


def _cmd_ergodic(args) -> int:
    spec = spectral.SpectralSpec(_parse_atoms(args.atoms), mean=args.mean)
    grid = _geometric_grid(args.n)
    rows = [(n, spectral.covariance_average(spec, n)) for n in grid]
    _emit(_csv_text("n,covariance_average", rows), args.output)
    if args.mse_output is not None:
        n_values = _parse_int_list(args.n_list) if args.n_list else grid
        study = spectral.mse_study(spec, n_values, args.replicates, args.seed)
        _emit(_csv_text("n,mse", zip(study.n_values, study.mse)), args.mse_output)
    if args.autocov_output is not None:
        realization = spectral.sample_spectral(spec, args.n, args.seed)
        lags = _parse_int_list(args.lags)
        measured = spectral.empirical_autocovariance(
            realization.x - spec.mean, lags, center=False
        )
        rows = []
        for h, value in zip(lags, measured):
            theory = spectral.theoretical_covariance(spec, h)
            value = complex(value)
            rows.append((h, theory.real, theory.imag, value.real, value.imag))
        _emit(
            _csv_text(
                "h,r_theoretical_re,r_theoretical_im,r_empirical_re,r_empirical_im",
                rows,
            ),
            args.autocov_output,
        )
    return 0


def _cmd_deviation(args) -> int:
    cfg = RunConfig(
        kind=parse_kind(args.kind),
        n_max=args.n_max,
        checkpoints=_parse_int_list(args.checkpoints) if args.checkpoints else (),
        block_size=args.block_size,
        output=args.output,
    )
    if args.mode == "variance-growth":
        growth = dev.variance_growth(cfg.kind, cfg.n_max, cfg.block_size or 1000)
        _emit(_json_text(growth), cfg.output)
        return 0
    checkpoints = cfg.checkpoints or tuple(_geometric_grid(cfg.n_max))
    series = accumulate(cfg.kind, cfg.n_max, checkpoints, workers=args.workers)
    if args.mode == "counting":
        report = dev.counting_deviation_check(series, args.trend_c, args.psi)
    else:
        report = dev.exponent_check(series, args.trend_c, args.xi)
    _emit(_json_text(report), cfg.output)
    if args.trajectory is not None:
        rows = []
        for n, s in zip(series.checkpoints, series.sums):
            deviation_n = abs(s - n * args.trend_c)
            if args.mode == "counting":
                ratio = deviation_n / (0.5 * math.sqrt(n) * dev.psi(args.psi, n))
            else:
                ratio = (
                    math.log(deviation_n) / ((0.5 + args.xi) * math.log(n))
                    if n >= 2 and deviation_n >= 1
                    else float("nan")
                )
            rows.append((n, deviation_n, ratio))
        _emit(_csv_text("n,deviation,ratio", rows), args.trajectory)
    return 0 if report.passed else 1


def _cmd_riemann_check(args) -> int:
    report = dev.mertens_riemann_check(args.n_max, args.xi, workers=args.workers)
    _emit(_json_text(report), args.output)
    return 0 if report.passed else 1


def _cmd_oeis_check(args) -> int:
    bfile = oeis.read_bfile(args.bfile)
    kind = parse_kind(args.kind)
    indices = [i for i, _ in bfile.entries if i >= 1]
    if args.n_max is not None:
        indices = [i for i in indices if i <= args.n_max]
    if not indices:
        raise ValueError("no usable b-file indices at or below n_max")
    if indices[-1] > PREFIX_ARRAY_LIMIT:
        raise ValueError(f"b-file indices exceed the supported scan limit {PREFIX_ARRAY_LIMIT}")
    series = accumulate(kind, indices[-1], indices, workers=args.workers)
    mismatches = oeis.oeis_check(series, bfile)
    result = {
        "kind": str(kind),
        "mismatches": [
            {"expected": e, "got": g, "n": n} for n, g, e in mismatches
        ],
        "overlap": len(indices),
        "sequence_id": bfile.sequence_id,
    }
    _emit(_json_text(result), args.output)
    return 0 if not mismatches else 1


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def _add_common(parser, *, workers=True, output=True):
    if workers:
        parser.add_argument("--workers", type=int, default=1)
    if output:
        parser.add_argument("--output", default="-")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sievestats",
        description="Sieve-backed statistics for summation arithmetic functions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table", help="sieve one function over a range (CSV cache format)")
    p.add_argument("--kind", required=True)
    p.add_argument("--lo", type=int, required=True)
    p.add_argument("--hi", type=int, required=True)
    p.add_argument("--cache-dir", default=None)
    _add_common(p)
    p.set_defaults(func=_cmd_table)

    p = sub.add_parser("sum", help="exact prefix sums at checkpoints (CSV)")
    p.add_argument("--kind", required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--checkpoints", required=True)
    _add_common(p)
    p.set_defaults(func=_cmd_sum)

    p = sub.add_parser("stats", help="empirical moments and distribution function (JSON)")
    p.add_argument("--kind", required=True)
    p.add_argument("--n", type=int, required=True)
    _add_common(p)
    p.set_defaults(func=_cmd_stats)

    p = sub.add_parser("dependence", help="autocovariance and mixing estimates (CSV, JSON report)")
    p.add_argument("--kind", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--lags", default="1..20")
    p.add_argument("--checkpoints", default=None)
    p.add_argument("--report", default=None)
    _add_common(p)
    p.set_defaults(func=_cmd_dependence)

    p = sub.add_parser("normality", help="block-sum KS test against the normal (JSON)")
    p.add_argument("--kind", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--block-size", type=int, default=1000)
    p.add_argument("--blocks-csv", default=None)
    _add_common(p)
    p.set_defaults(func=_cmd_normality)

    p = sub.add_parser("ergodic", help="atomic-spectrum averaging diagnostics (CSV)")
    p.add_argument("--atoms", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mean", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--replicates", type=int, default=100)
    p.add_argument("--n-list", default=None)
    p.add_argument("--mse-output", default=None)
    p.add_argument("--autocov-output", default=None)
    p.add_argument("--lags", default="0..10")
    _add_common(p, workers=False)
    p.set_defaults(func=_cmd_ergodic)

    p = sub.add_parser("deviation", help="square-root / exponent deviation checks (JSON)")
    p.add_argument("--kind", required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--mode", choices=("counting", "exponent", "variance-growth"), default="counting")
    p.add_argument("--trend-c", type=float, default=0.0)
    p.add_argument("--psi", default="const:2")
    p.add_argument("--xi", type=float, default=0.0)
    p.add_argument("--checkpoints", default=None)
    p.add_argument("--block-size", type=int, default=None)
    p.add_argument("--trajectory", default=None)
    _add_common(p)
    p.set_defaults(func=_cmd_deviation)

    p = sub.add_parser("riemann-check", help="exhaustive |M(n)| <= n^(1/2+xi) scan (JSON)")
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--xi", type=float, default=0.0)
    _add_common(p)
    p.set_defaults(func=_cmd_riemann_check)

    p = sub.add_parser("oeis-check", help="compare prefix sums against a local b-file (JSON)")
    p.add_argument("--bfile", required=True)
    p.add_argument("--kind", required=True)
    p.add_argument("--n-max", type=int, default=None)
    _add_common(p)
    p.set_defaults(func=_cmd_oeis_check)

    return parser


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
