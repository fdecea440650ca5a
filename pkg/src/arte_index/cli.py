"""``arte`` command line: ingest, report, index, backtest, synth, run-all.

Exit codes: 0 success, 2 usage or input error, 3 empty-result domain error.
Flags override values from ``--config``; the output directory falls back to
``$ARTE_OUT_DIR`` and then the working directory.
"""

from __future__ import annotations

import argparse
import contextlib
import datetime as dt
import logging
import os
import sys
from pathlib import Path

from arte_index._validation import DomainError, SchemaError
from arte_index.artist_stats import write_stats, yearly_stats
from arte_index.backtest import (
    BacktestConfig,
    run_experiment,
    summary_lines,
    write_fig1,
    write_fig2,
    write_fig3,
)
from arte_index.config import ConfigError, filter_config, last_values, parse_entries, parse_synth_spec
from arte_index.index import IndexConfig, IndexSeries, build_index, read_levels, write_index, write_snapshots
from arte_index.ingest import (
    filter_eligible_artists,
    filter_medium,
    parse_transactions,
    write_records,
    write_rejects,
)
from arte_index.metrics import performance_report, write_report
from arte_index.synth import DEMO_SPEC_TEXT, generate, generate_benchmark, write_benchmark, write_ground_truth

log = logging.getLogger("arte")

EXIT_OK, EXIT_USAGE, EXIT_EMPTY = 0, 2, 3


class UsageError(Exception):
    pass


class EmptyResult(Exception):
    pass


def _allocation(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not 0.0 <= value <= 1.0:
        raise argparse.ArgumentTypeError(f"allocation must lie in [0, 1], got {value}")
    return value


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


class Settings:
    """Merged view of ``--config`` file values and explicit flags."""

    def __init__(self, args: argparse.Namespace):
        self.args = args
        self.file: dict[str, str] = {}
        if getattr(args, "config", None):
            self.file_text = _read_text(args.config)
            self.file = last_values(parse_entries(self.file_text))
        else:
            self.file_text = None

    def get(self, name: str, cast=str, default=None):
        value = getattr(self.args, name, None)
        if value is not None:
            return value
        if name in self.file:
            try:
                return cast(self.file[name])
            except (ValueError, argparse.ArgumentTypeError) as exc:
                raise UsageError(f"config value {name} = {self.file[name]!r}: {exc}") from None
        return default

    def require(self, name: str, cast=str):
        value = self.get(name, cast)
        if value is None:
            raise UsageError(f"--{name.replace('_', '-')} is required")
        return value

    def out_dir(self) -> Path:
        out = Path(self.get("out_dir", default=None) or os.environ.get("ARTE_OUT_DIR") or ".")
        out.mkdir(parents=True, exist_ok=True)
        return out

    def filter_config(self):
        with _as_usage_error():
            return filter_config(self.file)

    def index_config(self) -> IndexConfig:
        with _as_usage_error():
            return self._index_config()

    def _index_config(self) -> IndexConfig:
        return IndexConfig(
            cap=self.get("cap", int, 100),
            lookback_years=self.get("lookback", int, 5),
            base_year=self.get("start_year", int),
            end_year=self.get("end_year", int),
        )

    def backtest_config(self) -> BacktestConfig:
        with _as_usage_error():
            return self._backtest_config()

    def _backtest_config(self) -> BacktestConfig:
        return BacktestConfig(
            art_allocation=self.get("allocation", _allocation, 0.20),
            smoothing_window=self.get("window", int, 680),
            rebalance_policy=self.get("rebalance_policy", str, "BuyAndHold"),
            rebalance_interval=self.get("rebalance_interval", int, 252),
            risk_free_rate=self.get("risk_free", float, 0.0),
            periods_per_year=self.get("periods_per_year", float, 252),
            calendar_days=self.get("calendar_days", lambda s: s.lower() in ("1", "true", "yes"), False),
        )


@contextlib.contextmanager
def _as_usage_error():
    """Invalid configuration values are usage errors, not empty results."""
    try:
        yield
    except DomainError as exc:
        raise UsageError(str(exc)) from None


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _read_bytes(path: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _write(path: Path, writer, *payload) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer(*payload, fh)
    log.info("wrote %s", path)


def _load_filtered(settings: Settings):
    config = settings.filter_config()
    records, rejects = parse_transactions(_read_bytes(settings.require("input")), config)
    kept, eligible = filter_eligible_artists(filter_medium(records, config), config)
    log.info("%d records parsed, %d rejected, %d kept from %d eligible artists",
             len(records), len(rejects), len(kept), len(eligible))
    return kept, rejects


def cmd_ingest(settings: Settings) -> int:
    kept, rejects = _load_filtered(settings)
    out = settings.out_dir()
    _write(out / "transactions.csv", write_records, kept)
    _write(out / "rejects.csv", write_rejects, rejects)
    return EXIT_OK


def _report(settings: Settings, stats, out: Path, start: int, end: int) -> None:
    if end <= start:
        raise UsageError("--end-year must be after --start-year")
    reports = performance_report(stats, start, end)
    if not reports:
        raise EmptyResult(f"no artist has data between {start} and {end}")
    _write(out / f"performance_{start}_{end}.csv", write_report, reports)


def cmd_report(settings: Settings) -> int:
    start = settings.require("start_year", int)
    end = settings.require("end_year", int)
    kept, _ = _load_filtered(settings)
    _report(settings, yearly_stats(kept), settings.out_dir(), start, end)
    return EXIT_OK


def _index(settings: Settings, stats, out: Path) -> IndexSeries:
    if not stats:
        raise EmptyResult("no eligible constituents")
    series = build_index(stats, settings.index_config())
    _write(out / "index.csv", write_index, series)
    _write(out / "weights.csv", write_snapshots, series.snapshots)
    return series


def cmd_index(settings: Settings) -> int:
    kept, _ = _load_filtered(settings)
    stats = yearly_stats(kept)
    out = settings.out_dir()
    _write(out / "stats.csv", write_stats, stats)
    _index(settings, stats, out)
    return EXIT_OK


def _backtest(settings: Settings, art, out: Path) -> None:
    bench_path = settings.require("benchmark")
    if not Path(bench_path).exists():
        _missing(bench_path)
    with open(bench_path, encoding="utf-8") as fh:
        bench = read_levels(fh)
    exp = run_experiment(art, bench, settings.backtest_config())
    _write(out / "fig1_cumulative.csv", write_fig1, exp)
    _write(out / "fig2_annual.csv", write_fig2, exp)
    _write(out / "fig3_frontier.csv", write_fig3, exp)
    (out / "summary.txt").write_text("\n".join(summary_lines(exp)) + "\n", encoding="utf-8")
    log.info("wrote %s", out / "summary.txt")


def _missing(path: str):
    raise UsageError(f"cannot read {path}: No such file or directory")


def cmd_backtest(settings: Settings) -> int:
    path = settings.require("input")
    if not Path(path).exists():
        _missing(path)
    with open(path, encoding="utf-8") as fh:
        art = IndexSeries.from_return_series(read_levels(fh))
    _backtest(settings, art, settings.out_dir())
    return EXIT_OK


def cmd_synth(settings: Settings) -> int:
    text = settings.file_text if settings.file_text is not None else DEMO_SPEC_TEXT
    with _as_usage_error():
        spec = parse_synth_spec(text, seed=settings.get("seed", int))
    records, truth = generate(spec)
    out = settings.out_dir()
    _write(out / "transactions.csv", write_records, records)
    _write(out / "ground_truth.csv", write_ground_truth, truth)
    start, end = spec.years
    bench = generate_benchmark(spec.seed, dt.date(start, 1, 1), dt.date(end, 12, 31))
    _write(out / "benchmark.csv", write_benchmark, bench)
    return EXIT_OK


def cmd_run_all(settings: Settings) -> int:
    kept, rejects = _load_filtered(settings)
    out = settings.out_dir()
    _write(out / "transactions.csv", write_records, kept)
    _write(out / "rejects.csv", write_rejects, rejects)
    stats = yearly_stats(kept)
    _write(out / "stats.csv", write_stats, stats)
    series = _index(settings, stats, out)
    start = settings.get("start_year", int, series.years[0])
    end = settings.get("end_year", int, series.years[-1])
    _report(settings, stats, out, start, end)
    _backtest(settings, series, out)
    return EXIT_OK


COMMANDS = {
    "ingest": (cmd_ingest, "parse and filter an auction transactions CSV",
               ["input", "out_dir", "config"]),
    "report": (cmd_report, "per-artist IRR / MOIC between two years",
               ["input", "start_year", "end_year", "out_dir", "config"]),
    "index": (cmd_index, "build the annually rebalanced index and weight snapshots",
              ["input", "start_year", "end_year", "cap", "lookback", "out_dir", "config"]),
    "backtest": (cmd_backtest, "blend an index CSV with a benchmark and sweep allocations",
                 ["input", "benchmark", "allocation", "window", "risk_free", "out_dir", "config"]),
    "synth": (cmd_synth, "generate a deterministic synthetic dataset",
              ["seed", "out_dir", "config"]),
    "run-all": (cmd_run_all, "ingest, report, index and backtest in one go",
                ["input", "benchmark", "start_year", "end_year", "allocation", "window", "cap",
                 "lookback", "risk_free", "out_dir", "config"]),
}

FLAGS = {
    "input": dict(help="input CSV (transactions, or date,level for backtest)"),
    "benchmark": dict(help="benchmark CSV with header date,level"),
    "out_dir": dict(help="output directory (default $ARTE_OUT_DIR or .)"),
    "start_year": dict(type=int, help="first year of the period / index base year"),
    "end_year": dict(type=int, help="last year of the period"),
    "allocation": dict(type=_allocation, help="art allocation in [0, 1] (default 0.20)"),
    "window": dict(type=_positive_int, help="smoothing window in trading days (default 680)"),
    "cap": dict(type=int, help="maximum index constituents (default 100)"),
    "lookback": dict(type=_positive_int, help="ranking lookback in years (default 5)"),
    "risk_free": dict(type=float, help="annual risk-free rate as a fraction (default 0)"),
    "seed": dict(type=int, help="random seed for synth"),
    "config": dict(help="flat key = value config file (synth: spec file)"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="arte", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (func, help_text, flags) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text, description=help_text)
        for flag in flags:
            p.add_argument("--" + flag.replace("_", "-"), dest=flag, default=None, **FLAGS[flag])
        p.set_defaults(func=func)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(Settings(args))
    except (UsageError, SchemaError, ConfigError) as exc:
        print(f"arte {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (EmptyResult, DomainError) as exc:
        print(f"arte {args.command}: {exc}", file=sys.stderr)
        return EXIT_EMPTY


if __name__ == "__main__":
    sys.exit(main())
