"""Art/benchmark blended-portfolio experiments and the allocation frontier."""

from __future__ import annotations

import csv
import enum
from dataclasses import dataclass, field, replace
from typing import IO

import numpy as np

from arte_index._validation import DomainError, check_fraction, check_same_dates, to_pydate
from arte_index.index import IndexSeries, to_daily
from arte_index.metrics import (
    ReturnSeries,
    _is_degenerate,
    annualized_volatility,
    correlation_by_year,
    cumulative_return,
    period_returns,
    sharpe_ratio,
)


class RebalancePolicy(str, enum.Enum):
    BUY_AND_HOLD = "BuyAndHold"
    PERIODIC_TO_TARGET = "PeriodicToTarget"


@dataclass(frozen=True)
class BacktestConfig:
    art_allocation: float = 0.20
    smoothing_window: int = 680
    rebalance_policy: RebalancePolicy = RebalancePolicy.BUY_AND_HOLD
    rebalance_interval: int = 252
    risk_free_rate: float = 0.0
    periods_per_year: float = 252
    # count the smoothing window in calendar days instead of trading days
    calendar_days: bool = False

    def __post_init__(self):
        check_fraction(self.art_allocation, "art_allocation")
        object.__setattr__(self, "rebalance_policy", RebalancePolicy(self.rebalance_policy))
        if self.smoothing_window < 1:
            raise DomainError("smoothing_window must be >= 1")
        if self.rebalance_interval < 1:
            raise DomainError("rebalance_interval must be >= 1")
        if self.periods_per_year <= 0:
            raise DomainError("periods_per_year must be > 0")


@dataclass(frozen=True)
class BacktestResult:
    portfolio: ReturnSeries
    cumulative_return: float
    annual_returns: list
    volatility: float
    correlation_by_year: list
    _sharpe: float | None = field(default=None, repr=False)

    @property
    def sharpe(self) -> float:
        if self._sharpe is None:
            raise DomainError("undefined Sharpe: zero volatility")
        return self._sharpe


@dataclass(frozen=True)
class FrontierPoint:
    art_allocation: float
    annual_return: float
    volatility: float
    sharpe: float | None


def rolling_average(series: ReturnSeries, window: int, calendar_days: bool = False) -> ReturnSeries:
    """Trailing mean over the last ``window`` observations, truncated at the start.

    With ``calendar_days`` the window covers dates within ``window`` days.
    """
    if window < 1:
        raise DomainError("window must be >= 1")
    values = series.values
    n = len(values)
    if calendar_days:
        days = series.dates.astype(np.int64)
        starts = np.searchsorted(days, days - window + 1, side="left")
    else:
        starts = np.maximum(np.arange(n) - window + 1, 0)
    out = np.empty(n)
    for t in range(n):
        chunk = values[starts[t] : t + 1]
        # the exact mean lies within the chunk range; clip away rounding overshoot
        out[t] = min(max(chunk.mean(), chunk.min()), chunk.max())
    return ReturnSeries(series.dates, out)


def _portfolio_values(art: np.ndarray, bench: np.ndarray, config: BacktestConfig) -> np.ndarray:
    w = config.art_allocation
    if config.rebalance_policy is RebalancePolicy.BUY_AND_HOLD:
        return w * (art / art[0]) + (1.0 - w) * (bench / bench[0])
    n, step = len(art), config.rebalance_interval
    starts = np.arange(0, n - 1, step)
    ends = np.minimum(starts + step, n - 1)
    growth = w * art[ends] / art[starts] + (1.0 - w) * bench[ends] / bench[starts]
    capital = np.r_[1.0, np.cumprod(growth)[:-1]]
    k = (np.arange(1, n) - 1) // step
    s = starts[k]
    out = np.empty(n)
    out[0] = 1.0
    out[1:] = capital[k] * (w * art[1:] / art[s] + (1.0 - w) * bench[1:] / bench[s])
    return out


def annual_returns(portfolio: ReturnSeries) -> list[tuple[int, float]]:
    """Calendar-year returns from year-end to year-end levels.

    The first year is measured from the series' first level.
    """
    years = portfolio.years
    values = portfolio.values
    out = []
    base = values[0]
    for year in np.unique(years):
        last = values[np.nonzero(years == year)[0][-1]]
        out.append((int(year), float(last / base - 1.0)))
        base = last
    return out


def _summarize(series: ReturnSeries, config: BacktestConfig) -> tuple[float, float, float | None]:
    rets = period_returns(series)
    if len(rets) < 2:
        # one return has no sample dispersion
        return float(rets.mean() * config.periods_per_year), float("nan"), None
    vol = annualized_volatility(rets, config.periods_per_year)
    ann = float(rets.mean() * config.periods_per_year)
    sharpe = None if _is_degenerate(rets) else sharpe_ratio(rets, config.risk_free_rate, config.periods_per_year)
    return ann, vol, sharpe


def blend_portfolio(art: ReturnSeries, benchmark: ReturnSeries, config: BacktestConfig | None = None) -> BacktestResult:
    """Simulate a two-sleeve portfolio starting from capital 1.

    ``BuyAndHold`` lets the sleeves drift; ``PeriodicToTarget`` resets them to
    the target split every ``rebalance_interval`` observations.
    """
    config = config or BacktestConfig()
    check_same_dates(art.dates, benchmark.dates)
    if len(art) < 2:
        raise DomainError("series need at least 2 points")
    portfolio = ReturnSeries(art.dates, _portfolio_values(art.values, benchmark.values, config))
    _, vol, sharpe = _summarize(portfolio, config)
    return BacktestResult(
        portfolio=portfolio,
        cumulative_return=cumulative_return(portfolio),
        annual_returns=annual_returns(portfolio),
        volatility=vol,
        correlation_by_year=correlation_by_year(art, benchmark),
        _sharpe=sharpe,
    )


def allocation_grid(grid_step: float) -> list[float]:
    if not 0 < grid_step <= 0.5:
        raise DomainError("grid_step must lie in (0, 0.5]")
    grid = []
    i = 0
    while i * grid_step < 1.0 - 1e-12:
        grid.append(round(i * grid_step, 12))
        i += 1
    grid.append(1.0)
    return grid


def efficient_frontier(
    art: ReturnSeries, benchmark: ReturnSeries, config: BacktestConfig | None = None, grid_step: float = 0.01
) -> list[FrontierPoint]:
    """Sweep the art allocation over ``[0, 1]`` and record return and risk."""
    config = config or BacktestConfig()
    check_same_dates(art.dates, benchmark.dates)
    points = []
    for w in allocation_grid(grid_step):
        cfg = replace(config, art_allocation=w)
        portfolio = ReturnSeries(art.dates, _portfolio_values(art.values, benchmark.values, cfg))
        ann, vol, sharpe = _summarize(portfolio, cfg)
        points.append(FrontierPoint(w, ann, vol, sharpe))
    return points


def min_volatility_allocation(points: list[FrontierPoint]) -> float:
    return min(points, key=lambda p: (p.volatility, p.art_allocation)).art_allocation


def max_sharpe_allocation(points: list[FrontierPoint]) -> float | None:
    scored = [p for p in points if p.sharpe is not None]
    if not scored:
        return None
    return max(scored, key=lambda p: (p.sharpe, -p.art_allocation)).art_allocation


@dataclass(frozen=True)
class Experiment:
    result: BacktestResult
    frontier: list
    art: ReturnSeries
    benchmark: ReturnSeries
    config: BacktestConfig

    @property
    def min_volatility_allocation(self) -> float:
        return min_volatility_allocation(self.frontier)

    @property
    def max_sharpe_allocation(self) -> float | None:
        return max_sharpe_allocation(self.frontier)


def run_experiment(
    art_annual: IndexSeries | ReturnSeries, benchmark_daily: ReturnSeries, config: BacktestConfig | None = None
) -> Experiment:
    """Daily-ise the art index, smooth it, blend it with the benchmark, sweep allocations.

    Only benchmark dates inside the art index's date range are used. The
    benchmark is never smoothed.
    """
    config = config or BacktestConfig()
    anchors = art_annual.dates
    mask = (benchmark_daily.dates >= anchors[0]) & (benchmark_daily.dates <= anchors[-1])
    dates = benchmark_daily.dates[mask]
    if len(dates) < 2 or (dates[-1] - dates[0]).astype(int) < 730:
        raise DomainError("art index and benchmark overlap by less than 2 years")
    bench = ReturnSeries(dates, benchmark_daily.values[mask])
    art_daily = to_daily(art_annual, dates)
    art = rolling_average(art_daily, config.smoothing_window, config.calendar_days)
    result = blend_portfolio(art, bench, config)
    frontier = efficient_frontier(art, bench, config)
    return Experiment(result, frontier, art, bench, config)


def _pct(x: float) -> str:
    return f"{x * 100:.2f}"


def write_fig1(exp: Experiment, fh: IO[str]) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["date", "portfolio", "benchmark", "art"])
    port = exp.result.portfolio.values - 1.0
    bench = exp.benchmark.values / exp.benchmark.values[0] - 1.0
    art = exp.art.values / exp.art.values[0] - 1.0
    for d, p, b, a in zip(exp.art.dates, port, bench, art):
        writer.writerow([str(d), _pct(p), _pct(b), _pct(a)])


def write_fig2(exp: Experiment, fh: IO[str]) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["year", "portfolio_return", "benchmark_return", "art_return"])
    bench = dict(annual_returns(exp.benchmark))
    art = dict(annual_returns(exp.art))
    for year, r in exp.result.annual_returns:
        writer.writerow([year, _pct(r), _pct(bench[year]), _pct(art[year])])


def write_fig3(exp: Experiment, fh: IO[str]) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["allocation", "annual_return", "volatility", "sharpe"])
    for p in exp.frontier:
        sharpe = "" if p.sharpe is None else f"{p.sharpe:.4f}"
        writer.writerow([f"{p.art_allocation:.2f}", _pct(p.annual_return), _pct(p.volatility), sharpe])


def summary_lines(exp: Experiment) -> list[str]:
    res = exp.result
    try:
        sharpe = f"{res.sharpe:.4f}"
    except DomainError:
        sharpe = "undefined (zero volatility)"
    lines = [
        f"art_allocation: {exp.config.art_allocation:.4f}",
        f"smoothing_window: {exp.config.smoothing_window}",
        f"rebalance_policy: {exp.config.rebalance_policy.value}",
        f"start: {to_pydate(res.portfolio.dates[0])}",
        f"end: {to_pydate(res.portfolio.dates[-1])}",
        f"cumulative_return_pct: {_pct(res.cumulative_return)}",
        f"benchmark_cumulative_return_pct: {_pct(cumulative_return(exp.benchmark))}",
        f"art_cumulative_return_pct: {_pct(cumulative_return(exp.art))}",
        f"volatility_pct: {_pct(res.volatility)}",
        f"sharpe: {sharpe}",
        f"min_volatility_allocation: {exp.min_volatility_allocation:.2f}",
    ]
    best = exp.max_sharpe_allocation
    lines.append(f"max_sharpe_allocation: {'undefined' if best is None else f'{best:.2f}'}")
    for year, corr in res.correlation_by_year:
        lines.append(f"correlation_{year}: {'undefined' if corr is None else f'{corr:.4f}'}")
    return lines
