"""Return and risk arithmetic: MOIC, IRR, volatility, Sharpe, correlation."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import IO, Iterable, Sequence

import numpy as np

from arte_index._validation import (
    DomainError,
    as_date_array,
    check_min_length,
    check_positive,
    check_same_dates,
    check_strictly_increasing,
    to_pydate,
)
from arte_index.artist_stats import ArtistYearStat, _endpoints, stats_by_artist

REPORT_COLUMNS = ("artist", "avg_price_initial_k", "avg_price_final_k", "irr_pct", "avg_moic")


@dataclass(frozen=True)
class ReturnSeries:
    """Dated positive levels (index values or prices)."""

    dates: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        dates = as_date_array(self.dates)
        values = np.asarray(self.values, dtype=float)
        if dates.shape != values.shape or dates.ndim != 1:
            raise DomainError("dates and values must be 1-D and the same length")
        check_strictly_increasing(dates)
        if values.size and not np.all(values > 0):
            raise DomainError("series values must all be > 0")
        object.__setattr__(self, "dates", dates)
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return len(self.values)

    @property
    def years(self) -> np.ndarray:
        return self.dates.astype("datetime64[Y]").astype(int) + 1970

    def to_pandas(self):
        import pandas as pd

        return pd.Series(self.values, index=pd.DatetimeIndex(self.dates.astype("datetime64[ns]")), name="level")

    @classmethod
    def from_pandas(cls, series) -> "ReturnSeries":
        return cls(series.index.values.astype("datetime64[D]"), series.to_numpy(dtype=float))


@dataclass(frozen=True)
class PerformanceReport:
    artist: str
    period_start: int
    period_end: int
    initial: float
    final: float
    moic: float
    irr: float

    @property
    def yearly_return(self) -> float:
        return self.irr

    @property
    def cash_on_cash(self) -> float:
        # unlevered single purchase and sale
        return self.moic


def moic(initial: float, final: float) -> float:
    initial = check_positive(initial, "initial")
    final = check_positive(final, "final", allow_zero=True)
    return final / initial


def irr(initial: float, final: float, years: float) -> float:
    """Annual rate that grows ``initial`` into ``final`` over ``years``.

    With a single purchase and a single sale this is the geometric rate
    ``(final / initial) ** (1 / years) - 1``.
    """
    initial = check_positive(initial, "initial")
    final = check_positive(final, "final")
    years = check_positive(years, "years")
    return (final / initial) ** (1.0 / years) - 1.0


def _values(series: ReturnSeries | Sequence[float]) -> np.ndarray:
    values = series.values if isinstance(series, ReturnSeries) else np.asarray(series, dtype=float)
    check_min_length(values, 2, "series")
    return values


def cumulative_return(series: ReturnSeries | Sequence[float]) -> float:
    values = _values(series)
    return float(values[-1] / values[0] - 1.0)


def period_returns(series: ReturnSeries | Sequence[float]) -> np.ndarray:
    values = _values(series)
    return values[1:] / values[:-1] - 1.0


def annualized_volatility(returns: Sequence[float], periods_per_year: float = 252) -> float:
    returns = np.asarray(returns, dtype=float)
    check_min_length(returns, 2, "returns")
    if np.all(returns == returns[0]):
        return 0.0
    return float(np.std(returns, ddof=1) * math.sqrt(periods_per_year))


def sharpe_ratio(returns: Sequence[float], risk_free_rate: float = 0.0, periods_per_year: float = 252) -> float:
    returns = np.asarray(returns, dtype=float)
    vol = annualized_volatility(returns, periods_per_year)
    if _is_degenerate(returns):
        raise DomainError("undefined Sharpe: zero volatility")
    return float((returns.mean() * periods_per_year - risk_free_rate) / vol)


def _is_degenerate(x: np.ndarray) -> bool:
    # rounding noise on an (analytically) constant sequence counts as zero variance
    spread = float(np.max(x) - np.min(x))
    return spread <= 1e-12 * max(1.0, float(np.max(np.abs(x))))


def pearson(x: Sequence[float], y: Sequence[float]) -> float | None:
    """Pearson correlation, or ``None`` when either side has zero variance."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if len(x) < 2 or _is_degenerate(x) or _is_degenerate(y):
        return None
    dx = x - x.mean()
    dy = y - y.mean()
    r = float(np.dot(dx, dy) / math.sqrt(float(np.dot(dx, dx)) * float(np.dot(dy, dy))))
    return min(1.0, max(-1.0, r))


def rolling_correlation(a: ReturnSeries, b: ReturnSeries, window: int = 252) -> list[tuple]:
    """Trailing-window Pearson correlation of the two series' period returns.

    Each entry is ``(date, corr)`` dated at the window's last return;
    ``corr`` is ``None`` for windows where a side is flat.
    """
    check_same_dates(a.dates, b.dates)
    if window < 2:
        raise DomainError("window must be >= 2")
    ra, rb = period_returns(a), period_returns(b)
    out = []
    for end in range(window, len(ra) + 1):
        out.append((to_pydate(a.dates[end]), pearson(ra[end - window : end], rb[end - window : end])))
    return out


def correlation_by_year(a: ReturnSeries, b: ReturnSeries) -> list[tuple[int, float | None]]:
    """Pearson correlation of period returns grouped by calendar year."""
    check_same_dates(a.dates, b.dates)
    ra, rb = period_returns(a), period_returns(b)
    years = a.years[1:]
    out = []
    for year in np.unique(years):
        mask = years == year
        out.append((int(year), pearson(ra[mask], rb[mask])))
    return out


def performance_report(
    stats: Iterable[ArtistYearStat], start_year: int, end_year: int
) -> list[PerformanceReport]:
    """Per-artist MOIC and IRR between the snapped window endpoints.

    The holding period is the nominal ``end_year - start_year``. Rows are
    sorted by descending IRR, then artist name.
    """
    if end_year <= start_year:
        raise DomainError("end_year must be after start_year")
    years = end_year - start_year
    reports = []
    for artist, by_year in stats_by_artist(stats).items():
        ends = _endpoints(by_year, start_year, end_year)
        if ends is None:
            continue
        p0, p1 = ends[0].est_actual_price, ends[1].est_actual_price
        reports.append(PerformanceReport(artist, start_year, end_year, p0, p1, moic(p0, p1), irr(p0, p1, years)))
    reports.sort(key=lambda r: (-r.irr, r.artist))
    return reports


def write_report(reports: Iterable[PerformanceReport], fh: IO[str]) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(REPORT_COLUMNS)
    for r in reports:
        writer.writerow(
            [r.artist, f"{r.initial / 1000:.2f}", f"{r.final / 1000:.2f}", f"{r.irr * 100:.2f}", f"{r.moic:.4f}"]
        )
