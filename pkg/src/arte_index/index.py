"""Annually rebalanced top-N art index with price-share weights."""

from __future__ import annotations

import csv
import datetime as dt
import math
from dataclasses import dataclass, field, replace
from typing import IO, Iterable, Sequence

import numpy as np
import pandas as pd

from arte_index._validation import DomainError, SchemaError, as_date_array, check_min_length
from arte_index.artist_stats import ArtistYearStat, _endpoints, stats_by_artist
from arte_index.metrics import ReturnSeries

BASE_LEVEL = 100.0
MAX_CONSTITUENTS = 100


@dataclass(frozen=True)
class IndexConfig:
    cap: int = MAX_CONSTITUENTS
    lookback_years: int = 5
    base_year: int | None = None
    end_year: int | None = None

    def __post_init__(self):
        if not 1 <= self.cap <= MAX_CONSTITUENTS:
            raise DomainError(f"cap must lie in [1, {MAX_CONSTITUENTS}]")
        if self.lookback_years < 1:
            raise DomainError("lookback_years must be >= 1")


@dataclass(frozen=True)
class RebalanceSnapshot:
    year: int
    constituents: tuple[tuple[str, float], ...]
    lookback_years: int = 5

    def __post_init__(self):
        object.__setattr__(self, "constituents", tuple((a, float(w)) for a, w in self.constituents))
        if not 1 <= len(self.constituents) <= MAX_CONSTITUENTS:
            raise DomainError("a snapshot holds between 1 and 100 constituents")
        weights = [w for _, w in self.constituents]
        if min(weights) <= 0 or abs(math.fsum(weights) - 1.0) > 1e-9:
            raise DomainError("weights must be positive and sum to 1")

    @property
    def weights(self) -> dict[str, float]:
        return dict(self.constituents)


@dataclass(frozen=True)
class IndexSeries:
    """Annual index levels dated at each year's last trading day."""

    years: tuple[int, ...]
    levels: np.ndarray
    snapshots: tuple[RebalanceSnapshot, ...] = field(default=())

    def __post_init__(self):
        levels = np.asarray(self.levels, dtype=float)
        object.__setattr__(self, "years", tuple(int(y) for y in self.years))
        object.__setattr__(self, "levels", levels)
        object.__setattr__(self, "snapshots", tuple(self.snapshots))
        if len(self.years) != len(levels):
            raise DomainError("years and levels must have the same length")
        if any(b <= a for a, b in zip(self.years, self.years[1:])):
            raise DomainError("years must be strictly increasing")
        if levels.size and not np.all(levels > 0):
            raise DomainError("index levels must be > 0")

    @property
    def dates(self) -> np.ndarray:
        return as_date_array([year_end_trading_day(y) for y in self.years])

    def as_return_series(self) -> ReturnSeries:
        return ReturnSeries(self.dates, self.levels)

    @classmethod
    def from_return_series(cls, series: ReturnSeries) -> "IndexSeries":
        return cls(tuple(int(y) for y in series.years), series.values)


def year_end_trading_day(year: int) -> dt.date:
    d = dt.date(year, 12, 31)
    while d.weekday() >= 5:
        d -= dt.timedelta(days=1)
    return d


def trading_calendar(start: dt.date, end: dt.date) -> list[dt.date]:
    """Weekdays from ``start`` to ``end`` inclusive (no holiday table)."""
    return [d.date() for d in pd.bdate_range(start, end)]


def _rank(by_artist: dict[str, dict[int, ArtistYearStat]], as_of_year: int, lookback_years: int) -> list[str]:
    scored = []
    for artist, by_year in by_artist.items():
        ends = _endpoints(by_year, as_of_year - lookback_years, as_of_year)
        if ends is None:
            continue
        first, last = ends
        count = sum(s.n_transactions for y, s in by_year.items() if first.year <= y <= last.year)
        scored.append((-(last.est_actual_price / first.est_actual_price), -count, artist))
    scored.sort()
    return [artist for _, _, artist in scored]


def rank_artists(stats: Iterable[ArtistYearStat], as_of_year: int, lookback_years: int = 5) -> list[str]:
    """Artists ordered by trailing price ratio over ``[as_of - lookback, as_of]``.

    The ratio uses the estimated prices at the first and last years with data
    inside the window. Ties fall back to more transactions in the window,
    then artist name.
    """
    if lookback_years < 1:
        raise DomainError("lookback_years must be >= 1")
    return _rank(stats_by_artist(stats), as_of_year, lookback_years)


def select_constituents(ranked: Sequence[str], cap: int = MAX_CONSTITUENTS) -> list[str]:
    if cap < 1:
        raise DomainError("cap must be >= 1")
    if not ranked:
        raise DomainError("no eligible constituents")
    return list(ranked[:cap])


def _price_at_or_before(by_year: dict[int, ArtistYearStat], year: int) -> float | None:
    years = [y for y in by_year if y <= year]
    if not years:
        return None
    return by_year[max(years)].est_actual_price


def _weights(by_artist, constituents: Sequence[str], year: int, lookback_years: int) -> RebalanceSnapshot:
    if not constituents:
        raise DomainError("no eligible constituents")
    prices = []
    for artist in constituents:
        price = _price_at_or_before(by_artist.get(artist, {}), year)
        if price is None:
            raise DomainError(f"{artist} has no price at or before {year}")
        prices.append(price)
    total = math.fsum(prices)
    return RebalanceSnapshot(year, tuple((a, p / total) for a, p in zip(constituents, prices)), lookback_years)


def compute_weights(
    stats: Iterable[ArtistYearStat], constituents: Sequence[str], year: int, lookback_years: int = 5
) -> RebalanceSnapshot:
    """Price-share weights: each constituent's estimated price over the total.

    A constituent without data in ``year`` uses its latest earlier year.
    """
    return _weights(stats_by_artist(stats), constituents, year, lookback_years)


def build_index(stats: Iterable[ArtistYearStat], config: IndexConfig | None = None) -> IndexSeries:
    """Chain yearly weighted price relatives into index levels starting at 100.

    Constituents and weights are chosen at the close of year ``y - 1`` and
    held through year ``y``. A constituent with no sale in a year keeps its
    last observed price; a year in which nobody ranks keeps the previous
    basket.
    """
    config = config or IndexConfig()
    stats = list(stats)
    if not stats:
        raise DomainError("no statistics to build an index from")
    by_artist = stats_by_artist(stats)
    all_years = sorted({s.year for s in stats})
    base = config.base_year if config.base_year is not None else all_years[0]
    end = config.end_year if config.end_year is not None else all_years[-1]
    if end - base < 1:
        raise DomainError("an index needs at least two years of data")

    years = list(range(base, end + 1))
    levels = [BASE_LEVEL]
    snapshots = []
    for year in years:
        ranked = _rank(by_artist, year, config.lookback_years)
        if ranked or not snapshots:
            snap = _weights(by_artist, select_constituents(ranked, config.cap), year, config.lookback_years)
        else:
            # no sales anywhere in the lookback window: keep holding the last basket
            snap = replace(snapshots[-1], year=year)
        snapshots.append(snap)
        if year == end:
            break
        terms = []
        for artist, weight in snap.constituents:
            by_year = by_artist[artist]
            p_prev = _price_at_or_before(by_year, year)
            p_next = _price_at_or_before(by_year, year + 1)
            terms.append(weight * (p_next / p_prev - 1.0))
        levels.append(levels[-1] * (1.0 + math.fsum(terms)))
    return IndexSeries(tuple(years), np.array(levels), tuple(snapshots))


def to_daily(series: IndexSeries | ReturnSeries, calendar: Sequence) -> ReturnSeries:
    """Log-linear interpolation of sparse levels onto a trading calendar.

    Anchor dates reproduce their levels exactly; dates outside the anchors
    hold the nearest anchor level.
    """
    calendar = as_date_array(calendar)
    check_min_length(calendar, 2, "calendar")
    anchors = series.dates
    levels = series.levels if isinstance(series, IndexSeries) else series.values
    t = calendar.astype(np.int64)
    a = anchors.astype(np.int64)
    k = np.clip(np.searchsorted(a, t, side="right") - 1, 0, len(a) - 1)
    out = levels[k].astype(float).copy()
    inner = (t > a[0]) & (t < a[-1])
    ki = k[inner]
    frac = (t[inner] - a[ki]) / (a[ki + 1] - a[ki])
    out[inner] = levels[ki] * (levels[ki + 1] / levels[ki]) ** frac
    out[t >= a[-1]] = levels[-1]
    return ReturnSeries(calendar, out)


def write_index(series: IndexSeries, fh: IO[str]) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["date", "level"])
    for d, level in zip(series.dates, series.levels):
        writer.writerow([str(d), repr(float(level))])


def read_levels(fh: IO[str]) -> ReturnSeries:
    """Read a ``date,level`` CSV (index export or benchmark input)."""
    frame = pd.read_csv(fh, dtype={"date": str})
    if list(frame.columns) != ["date", "level"]:
        raise SchemaError("expected header date,level")
    dates = pd.to_datetime(frame["date"], format="%Y-%m-%d").values.astype("datetime64[D]")
    order = np.argsort(dates, kind="stable")
    return ReturnSeries(dates[order], frame["level"].to_numpy(dtype=float)[order])


def write_snapshots(snapshots: Iterable[RebalanceSnapshot], fh: IO[str]) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["year", "artist", "weight_pct"])
    for snap in snapshots:
        for artist, weight in snap.constituents:
            writer.writerow([snap.year, artist, f"{weight * 100:.2f}"])
