"""scikit-learn style wrappers around the functional pipeline.

The estimators take and return pandas objects so they drop into
``sklearn.pipeline.Pipeline`` and support ``get_params`` / ``set_params``.
"""

from __future__ import annotations

import datetime as dt
from dataclasses import asdict

import numpy as np
import pandas as pd
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from arte_index._validation import DomainError
from arte_index.artist_stats import STATS_COLUMNS, ArtistYearStat, yearly_stats
from arte_index.backtest import BacktestConfig, run_experiment
from arte_index.index import IndexConfig, IndexSeries, build_index, to_daily
from arte_index.ingest import AuctionRecord, FilterConfig, Medium, filter_eligible_artists, filter_medium
from arte_index.metrics import ReturnSeries

RECORD_FIELDS = tuple(AuctionRecord.__dataclass_fields__)


def records_to_frame(records) -> pd.DataFrame:
    rows = [asdict(r) for r in records]
    frame = pd.DataFrame(rows, columns=list(RECORD_FIELDS))
    frame["medium"] = [Medium(m).value for m in frame["medium"]]
    return frame


def frame_to_records(frame: pd.DataFrame) -> list[AuctionRecord]:
    missing = set(RECORD_FIELDS) - set(frame.columns)
    if missing:
        raise DomainError(f"record frame is missing columns: {sorted(missing)}")

    def opt(x):
        return None if x is None or pd.isna(x) else float(x)

    out = []
    for row in frame.itertuples(index=False):
        d = row.sale_date
        if not isinstance(d, dt.date) or isinstance(d, dt.datetime):
            d = pd.Timestamp(d).date()
        out.append(
            AuctionRecord(
                artist=str(row.artist),
                title=str(row.title),
                medium=Medium(row.medium),
                auction_house=str(row.auction_house),
                sale_date=d,
                height=opt(row.height),
                width=opt(row.width),
                price=float(row.price),
                low_estimate=opt(row.low_estimate),
                high_estimate=opt(row.high_estimate),
            )
        )
    return out


def stats_to_frame(stats) -> pd.DataFrame:
    return pd.DataFrame([asdict(s) for s in stats], columns=list(STATS_COLUMNS))


def frame_to_stats(frame: pd.DataFrame) -> list[ArtistYearStat]:
    return [
        ArtistYearStat(str(r.artist), int(r.year), float(r.avg_norm_price), float(r.avg_area),
                       float(r.est_actual_price), int(r.n_transactions))
        for r in frame.itertuples(index=False)
    ]


def _as_records(X) -> list[AuctionRecord]:
    if isinstance(X, pd.DataFrame):
        return frame_to_records(X)
    return list(X)


def _as_stats(X) -> list[ArtistYearStat]:
    if isinstance(X, pd.DataFrame):
        return frame_to_stats(X)
    return list(X)


def _as_series(X) -> ReturnSeries:
    if isinstance(X, ReturnSeries):
        return X
    if isinstance(X, pd.Series):
        return ReturnSeries.from_pandas(X)
    raise TypeError("expected a ReturnSeries or a pandas Series with a DatetimeIndex")


class ArtistEligibilityFilter(TransformerMixin, BaseEstimator):
    """Medium filter plus the history / average-price artist screen.

    ``fit`` learns which artists qualify; ``transform`` keeps their records
    in allowed mediums. Accepts a record DataFrame or a list of records and
    returns the same kind.
    """

    def __init__(self, allowed_mediums=("Painting", "Sculpture"), min_history_years=10, min_avg_price=500_000.0):
        self.allowed_mediums = allowed_mediums
        self.min_history_years = min_history_years
        self.min_avg_price = min_avg_price

    def _config(self) -> FilterConfig:
        return FilterConfig(
            allowed_mediums=frozenset(Medium(m) for m in self.allowed_mediums),
            min_history_years=self.min_history_years,
            min_avg_price=self.min_avg_price,
        )

    def fit(self, X, y=None):
        config = self._config()
        _, eligible = filter_eligible_artists(filter_medium(_as_records(X), config), config)
        self.eligible_ = eligible
        self.eligible_artists_ = np.array([e.artist for e in eligible], dtype=object)
        return self

    def transform(self, X):
        check_is_fitted(self, "eligible_")
        keep = set(self.eligible_artists_)
        kept = [r for r in filter_medium(_as_records(X), self._config()) if r.artist in keep]
        return records_to_frame(kept) if isinstance(X, pd.DataFrame) else kept


class ArtistYearStatsTransformer(TransformerMixin, BaseEstimator):
    """Records in, one row per (artist, year) of size-normalised price stats out."""

    def fit(self, X, y=None):
        return self

    def transform(self, X):
        return stats_to_frame(yearly_stats(_as_records(X)))


class BlueChipIndex(BaseEstimator):
    """Annually rebalanced top-``cap`` index fitted on artist-year stats."""

    def __init__(self, cap=100, lookback_years=5, base_year=None, end_year=None):
        self.cap = cap
        self.lookback_years = lookback_years
        self.base_year = base_year
        self.end_year = end_year

    def fit(self, X, y=None):
        config = IndexConfig(self.cap, self.lookback_years, self.base_year, self.end_year)
        self.index_ = build_index(_as_stats(X), config)
        self.levels_ = pd.Series(self.index_.levels, index=pd.Index(self.index_.years, name="year"), name="level")
        self.weights_ = pd.DataFrame(
            [(s.year, a, w) for s in self.index_.snapshots for a, w in s.constituents],
            columns=["year", "artist", "weight"],
        )
        return self

    def predict(self, calendar) -> pd.Series:
        """Index levels interpolated onto the given trading dates."""
        check_is_fitted(self, "index_")
        return to_daily(self.index_, calendar).to_pandas()


class RollingSmoother(TransformerMixin, BaseEstimator):
    def __init__(self, window=680, calendar_days=False):
        self.window = window
        self.calendar_days = calendar_days

    def fit(self, X, y=None):
        return self

    def transform(self, X):
        from arte_index.backtest import rolling_average

        out = rolling_average(_as_series(X), self.window, self.calendar_days)
        return out.to_pandas() if isinstance(X, pd.Series) else out


class BlendedPortfolio(BaseEstimator):
    """Art/benchmark two-sleeve portfolio; ``fit(art_index, benchmark)`` runs the experiment."""

    def __init__(self, art_allocation=0.2, smoothing_window=680, rebalance_policy="BuyAndHold",
                 rebalance_interval=252, risk_free_rate=0.0, periods_per_year=252):
        self.art_allocation = art_allocation
        self.smoothing_window = smoothing_window
        self.rebalance_policy = rebalance_policy
        self.rebalance_interval = rebalance_interval
        self.risk_free_rate = risk_free_rate
        self.periods_per_year = periods_per_year

    def fit(self, art, benchmark):
        config = BacktestConfig(
            art_allocation=self.art_allocation,
            smoothing_window=self.smoothing_window,
            rebalance_policy=self.rebalance_policy,
            rebalance_interval=self.rebalance_interval,
            risk_free_rate=self.risk_free_rate,
            periods_per_year=self.periods_per_year,
        )
        if isinstance(art, BlueChipIndex):
            check_is_fitted(art, "index_")
            art = art.index_
        if not isinstance(art, IndexSeries):
            art = _as_series(art)
        self.experiment_ = run_experiment(art, _as_series(benchmark), config)
        self.result_ = self.experiment_.result
        self.frontier_ = pd.DataFrame([asdict(p) for p in self.experiment_.frontier])
        return self

    def predict(self, X=None) -> pd.Series:
        """Portfolio value path (capital 1 at the start)."""
        check_is_fitted(self, "result_")
        return self.result_.portfolio.to_pandas()
