"""Blue-chip art index construction and art/equity portfolio backtesting."""

from arte_index._validation import DomainError, SchemaError
from arte_index.artist_stats import ArtistYearStat, normalize_price, period_endpoints, yearly_stats
from arte_index.backtest import (
    BacktestConfig,
    BacktestResult,
    FrontierPoint,
    annual_returns,
    blend_portfolio,
    efficient_frontier,
    rolling_average,
    run_experiment,
)
from arte_index.estimators import (
    ArtistEligibilityFilter,
    ArtistYearStatsTransformer,
    BlendedPortfolio,
    BlueChipIndex,
    RollingSmoother,
)
from arte_index.index import (
    IndexConfig,
    IndexSeries,
    RebalanceSnapshot,
    build_index,
    compute_weights,
    rank_artists,
    select_constituents,
    to_daily,
)
from arte_index.ingest import (
    AuctionRecord,
    FilterConfig,
    Medium,
    filter_eligible_artists,
    filter_medium,
    parse_transactions,
)
from arte_index.metrics import (
    PerformanceReport,
    ReturnSeries,
    annualized_volatility,
    cumulative_return,
    irr,
    moic,
    performance_report,
    period_returns,
    rolling_correlation,
    sharpe_ratio,
)

__version__ = "0.1.0"
