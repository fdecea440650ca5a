import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from arte_index.artist_stats import (
    ArtistYearStat,
    normalize_price,
    period_endpoints,
    read_stats,
    write_stats,
    yearly_stats,
)

from conftest import rec


def test_normalize_price():
    assert normalize_price(rec(price=1000, height=2, width=2)) == 250
    assert normalize_price(rec(price=500, height=None)) is None
    assert normalize_price(rec(price=1_200_000, height=100, width=80)) == 150


def test_two_works_one_year():
    stats = yearly_stats([rec(price=100, height=1, width=1), rec(price=300, height=1, width=1)])
    assert stats == [ArtistYearStat("A", 2010, 200.0, 1.0, 200.0, 2)]


def test_single_record_recovers_its_price():
    (s,) = yearly_stats([rec(price=1_234_567.0, height=73.0, width=91.5)])
    assert s.est_actual_price == pytest.approx(1_234_567.0, rel=1e-15)


def test_mean_of_ratios_times_mean_area_is_not_mean_price():
    # (100 / 1 + 300 / 3) / 2 * (1 + 3) / 2 = 100 * 2 = 200, whereas mean price = 200 too;
    # pick areas 1 and 4: (100 + 75) / 2 * 2.5 = 218.75 vs mean price 200
    (s,) = yearly_stats([rec(price=100, height=1, width=1), rec(price=300, height=2, width=2)])
    assert s.avg_norm_price == 87.5
    assert s.avg_area == 2.5
    assert s.est_actual_price == 218.75


def test_dimensionless_records_are_skipped():
    rs = [rec(year=2010, height=None), rec(year=2011), rec(year=2011, width=None)]
    stats, skipped = yearly_stats(rs, return_skipped=True)
    assert [s.year for s in stats] == [2011]
    assert skipped == 2


def test_period_endpoints_table_anchor():
    stats = [
        ArtistYearStat("Robert Ryman", 2005, 1.0, 35_000.0, 35_000.0, 1),
        ArtistYearStat("Robert Ryman", 2015, 1.0, 16_010_010.0, 16_010_010.0, 1),
    ]
    assert period_endpoints(stats, "Robert Ryman", 2005, 2015) == (35_000.0, 16_010_010.0)


def test_period_endpoints_snap_inward():
    stats = [ArtistYearStat("A", y, 1.0, 1.0, p, 1) for y, p in [(2003, 9.0), (2008, 2.0), (2009, 3.0), (2010, 4.0), (2017, 9.0)]]
    assert period_endpoints(stats, "A", 2005, 2015) == (2.0, 4.0)
    assert period_endpoints(stats, "A", 2011, 2016) is None
    assert period_endpoints(stats, "B", 2005, 2015) is None
    with pytest.raises(ValueError):
        period_endpoints(stats, "A", 2015, 2005)


def test_stats_csv_round_trip(tmp_path):
    stats = yearly_stats([rec(price=123.456, height=3.3, width=7.1), rec(artist="B", year=2011)])
    path = tmp_path / "stats.csv"
    with open(path, "w", newline="") as fh:
        write_stats(stats, fh)
    assert path.read_text().splitlines()[0] == "artist,year,avg_norm_price,avg_area,est_actual_price,n_transactions"
    with open(path, newline="") as fh:
        assert read_stats(fh) == stats


record_lists = st.lists(
    st.builds(
        rec,
        artist=st.sampled_from(["A", "B"]),
        year=st.integers(2000, 2003),
        price=st.floats(1.0, 1e7),
        height=st.floats(1.0, 500.0),
        width=st.floats(1.0, 500.0),
    ),
    min_size=1,
    max_size=30,
)


@settings(max_examples=100)
@given(record_lists, st.floats(0.01, 100.0))
def test_price_scaling(records, c):
    base = yearly_stats(records)
    scaled = yearly_stats([rec(r.artist, r.year, r.price * c, r.height, r.width) for r in records])
    for b, s in zip(base, scaled):
        assert s.avg_norm_price == pytest.approx(b.avg_norm_price * c, rel=1e-12)
        assert s.est_actual_price == pytest.approx(b.est_actual_price * c, rel=1e-12)
        assert s.avg_area == b.avg_area


@settings(max_examples=100)
@given(record_lists, st.floats(0.1, 10.0))
def test_height_scaling(records, c):
    base = yearly_stats(records)
    scaled = yearly_stats([rec(r.artist, r.year, r.price, r.height * c, r.width) for r in records])
    for b, s in zip(base, scaled):
        assert s.avg_area == pytest.approx(b.avg_area * c, rel=1e-12)
        assert s.avg_norm_price == pytest.approx(b.avg_norm_price / c, rel=1e-12)


@given(record_lists, st.randoms())
def test_order_independent(records, rnd):
    shuffled = list(records)
    rnd.shuffle(shuffled)
    assert yearly_stats(shuffled) == yearly_stats(records)


@given(record_lists)
def test_invariants(records):
    for s in yearly_stats(records):
        assert s.n_transactions >= 1
        assert s.est_actual_price == s.avg_norm_price * s.avg_area
