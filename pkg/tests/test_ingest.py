import datetime as dt

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from arte_index import DomainError, SchemaError
from arte_index.ingest import (
    FilterConfig,
    Medium,
    filter_eligible_artists,
    filter_medium,
    parse_medium,
    parse_transactions,
)

from conftest import csv_bytes, rec, row


def test_three_good_rows():
    data = csv_bytes([row(), row(artist="B"), row(artist="C", medium="Sculpture")])
    records, rejects = parse_transactions(data)
    assert len(records) == 3
    assert rejects == []
    assert records[0].price == 1_200_000.0
    assert records[2].medium is Medium.SCULPTURE


def test_zero_price_is_rejected_with_line_number():
    data = csv_bytes([row(), row(price="0")])
    records, rejects = parse_transactions(data)
    assert len(records) == 1
    assert [(r.line, r.reason) for r in rejects] == [(3, "non-positive price")]


def test_missing_height_keeps_record_without_dimensions():
    rows = [row(h="" if i in (3, 7) else "50") for i in range(10)]
    records, rejects = parse_transactions(csv_bytes(rows))
    assert len(records) == 10 and rejects == []
    missing = [r for r in records if r.height is None]
    assert len(missing) == 2
    assert all(r.area is None for r in missing)


@pytest.mark.parametrize(
    "bad, reason",
    [
        (row(price="-5"), "non-positive price"),
        (row(price=""), "missing price"),
        (row(price="abc"), "unparseable price"),
        (row(date="2010-13-01"), "invalid sale_date"),
        (row(date="1985-01-01"), "sale_date outside period"),
        (row(h="0"), "non-positive dimension"),
        (row(artist="  "), "empty artist"),
        (row(lo="200", hi="100"), "low estimate above high estimate"),
        (row(lo="-1"), "negative estimate"),
        (row()[:5], "expected 10 fields, got 5"),
    ],
)
def test_row_rejects(bad, reason):
    records, rejects = parse_transactions(csv_bytes([bad]))
    assert records == []
    assert rejects[0].reason == reason


def test_bad_header_is_fatal():
    with pytest.raises(SchemaError):
        parse_transactions(csv_bytes([row()], header=("artist", "price")))
    with pytest.raises(SchemaError):
        parse_transactions(b"")


def test_artist_names_are_canonicalised():
    records, _ = parse_transactions(csv_bytes([row(artist="  Andy   Warhol ")]))
    assert records[0].artist == "Andy Warhol"


@pytest.mark.parametrize(
    "text, medium",
    [("Oil on Canvas", Medium.PAINTING), ("painting", Medium.PAINTING), ("BRONZE", Medium.SCULPTURE),
     ("Works on paper", Medium.WORK_ON_PAPER), ("lithograph", Medium.PRINT), ("WorkOnPaper", Medium.WORK_ON_PAPER),
     ("video", Medium.OTHER)],
)
def test_medium_aliases(text, medium):
    assert parse_medium(text) is medium


def test_custom_alias_table():
    cfg = FilterConfig(medium_aliases={"canvas": Medium.PAINTING})
    records, _ = parse_transactions(csv_bytes([row(medium="Canvas"), row(medium="Painting")]), cfg)
    assert [r.medium for r in records] == [Medium.PAINTING, Medium.OTHER]


def test_filter_medium_default_keeps_paintings_and_sculptures():
    rs = [rec(medium=Medium.PAINTING, title="1"), rec(medium=Medium.PRINT, title="2"),
          rec(medium=Medium.SCULPTURE, title="3")]
    assert [r.title for r in filter_medium(rs)] == ["1", "3"]
    assert filter_medium([]) == []
    everything = FilterConfig(allowed_mediums=frozenset(Medium))
    assert filter_medium(rs, everything) == rs


def test_eligible_artist_span_and_mean():
    # 5 records over 2005..2015 (span 11), mean = 3.0M / 5 = 600K
    prices = [400_000, 500_000, 600_000, 700_000, 800_000]
    years = [2005, 2007, 2010, 2013, 2015]
    rs = [rec(year=y, price=p) for y, p in zip(years, prices)]
    kept, eligible = filter_eligible_artists(rs)
    assert kept == rs
    assert eligible[0].history_years == 11
    assert eligible[0].mean_price == pytest.approx(600_000)


def test_nine_year_span_is_ineligible():
    rs = [rec(year=2000, price=5e6), rec(year=2008, price=5e6)]
    kept, eligible = filter_eligible_artists(rs)
    assert kept == [] and eligible == []


def test_mean_just_below_threshold_is_ineligible():
    rs = [rec(year=2000, price=499_999), rec(year=2014, price=499_999)]
    assert filter_eligible_artists(rs)[1] == []
    rs = [rec(year=2000, price=500_000), rec(year=2009, price=500_000)]
    assert len(filter_eligible_artists(rs)[1]) == 1


def test_filter_config_validation():
    with pytest.raises(DomainError):
        FilterConfig(min_history_years=0)
    with pytest.raises(DomainError):
        FilterConfig(min_avg_price=-1)
    with pytest.raises(DomainError):
        FilterConfig(period_start=dt.date(2020, 1, 1), period_end=dt.date(2019, 1, 1))


records_st = st.lists(
    st.builds(
        rec,
        artist=st.sampled_from(["A", "B", "C", "D"]),
        year=st.integers(1990, 2024),
        price=st.floats(1e3, 5e6),
        medium=st.sampled_from(list(Medium)),
    ),
    max_size=40,
)


@given(records_st)
def test_filter_medium_idempotent(records):
    once = filter_medium(records)
    assert filter_medium(once) == once


@settings(max_examples=100)
@given(records_st, st.floats(0, 3e6), st.floats(0, 3e6), st.integers(1, 20), st.integers(1, 20))
def test_eligibility_monotone(records, p1, p2, h1, h2):
    lo_p, hi_p = sorted((p1, p2))
    lo_h, hi_h = sorted((h1, h2))
    names = lambda cfg: {e.artist for e in filter_eligible_artists(records, cfg)[1]}
    assert names(FilterConfig(min_avg_price=hi_p, min_history_years=lo_h)) <= names(
        FilterConfig(min_avg_price=lo_p, min_history_years=lo_h))
    assert names(FilterConfig(min_avg_price=lo_p, min_history_years=hi_h)) <= names(
        FilterConfig(min_avg_price=lo_p, min_history_years=lo_h))


@given(st.lists(st.tuples(st.sampled_from(["", "0", "-3", "12", "x"]), st.sampled_from(["", "5", "0"])), max_size=25))
def test_parse_conserves_rows_and_is_deterministic(cells):
    data = csv_bytes([row(price=p, h=h) for p, h in cells])
    records, rejects = parse_transactions(data)
    assert len(records) + len(rejects) == len(cells)
    assert parse_transactions(data) == (records, rejects)
