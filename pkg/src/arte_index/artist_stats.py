"""Size-standardised yearly price statistics per artist."""

from __future__ import annotations

import csv
import math
from collections import defaultdict
from dataclasses import dataclass
from typing import IO, Iterable

from arte_index.ingest import AuctionRecord

STATS_COLUMNS = ("artist", "year", "avg_norm_price", "avg_area", "est_actual_price", "n_transactions")


@dataclass(frozen=True)
class ArtistYearStat:
    artist: str
    year: int
    avg_norm_price: float
    avg_area: float
    est_actual_price: float
    n_transactions: int


def normalize_price(record: AuctionRecord) -> float | None:
    """Price per square centimetre, or ``None`` when a dimension is missing."""
    area = record.area
    if area is None:
        return None
    return record.price / area


def yearly_stats(records: Iterable[AuctionRecord], return_skipped: bool = False):
    """Aggregate records into one ``ArtistYearStat`` per (artist, year).

    The estimated actual price recombines the two yearly means:
    ``mean(price / area) * mean(area)``. Records without both dimensions are
    left out and counted as skipped. Means use ``math.fsum`` so the result
    does not depend on record order.

    Returns the stats sorted by (artist, year), plus the skipped count when
    ``return_skipped`` is true.
    """
    groups: dict[tuple[str, int], list[tuple[float, float]]] = defaultdict(list)
    skipped = 0
    for r in records:
        norm = normalize_price(r)
        if norm is None:
            skipped += 1
            continue
        groups[(r.artist, r.year)].append((norm, r.area))

    stats = []
    for (artist, year), rows in sorted(groups.items()):
        n = len(rows)
        avg_norm = math.fsum(x for x, _ in rows) / n
        avg_area = math.fsum(a for _, a in rows) / n
        stats.append(ArtistYearStat(artist, year, avg_norm, avg_area, avg_norm * avg_area, n))
    if return_skipped:
        return stats, skipped
    return stats


def stats_by_artist(stats: Iterable[ArtistYearStat]) -> dict[str, dict[int, ArtistYearStat]]:
    out: dict[str, dict[int, ArtistYearStat]] = defaultdict(dict)
    for s in stats:
        out[s.artist][s.year] = s
    return dict(out)


def _endpoints(by_year: dict[int, ArtistYearStat], start_year: int, end_year: int):
    years = [y for y in by_year if start_year <= y <= end_year]
    if not years:
        return None
    return by_year[min(years)], by_year[max(years)]


def period_endpoints(
    stats: Iterable[ArtistYearStat], artist: str, start_year: int, end_year: int
) -> tuple[float, float] | None:
    """Estimated prices at the first and last years with data inside the window."""
    if start_year > end_year:
        raise ValueError("start_year must not exceed end_year")
    by_year = {s.year: s for s in stats if s.artist == artist}
    ends = _endpoints(by_year, start_year, end_year)
    if ends is None:
        return None
    return ends[0].est_actual_price, ends[1].est_actual_price


def write_stats(stats: Iterable[ArtistYearStat], fh: IO[str]) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(STATS_COLUMNS)
    for s in stats:
        writer.writerow([s.artist, s.year, repr(s.avg_norm_price), repr(s.avg_area), repr(s.est_actual_price), s.n_transactions])


def read_stats(fh: IO[str]) -> list[ArtistYearStat]:
    reader = csv.DictReader(fh)
    if tuple(reader.fieldnames or ()) != STATS_COLUMNS:
        from arte_index._validation import SchemaError

        raise SchemaError(f"stats header must be {','.join(STATS_COLUMNS)}")
    return [
        ArtistYearStat(
            row["artist"],
            int(row["year"]),
            float(row["avg_norm_price"]),
            float(row["avg_area"]),
            float(row["est_actual_price"]),
            int(row["n_transactions"]),
        )
        for row in reader
    ]
