"""Auction transaction parsing and the medium / artist-eligibility filters."""

from __future__ import annotations

import csv
import datetime as dt
import enum
import io
import math
import unicodedata
from collections import defaultdict
from dataclasses import dataclass, field
from typing import IO, Iterable, Mapping

from arte_index._validation import DomainError, SchemaError

CSV_COLUMNS = (
    "artist",
    "title",
    "medium",
    "auction_house",
    "sale_date",
    "height_cm",
    "width_cm",
    "price_usd",
    "low_estimate_usd",
    "high_estimate_usd",
)
REJECT_COLUMNS = ("line", "reason")


class Medium(str, enum.Enum):
    PAINTING = "Painting"
    SCULPTURE = "Sculpture"
    WORK_ON_PAPER = "WorkOnPaper"
    PRINT = "Print"
    EDITION = "Edition"
    OTHER = "Other"


DEFAULT_MEDIUM_ALIASES: dict[str, Medium] = {
    "painting": Medium.PAINTING,
    "paintings": Medium.PAINTING,
    "oil on canvas": Medium.PAINTING,
    "acrylic on canvas": Medium.PAINTING,
    "oil on panel": Medium.PAINTING,
    "oil on board": Medium.PAINTING,
    "tempera": Medium.PAINTING,
    "mixed media on canvas": Medium.PAINTING,
    "sculpture": Medium.SCULPTURE,
    "sculptures": Medium.SCULPTURE,
    "bronze": Medium.SCULPTURE,
    "marble": Medium.SCULPTURE,
    "installation": Medium.SCULPTURE,
    "workonpaper": Medium.WORK_ON_PAPER,
    "work on paper": Medium.WORK_ON_PAPER,
    "works on paper": Medium.WORK_ON_PAPER,
    "drawing": Medium.WORK_ON_PAPER,
    "watercolor": Medium.WORK_ON_PAPER,
    "watercolour": Medium.WORK_ON_PAPER,
    "gouache": Medium.WORK_ON_PAPER,
    "pastel": Medium.WORK_ON_PAPER,
    "print": Medium.PRINT,
    "prints": Medium.PRINT,
    "lithograph": Medium.PRINT,
    "screenprint": Medium.PRINT,
    "etching": Medium.PRINT,
    "woodcut": Medium.PRINT,
    "edition": Medium.EDITION,
    "editions": Medium.EDITION,
    "multiple": Medium.EDITION,
    "other": Medium.OTHER,
}


def canonical_artist(name: str) -> str:
    return " ".join(unicodedata.normalize("NFC", name).split())


def parse_medium(text: str, aliases: Mapping[str, Medium] | None = None) -> Medium:
    """Map a free-text medium onto the enum; unknown strings become ``Medium.OTHER``."""
    table = DEFAULT_MEDIUM_ALIASES if aliases is None else aliases
    return table.get(" ".join(text.lower().split()), Medium.OTHER)


@dataclass(frozen=True)
class AuctionRecord:
    artist: str
    title: str
    medium: Medium
    auction_house: str
    sale_date: dt.date
    height: float | None
    width: float | None
    price: float
    low_estimate: float | None = None
    high_estimate: float | None = None

    @property
    def year(self) -> int:
        return self.sale_date.year

    @property
    def area(self) -> float | None:
        if self.height is None or self.width is None:
            return None
        return self.height * self.width

    def to_row(self) -> list[str]:
        def fmt(x):
            return "" if x is None else repr(float(x))

        return [
            self.artist,
            self.title,
            self.medium.value,
            self.auction_house,
            self.sale_date.isoformat(),
            fmt(self.height),
            fmt(self.width),
            fmt(self.price),
            fmt(self.low_estimate),
            fmt(self.high_estimate),
        ]


@dataclass(frozen=True)
class FilterConfig:
    allowed_mediums: frozenset = frozenset({Medium.PAINTING, Medium.SCULPTURE})
    min_history_years: int = 10
    min_avg_price: float = 500_000.0
    period_start: dt.date = dt.date(1990, 1, 1)
    period_end: dt.date = dt.date(2024, 12, 31)
    medium_aliases: Mapping[str, Medium] = field(default_factory=lambda: dict(DEFAULT_MEDIUM_ALIASES))

    def __post_init__(self):
        object.__setattr__(self, "allowed_mediums", frozenset(Medium(m) for m in self.allowed_mediums))
        if self.min_history_years < 1:
            raise DomainError("min_history_years must be >= 1")
        if self.min_avg_price < 0:
            raise DomainError("min_avg_price must be >= 0")
        if not self.period_start < self.period_end:
            raise DomainError("period_start must precede period_end")


@dataclass(frozen=True)
class RejectReport:
    line: int
    reason: str


@dataclass(frozen=True)
class EligibleArtist:
    artist: str
    first_year: int
    last_year: int
    mean_price: float
    n_transactions: int

    @property
    def history_years(self) -> int:
        return self.last_year - self.first_year + 1


class _RowError(Exception):
    pass


def _optional_float(text: str, name: str) -> float | None:
    text = text.strip()
    if not text:
        return None
    try:
        value = float(text)
    except ValueError:
        raise _RowError(f"unparseable {name}") from None
    if value != value or value in (float("inf"), float("-inf")):
        raise _RowError(f"non-finite {name}")
    return value


def _parse_row(row: dict, config: FilterConfig) -> AuctionRecord:
    artist = canonical_artist(row["artist"])
    if not artist:
        raise _RowError("empty artist")
    try:
        sale_date = dt.date.fromisoformat(row["sale_date"].strip())
    except ValueError:
        raise _RowError("invalid sale_date") from None
    if not config.period_start <= sale_date <= config.period_end:
        raise _RowError("sale_date outside period")

    price = _optional_float(row["price_usd"], "price")
    if price is None:
        raise _RowError("missing price")
    if price <= 0:
        raise _RowError("non-positive price")

    height = _optional_float(row["height_cm"], "height")
    width = _optional_float(row["width_cm"], "width")
    if (height is not None and height <= 0) or (width is not None and width <= 0):
        raise _RowError("non-positive dimension")

    low = _optional_float(row["low_estimate_usd"], "low estimate")
    high = _optional_float(row["high_estimate_usd"], "high estimate")
    if (low is not None and low < 0) or (high is not None and high < 0):
        raise _RowError("negative estimate")
    if low is not None and high is not None and low > high:
        raise _RowError("low estimate above high estimate")

    return AuctionRecord(
        artist=artist,
        title=row["title"].strip(),
        medium=parse_medium(row["medium"], config.medium_aliases),
        auction_house=row["auction_house"].strip(),
        sale_date=sale_date,
        height=height,
        width=width,
        price=price,
        low_estimate=low,
        high_estimate=high,
    )


def parse_transactions(
    source: bytes | IO[bytes] | IO[str] | str, config: FilterConfig | None = None
) -> tuple[list[AuctionRecord], list[RejectReport]]:
    """Parse a transactions CSV into records plus per-row rejects.

    A header that does not carry exactly the expected columns raises
    ``SchemaError``; bad data rows never do.
    """
    config = config or FilterConfig()
    if isinstance(source, bytes):
        text = io.StringIO(source.decode("utf-8-sig"), newline="")
    elif isinstance(source, str):
        text = io.StringIO(source, newline="")
    else:
        raw = source.read()
        text = io.StringIO(raw.decode("utf-8-sig") if isinstance(raw, bytes) else raw, newline="")

    reader = csv.reader(text)
    try:
        header = [h.strip() for h in next(reader)]
    except StopIteration:
        raise SchemaError("empty file: missing header row") from None
    if sorted(header) != sorted(CSV_COLUMNS) or len(header) != len(CSV_COLUMNS):
        raise SchemaError(f"header must be exactly {','.join(CSV_COLUMNS)}; got {','.join(header)}")

    records: list[AuctionRecord] = []
    rejects: list[RejectReport] = []
    for cells in reader:
        line = reader.line_num
        if not cells or all(not c.strip() for c in cells):
            continue
        if len(cells) != len(header):
            rejects.append(RejectReport(line, f"expected {len(header)} fields, got {len(cells)}"))
            continue
        try:
            records.append(_parse_row(dict(zip(header, cells)), config))
        except _RowError as exc:
            rejects.append(RejectReport(line, str(exc)))
    return records, rejects


def filter_medium(records: Iterable[AuctionRecord], config: FilterConfig | None = None) -> list[AuctionRecord]:
    allowed = (config or FilterConfig()).allowed_mediums
    return [r for r in records if r.medium in allowed]


def filter_eligible_artists(
    records: Iterable[AuctionRecord], config: FilterConfig | None = None
) -> tuple[list[AuctionRecord], list[EligibleArtist]]:
    """Keep artists with a long enough sale history and a high enough mean price.

    History is the calendar-year span ``last - first + 1``; the mean is the
    arithmetic mean of every sale price the artist has in ``records``.
    """
    config = config or FilterConfig()
    records = list(records)
    by_artist: dict[str, list[AuctionRecord]] = defaultdict(list)
    for r in records:
        by_artist[r.artist].append(r)

    eligible: dict[str, EligibleArtist] = {}
    for artist, rows in by_artist.items():
        years = [r.year for r in rows]
        info = EligibleArtist(
            artist=artist,
            first_year=min(years),
            last_year=max(years),
            mean_price=math.fsum(r.price for r in rows) / len(rows),
            n_transactions=len(rows),
        )
        if info.history_years >= config.min_history_years and info.mean_price >= config.min_avg_price:
            eligible[artist] = info

    kept = [r for r in records if r.artist in eligible]
    return kept, sorted(eligible.values(), key=lambda e: e.artist)


def write_records(records: Iterable[AuctionRecord], fh: IO[str]) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in records:
        writer.writerow(r.to_row())


def write_rejects(rejects: Iterable[RejectReport], fh: IO[str]) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(REJECT_COLUMNS)
    for rej in rejects:
        writer.writerow([rej.line, rej.reason])
