"""Deterministic synthetic auction data with known price paths.

Randomness comes from a counter-based generator so every draw is a pure
function of ``(seed, stream, counters...)`` and reproducible in any
language:

* ``mix(x)`` is the SplitMix64 finaliser applied to ``x + 0x9E3779B97F4A7C15``
  (all arithmetic modulo 2**64).
* ``key(seed, c1, ..., cn) = mix(... mix(mix(seed) ^ c1) ... ^ cn)``.
* ``uniform(...) = ((key(...) >> 11) + 0.5) / 2**53``, strictly inside (0, 1).
* ``normal(..., slot)`` is Box-Muller on the uniforms at counter slots
  ``2*slot`` and ``2*slot + 1``: ``sqrt(-2 ln u1) * cos(2 pi u2)``.

Transaction draws use stream 1 with counters ``(artist_index, year, sale,
slot)``; the benchmark uses stream 2 with ``(day_index, slot)``.
"""

from __future__ import annotations

import csv
import datetime as dt
import math
from dataclasses import dataclass
from typing import IO

from arte_index._validation import DomainError
from arte_index.index import trading_calendar
from arte_index.ingest import AuctionRecord, Medium

_MASK = (1 << 64) - 1
_STREAM_TRANSACTIONS = 1
_STREAM_BENCHMARK = 2
_HOUSES = ("Christie's", "Sotheby's", "Phillips", "Bonhams", "Artcurial", "Poly Auction")


def _mix(x: int) -> int:
    z = (x + 0x9E3779B97F4A7C15) & _MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


def counter_key(seed: int, *counters: int) -> int:
    h = _mix(seed & _MASK)
    for c in counters:
        h = _mix(h ^ (c & _MASK))
    return h


def uniform(seed: int, *counters: int) -> float:
    return ((counter_key(seed, *counters) >> 11) + 0.5) / 2.0**53


def normal(seed: int, *counters: int, slot: int = 0) -> float:
    u1 = uniform(seed, *counters, 2 * slot)
    u2 = uniform(seed, *counters, 2 * slot + 1)
    return math.sqrt(-2.0 * math.log(u1)) * math.cos(2.0 * math.pi * u2)


@dataclass(frozen=True)
class SynthArtist:
    name: str
    base_price: float
    annual_growth: float
    noise_sd: float
    sales_per_year: int
    mean_area: float


@dataclass(frozen=True)
class SynthSpec:
    seed: int
    artists: tuple[SynthArtist, ...]
    years: tuple[int, int]

    def __post_init__(self):
        object.__setattr__(self, "artists", tuple(self.artists))
        if self.seed < 0:
            raise DomainError("seed must be an unsigned integer")
        start, end = self.years
        if not start < end:
            raise DomainError("synthetic years need start < end")
        if not self.artists:
            raise DomainError("synthetic spec needs at least one artist")
        for a in self.artists:
            if not a.name.strip():
                raise DomainError("artist name must be non-empty")
            if a.base_price <= 0 or a.mean_area <= 0:
                raise DomainError(f"{a.name}: base_price and mean_area must be > 0")
            if a.sales_per_year < 1:
                raise DomainError(f"{a.name}: sales_per_year must be >= 1")
            if a.noise_sd < 0:
                raise DomainError(f"{a.name}: noise_sd must be >= 0")
            if a.annual_growth <= -1:
                raise DomainError(f"{a.name}: annual_growth must be > -1")


@dataclass(frozen=True)
class GroundTruth:
    rows: tuple[tuple[str, int, float], ...]

    def price(self, artist: str, year: int) -> float:
        for a, y, p in self.rows:
            if a == artist and y == year:
                return p
        raise KeyError((artist, year))


def generate(spec: SynthSpec) -> tuple[list[AuctionRecord], GroundTruth]:
    """Draw ``sales_per_year`` sales per artist-year around a noiseless price path.

    Price is ``base * (1 + growth) ** (year - start)`` times a lognormal
    factor with log-sd ``noise_sd``; the area is ``mean_area`` times a
    lognormal factor with the same log-sd, so a zero-noise spec yields
    constant areas and exact prices. Output is ordered by artist, year, sale.
    """
    start, end = spec.years
    records: list[AuctionRecord] = []
    truth: list[tuple[str, int, float]] = []
    for i, a in enumerate(spec.artists):
        for year in range(start, end + 1):
            true_price = a.base_price * (1.0 + a.annual_growth) ** (year - start)
            truth.append((a.name, year, true_price))
            n_days = (dt.date(year, 12, 31) - dt.date(year, 1, 1)).days + 1
            for k in range(a.sales_per_year):
                ctr = (_STREAM_TRANSACTIONS, i, year, k)
                price = true_price * math.exp(a.noise_sd * normal(spec.seed, *ctr, slot=0))
                area = a.mean_area * math.exp(a.noise_sd * normal(spec.seed, *ctr, slot=1))
                aspect = math.exp(0.6 * uniform(spec.seed, *ctr, 4) - 0.3)
                height = math.sqrt(area * aspect)
                width = area / height
                day = int(uniform(spec.seed, *ctr, 5) * n_days)
                house = _HOUSES[int(uniform(spec.seed, *ctr, 6) * len(_HOUSES))]
                records.append(
                    AuctionRecord(
                        artist=a.name,
                        title=f"Untitled ({year}-{k + 1})",
                        medium=Medium.PAINTING,
                        auction_house=house,
                        sale_date=dt.date(year, 1, 1) + dt.timedelta(days=day),
                        height=height,
                        width=width,
                        price=price,
                        low_estimate=round(true_price * 0.8, 2),
                        high_estimate=round(true_price * 1.2, 2),
                    )
                )
    return records, GroundTruth(tuple(truth))


def generate_benchmark(
    seed: int,
    start: dt.date,
    end: dt.date,
    annual_drift: float = 0.08,
    annual_vol: float = 0.18,
    start_level: float = 100.0,
) -> list[tuple[dt.date, float]]:
    """Geometric Brownian motion on the weekday calendar, seeded like ``generate``."""
    days = trading_calendar(start, end)
    mu = (annual_drift - 0.5 * annual_vol**2) / 252
    sd = annual_vol / math.sqrt(252)
    level = start_level
    out = [(days[0], level)]
    for t in range(1, len(days)):
        level *= math.exp(mu + sd * normal(seed, _STREAM_BENCHMARK, t))
        out.append((days[t], level))
    return out


def write_ground_truth(truth: GroundTruth, fh: IO[str]) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["artist", "year", "true_price"])
    for artist, year, price in truth.rows:
        writer.writerow([artist, year, repr(price)])


def write_benchmark(rows, fh: IO[str]) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["date", "level"])
    for d, level in rows:
        writer.writerow([d.isoformat(), repr(level)])


DEMO_SPEC_TEXT = """\
# demo universe: twelve artists, 1995-2024
seed = 20240
years = 1995-2024
artist = Alba Moreno | 1500000 | 0.09 | 0.20 | 8 | 9000
artist = Bruno Keller | 2400000 | 0.06 | 0.18 | 10 | 12000
artist = Chen Lihua | 900000 | 0.12 | 0.25 | 6 | 6000
artist = Dora Ivanova | 3200000 | 0.04 | 0.15 | 12 | 15000
artist = Emil Sato | 700000 | 0.15 | 0.30 | 5 | 4000
artist = Frida Olsen | 1100000 | 0.07 | 0.20 | 7 | 8000
artist = Gustav Lemaire | 5000000 | 0.03 | 0.12 | 9 | 20000
artist = Hana Novak | 800000 | 0.10 | 0.22 | 6 | 5000
artist = Ivo Marchetti | 2000000 | 0.05 | 0.18 | 8 | 10000
artist = Jun Park | 1300000 | 0.08 | 0.20 | 7 | 7000
artist = Kara Bell | 600000 | 0.11 | 0.25 | 5 | 3500
artist = Leo Duval | 150000 | 0.02 | 0.20 | 6 | 3000
"""
