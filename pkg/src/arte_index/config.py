"""Flat ``key = value`` configuration files.

Grammar, one entry per line::

    # comment (also blank lines are ignored)
    key = value

Keys are case-insensitive with ``-`` treated as ``_``. Values run to the end
of the line with surrounding whitespace stripped. A key may repeat (e.g.
``artist`` in synthetic specs); ``last_values`` keeps the final occurrence.
"""

from __future__ import annotations

import datetime as dt

from arte_index._validation import DomainError
from arte_index.ingest import FilterConfig, Medium
from arte_index.synth import SynthArtist, SynthSpec


class ConfigError(DomainError):
    pass


def parse_entries(text: str) -> list[tuple[str, str]]:
    entries = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value'")
        key, value = line.split("=", 1)
        key = key.strip().lower().replace("-", "_")
        if not key:
            raise ConfigError(f"line {lineno}: empty key")
        entries.append((key, value.strip()))
    return entries


def last_values(entries: list[tuple[str, str]]) -> dict[str, str]:
    return {k: v for k, v in entries}


def _years(text: str) -> tuple[int, int]:
    try:
        start, end = (int(p) for p in text.replace(" ", "").split("-"))
    except ValueError:
        raise ConfigError(f"years must look like 1995-2024, got {text!r}") from None
    return start, end


def parse_synth_spec(text: str, seed: int | None = None) -> SynthSpec:
    """Build a ``SynthSpec`` from ``seed``, ``years`` and repeated ``artist`` lines.

    Each artist line is ``name | base_price | annual_growth | noise_sd |
    sales_per_year | mean_area``.
    """
    entries = parse_entries(text)
    values = last_values(entries)
    artists = []
    for key, value in entries:
        if key != "artist":
            continue
        parts = [p.strip() for p in value.split("|")]
        if len(parts) != 6:
            raise ConfigError(f"artist line needs 6 '|'-separated fields: {value!r}")
        try:
            artists.append(
                SynthArtist(parts[0], float(parts[1]), float(parts[2]), float(parts[3]), int(parts[4]), float(parts[5]))
            )
        except ValueError as exc:
            raise ConfigError(f"bad artist line {value!r}: {exc}") from None
    if "years" not in values:
        raise ConfigError("synthetic spec needs 'years'")
    if seed is None:
        try:
            seed = int(values.get("seed", "0"))
        except ValueError:
            raise ConfigError("seed must be an integer") from None
    return SynthSpec(seed=seed, artists=tuple(artists), years=_years(values["years"]))


def filter_config(values: dict[str, str]) -> FilterConfig:
    kwargs = {}
    try:
        if "allowed_mediums" in values:
            kwargs["allowed_mediums"] = frozenset(Medium(m.strip()) for m in values["allowed_mediums"].split(","))
        if "min_history_years" in values:
            kwargs["min_history_years"] = int(values["min_history_years"])
        if "min_avg_price" in values:
            kwargs["min_avg_price"] = float(values["min_avg_price"])
        if "period_start" in values:
            kwargs["period_start"] = dt.date.fromisoformat(values["period_start"])
        if "period_end" in values:
            kwargs["period_end"] = dt.date.fromisoformat(values["period_end"])
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    return FilterConfig(**kwargs)
