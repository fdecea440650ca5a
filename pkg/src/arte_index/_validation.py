"""Input validation helpers shared by the functional API and the estimators."""

from __future__ import annotations

import datetime as dt
from typing import Iterable, Sequence

import numpy as np


class DomainError(ValueError):
    """An input lies outside the domain of an operation."""


class SchemaError(ValueError):
    """A CSV file does not carry the expected header."""


def check_positive(value: float, name: str, allow_zero: bool = False) -> float:
    value = float(value)
    if not np.isfinite(value):
        raise DomainError(f"{name} must be finite, got {value!r}")
    if value < 0 or (value == 0 and not allow_zero):
        bound = ">= 0" if allow_zero else "> 0"
        raise DomainError(f"{name} must be {bound}, got {value!r}")
    return value


def check_fraction(value: float, name: str) -> float:
    value = float(value)
    if not 0.0 <= value <= 1.0:
        raise DomainError(f"{name} must lie in [0, 1], got {value!r}")
    return value


def check_min_length(values: Sequence, minimum: int, name: str) -> None:
    if len(values) < minimum:
        raise DomainError(f"{name} needs at least {minimum} points, got {len(values)}")


def as_date_array(dates: Iterable) -> np.ndarray:
    """Coerce dates (``datetime.date``, strings, datetime64) to ``datetime64[D]``."""
    arr = np.asarray(list(dates) if not isinstance(dates, np.ndarray) else dates)
    return arr.astype("datetime64[D]")


def check_strictly_increasing(dates: np.ndarray, name: str = "dates") -> None:
    if len(dates) > 1 and not np.all(dates[1:] > dates[:-1]):
        raise DomainError(f"{name} must be strictly increasing")


def check_same_dates(a: np.ndarray, b: np.ndarray) -> None:
    if a.shape != b.shape or not np.array_equal(a, b):
        raise DomainError("series must share identical date vectors")


def to_pydate(d: np.datetime64) -> dt.date:
    return d.astype("datetime64[D]").astype(object)
