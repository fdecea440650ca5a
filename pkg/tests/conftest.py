import csv
import datetime as dt
import io
from pathlib import Path

import pytest

from arte_index.ingest import CSV_COLUMNS, AuctionRecord, Medium

DATA = Path(__file__).parent / "data"


def rec(artist="A", year=2010, price=1_000_000.0, height=100.0, width=100.0,
        medium=Medium.PAINTING, month=6, day=1, title="t"):
    return AuctionRecord(artist, title, medium, "House", dt.date(year, month, day), height, width, price)


def csv_bytes(rows, header=CSV_COLUMNS) -> bytes:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow(row)
    return buf.getvalue().encode("utf-8")


def row(artist="A", medium="Painting", date="2010-06-01", h="100", w="80", price="1200000", lo="", hi=""):
    return [artist, "Untitled", medium, "Christie's", date, h, w, price, lo, hi]


def load_table(name):
    with open(DATA / name, newline="", encoding="utf-8") as fh:
        return list(csv.DictReader(fh))


@pytest.fixture
def table1():
    return load_table("table1_2005_2015.csv")


@pytest.fixture
def table2():
    return load_table("table2_2012_2015.csv")


@pytest.fixture
def table3():
    return load_table("table3_weights_2022.csv")


# one line per acceptance criterion, echoed at the end of the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
