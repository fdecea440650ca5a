import csv

import pytest

from arte_index.cli import COMMANDS, main

from conftest import csv_bytes, row


def read_csv(path):
    with open(path, newline="", encoding="utf-8") as fh:
        return list(csv.DictReader(fh))


@pytest.fixture
def two_artists(tmp_path):
    # unit area, one sale per year, prices chosen to give known rates
    rows = []
    for year in range(2012, 2016):
        rows.append(row("Robert Ryman", date=f"{year}-05-01", h="1", w="1", price=str(1_000_000 * 2 ** (year - 2012))))
        rows.append(row("Adrian Ghenie", date=f"{year}-05-01", h="1", w="1", price=str(800_000)))
    path = tmp_path / "tx.csv"
    path.write_bytes(csv_bytes(rows))
    cfg = tmp_path / "arte.cfg"
    cfg.write_text("min_history_years = 1\n")
    return path, cfg


@pytest.mark.parametrize("command", sorted(COMMANDS))
def test_help_exits_zero(command, capsys):
    with pytest.raises(SystemExit) as exc:
        main([command, "--help"])
    assert exc.value.code == 0
    assert "--out-dir" in capsys.readouterr().out


def test_missing_input_is_usage_error(tmp_path):
    assert main(["ingest", "--input", str(tmp_path / "nope.csv"), "--out-dir", str(tmp_path)]) == 2
    assert main(["ingest", "--out-dir", str(tmp_path)]) == 2


def test_bad_header_is_usage_error(tmp_path):
    path = tmp_path / "tx.csv"
    path.write_text("artist,price\nA,1\n")
    assert main(["ingest", "--input", str(path), "--out-dir", str(tmp_path)]) == 2


def test_ingest_reports_each_bad_row(tmp_path):
    rows = [row(price="-5"), row(date="2010-13-01"), row(artist="  "), row()]
    path = tmp_path / "tx.csv"
    path.write_bytes(csv_bytes(rows))
    out = tmp_path / "out"
    assert main(["ingest", "--input", str(path), "--out-dir", str(out)]) == 0
    rejects = read_csv(out / "rejects.csv")
    assert [r["line"] for r in rejects] == ["2", "3", "4"]
    assert [r["reason"] for r in rejects] == ["non-positive price", "invalid sale_date", "empty artist"]


def test_report_values(two_artists, tmp_path):
    path, cfg = two_artists
    code = main(["report", "--input", str(path), "--config", str(cfg), "--start-year", "2012",
                 "--end-year", "2015", "--out-dir", str(tmp_path)])
    assert code == 0
    rows = read_csv(tmp_path / "performance_2012_2015.csv")
    assert [r["artist"] for r in rows] == ["Robert Ryman", "Adrian Ghenie"]
    assert rows[0] == {"artist": "Robert Ryman", "avg_price_initial_k": "1000.00", "avg_price_final_k": "8000.00",
                       "irr_pct": "100.00", "avg_moic": "8.0000"}
    assert rows[1]["irr_pct"] == "0.00" and rows[1]["avg_moic"] == "1.0000"


def test_report_empty_window_exits_3(two_artists, tmp_path):
    path, cfg = two_artists
    code = main(["report", "--input", str(path), "--config", str(cfg), "--start-year", "1995",
                 "--end-year", "2000", "--out-dir", str(tmp_path)])
    assert code == 3


def test_default_history_filter_leaves_nothing(two_artists, tmp_path):
    path, _ = two_artists
    assert main(["index", "--input", str(path), "--out-dir", str(tmp_path)]) == 3


def test_bad_config_value_is_usage_error(two_artists, tmp_path):
    path, cfg = two_artists
    cfg.write_text("min_history_years = -3\n")
    assert main(["ingest", "--input", str(path), "--config", str(cfg), "--out-dir", str(tmp_path)]) == 2


def test_index_single_artist_full_weight(tmp_path):
    rows = [row("Solo", date=f"{y}-03-01", price=str(1e6 * (1 + 0.1 * (y - 2000)))) for y in range(2000, 2011)]
    path = tmp_path / "tx.csv"
    path.write_bytes(csv_bytes(rows))
    assert main(["index", "--input", str(path), "--out-dir", str(tmp_path)]) == 0
    weights = read_csv(tmp_path / "weights.csv")
    assert {w["weight_pct"] for w in weights} == {"100.00"}
    levels = read_csv(tmp_path / "index.csv")
    assert float(levels[0]["level"]) == 100.0
    assert float(levels[-1]["level"]) == pytest.approx(200.0, rel=1e-12)


@pytest.fixture
def demo(tmp_path):
    assert main(["synth", "--out-dir", str(tmp_path / "demo")]) == 0
    return tmp_path / "demo"


def test_allocation_out_of_range_is_usage_error(demo, tmp_path, capsys):
    with pytest.raises(SystemExit) as exc:
        main(["backtest", "--input", "x", "--benchmark", "y", "--allocation", "1.5"])
    assert exc.value.code == 2


def test_allocation_zero_matches_benchmark(demo, tmp_path):
    out = tmp_path / "out"
    assert main(["index", "--input", str(demo / "transactions.csv"), "--out-dir", str(out)]) == 0
    code = main(["backtest", "--input", str(out / "index.csv"), "--benchmark", str(demo / "benchmark.csv"),
                 "--allocation", "0", "--out-dir", str(out)])
    assert code == 0
    fig1 = read_csv(out / "fig1_cumulative.csv")
    assert all(r["portfolio"] == r["benchmark"] for r in fig1)
    fig2 = read_csv(out / "fig2_annual.csv")
    assert all(r["portfolio_return"] == r["benchmark_return"] for r in fig2)


def test_non_overlapping_benchmark_exits_3(demo, tmp_path):
    out = tmp_path / "out"
    main(["index", "--input", str(demo / "transactions.csv"), "--out-dir", str(out)])
    bench = tmp_path / "bench.csv"
    bench.write_text("date,level\n2030-01-02,100\n2030-01-03,101\n")
    code = main(["backtest", "--input", str(out / "index.csv"), "--benchmark", str(bench), "--out-dir", str(out)])
    assert code == 3


def test_out_dir_from_environment(demo, tmp_path, monkeypatch):
    target = tmp_path / "env_out"
    monkeypatch.setenv("ARTE_OUT_DIR", str(target))
    assert main(["ingest", "--input", str(demo / "transactions.csv")]) == 0
    assert (target / "transactions.csv").exists()


def test_flag_overrides_config(two_artists, tmp_path):
    path, cfg = two_artists
    cfg.write_text("min_history_years = 1\nstart_year = 1990\nend_year = 1991\n")
    code = main(["report", "--input", str(path), "--config", str(cfg), "--start-year", "2012",
                 "--end-year", "2015", "--out-dir", str(tmp_path)])
    assert code == 0
    assert (tmp_path / "performance_2012_2015.csv").exists()


def test_synth_seed_flag_changes_output(tmp_path):
    assert main(["synth", "--out-dir", str(tmp_path / "a"), "--seed", "1"]) == 0
    assert main(["synth", "--out-dir", str(tmp_path / "b"), "--seed", "2"]) == 0
    assert (tmp_path / "a" / "transactions.csv").read_bytes() != (tmp_path / "b" / "transactions.csv").read_bytes()


def test_run_all_is_byte_identical(demo, tmp_path):
    outputs = []
    for name in ("r1", "r2"):
        out = tmp_path / name
        code = main(["run-all", "--input", str(demo / "transactions.csv"),
                     "--benchmark", str(demo / "benchmark.csv"), "--out-dir", str(out)])
        assert code == 0
        outputs.append({p.name: p.read_bytes() for p in sorted(out.iterdir())})
    assert outputs[0] == outputs[1]
    assert {"fig1_cumulative.csv", "fig2_annual.csv", "fig3_frontier.csv", "summary.txt"} <= set(outputs[0])
