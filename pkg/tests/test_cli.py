"""End-to-end tests of the command-line interface."""

import json
import os
from fractions import Fraction

import pytest

import config
from core.storage import read_csv_rows
from core.witt_engine import TruncatedSeries, get_witt_table, wp_map
from main import build_parser, run
from ui.formatting import format_series

SCHEMES = os.path.join(config.DATA_DIR, "schemes")


def test_parser_lists_every_command():
    parser = build_parser()
    args = parser.parse_args(["additive-search", "--n", "4"])
    assert args.mode == "brute" and args.out is None and not args.no_header
    for command in ("witt-table", "zeta-f1", "count-points", "elliptic", "additive-search",
                    "entropy-demo", "mangoldt"):
        assert command in parser.format_help()


def test_usage_errors_exit_with_one():
    assert run(["no-such-command"]) == config.EXIT_VALIDATION
    assert run([]) == config.EXIT_VALIDATION
    assert run(["--version"]) == config.EXIT_OK


def test_witt_table(tmp_path, capsys):
    path = tmp_path / "w5.csv"
    assert run(["witt-table", "--p", "5", "--N", "3", "--out", str(path)]) == 0
    assert path.read_text().startswith("# char1")
    rows = read_csv_rows(str(path))
    assert len(rows) == 125
    assert rows[0] == {"alpha_num": "1", "alpha_den": "125", "series": "4T^3"}
    assert {"alpha_num": "1", "alpha_den": "5", "series": "4T"} in rows
    assert "matches fixture" in capsys.readouterr().out


def test_witt_table_series_column_parses_back(tmp_path):
    path = tmp_path / "w3.csv"
    assert run(["witt-table", "--p", "3", "--N", "2", "--no-header", "--out", str(path)]) == 0
    table = get_witt_table(3, 2)
    for row in read_csv_rows(str(path)):
        alpha = Fraction(int(row["alpha_num"]), int(row["alpha_den"]))
        expected = wp_map(table, alpha)
        assert row["series"] == format_series(expected)
        assert TruncatedSeries.parse(row["series"], 3, expected.precision) == expected
    assert format_series(TruncatedSeries(3, (0, 0, 0))) == "0"


def test_witt_table_rejects_unsupported_prime(tmp_path):
    assert run(["witt-table", "--p", "11", "--out", str(tmp_path / "w.csv")]) == config.EXIT_VALIDATION
    assert not (tmp_path / "w.csv").exists()


def test_additive_search_reports_empty_set(tmp_path, capsys):
    path = tmp_path / "A5.csv"
    assert run(["additive-search", "--n", "5", "--out", str(path)]) == 0
    assert "0 structures" in capsys.readouterr().out
    assert read_csv_rows(str(path)) == []


def test_additive_search_exports_edges(tmp_path):
    edges = tmp_path / "edges.csv"
    assert run(["additive-search", "--n", "3", "--mode", "constructive", "--no-header",
                "--out", str(tmp_path / "A3.csv"), "--export-edges", str(edges)]) == 0
    lines = edges.read_text().splitlines()
    assert lines[0] == "x,s(x)"
    assert len(lines) == 5
    rows = read_csv_rows(str(tmp_path / "A3.csv"))
    assert len(rows) == 1 and rows[0]["bijective"] == "True"


def test_additive_search_without_structures_cannot_export(tmp_path):
    code = run(["additive-search", "--n", "5", "--out", str(tmp_path / "A5.csv"),
                "--export-edges", str(tmp_path / "edges.csv")])
    assert code == config.EXIT_VALIDATION


def test_zeta_f1(tmp_path):
    out = tmp_path / "zeta"
    code = run(["zeta-f1", "--scheme", os.path.join(SCHEMES, "p1.json"), "--s-grid", "3,1",
                "--z-grid", "0:2:3", "--out", str(out)])
    assert code == 0
    exponents = json.loads((out / "exponents.json").read_text())
    assert exponents["alpha"] == {"0": "-1", "1": "-1"}
    assert "_meta" in exponents
    samples = read_csv_rows(str(out / "logderiv.csv"))
    assert len(samples) == 1
    assert float(samples[0]["re_val"]) == pytest.approx(-5 / 6)
    assert float(samples[0]["error_bound"]) == 0.0
    assert len(read_csv_rows(str(out / "counting.csv"))) == 3


def test_zeta_f1_missing_scheme(tmp_path):
    code = run(["zeta-f1", "--scheme", str(tmp_path / "absent.json"), "--out", str(tmp_path)])
    assert code == config.EXIT_VALIDATION


def test_count_points(tmp_path):
    path = tmp_path / "counts.csv"
    assert run(["count-points", "--scheme", os.path.join(SCHEMES, "f1_5.json"), "--N", "10",
                "--out", str(path)]) == 0
    rows = read_csv_rows(str(path))
    assert [int(r["count"]) for r in rows] == [1, 1, 1, 1, 5, 1, 1, 1, 1, 5]


def test_elliptic_with_identity_check(tmp_path, capsys):
    out = tmp_path / "elliptic"
    assert run(["elliptic", "--N", "200", "--check-dirichlet", "--out", str(out)]) == 0
    printed = capsys.readouterr().out
    assert "p=11: split multiplicative reduction" in printed
    assert "identity holds through n=200" in printed
    counts = read_csv_rows(str(out / "counting.csv"))
    assert counts[1] == {"n": "2", "N": "5"}
    catalog = json.loads((out / "singularities.json").read_text())
    assert len(catalog["singularities"]) == 7


def test_elliptic_rejects_bad_window(tmp_path):
    code = run(["elliptic", "--N", "50", "--window", "0,1", "--out", str(tmp_path)])
    assert code == config.EXIT_VALIDATION


def test_entropy_demo(tmp_path):
    out = tmp_path / "entropy"
    assert run(["entropy-demo", "--grid", "33", "--out", str(out)]) == 0
    assert len(read_csv_rows(str(out / "entropy.csv"))) == 33
    assert len(read_csv_rows(str(out / "free_energy.csv"))) == 5


def test_mangoldt_accuracy_failure_exits_with_two(tmp_path):
    path = tmp_path / "lambda.csv"
    assert run(["mangoldt", "--N", "1000", "--out", str(path)]) == 0
    assert run(["mangoldt", "--N", "100", "--tolerance", "1e-12", "--out", str(path)]) == config.EXIT_ACCURACY
    assert run(["mangoldt", "--N", "100", "--s", "0.5", "--out", str(path)]) == config.EXIT_VALIDATION
