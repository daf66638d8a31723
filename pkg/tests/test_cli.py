import json

import pytest
from click.testing import CliRunner

from finfish import main
from finfish.core.config import Settings


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def cached(monkeypatch, tmp_path):
    config = Settings(cache=tmp_path / "cache")
    monkeypatch.setattr(main, "settings", config)
    return config


def test_fish_enum_streams_jsonl(runner):
    result = runner.invoke(main.cli, ["fish", "enum", "--max-size", "4", "--format", "jsonl"])
    assert result.exit_code == 0, result.output
    records = [json.loads(line) for line in result.stdout.splitlines()]
    assert len(records) == 9
    keys = [(r["size"], r["tails"], r["rsize"], r["lsize"], r["fin"]) for r in records]
    assert keys == sorted(keys)


def test_fish_oracle_census(runner):
    result = runner.invoke(main.cli, ["fish", "oracle", "--max-area", "5", "--census"])
    assert result.exit_code == 0, result.output
    lines = result.stdout.splitlines()
    assert lines[0] == "area,fish,non_polyomino,non_planar"
    assert lines[4].split(",")[2] == "2"
    assert lines[5].split(",")[3] == "1"


def test_fish_table_is_served_from_cache(runner, cached):
    first = runner.invoke(main.cli, ["fish", "table", "--max-size", "6"])
    second = runner.invoke(main.cli, ["fish", "table", "--max-size", "6"])
    assert first.exit_code == second.exit_code == 0
    assert first.stdout == second.stdout
    assert first.stdout.startswith("size,tails,rsize,lsize,fin,count\n")
    assert len(list((cached.cache).glob("*.json"))) == 1


def test_trees_enum(runner):
    result = runner.invoke(main.cli, ["trees", "enum", "--max-nodes", "3"])
    assert result.exit_code == 0, result.output
    assert len(result.stdout.splitlines()) == 1 + 2 + 6


def test_trees_table(runner):
    result = runner.invoke(main.cli, ["trees", "table", "--max-nodes", "3", "--format", "json"])
    assert result.exit_code == 0, result.output
    payload = json.loads(result.stdout)
    assert payload["fields"] == ["nodes", "right_branches", "non_root_even", "odd", "core"]
    assert sum(row[-1] for row in payload["rows"]) == 9


def test_series_eval(runner):
    result = runner.invoke(
        main.cli, ["series", "eval", "--name", "P1", "--order", "5", "--specialize", "y=1,a=1,b=1"]
    )
    assert result.exit_code == 0, result.output
    values = [line.split(" : ")[1] for line in result.stdout.splitlines()]
    assert values == ["1", "2", "6", "22", "91"]
    assert result.stdout.splitlines()[0] == "t^1 y^0 a^0 b^0 u^0 : 1"


def test_series_eval_rejects_unknown_variable(runner):
    result = runner.invoke(main.cli, ["series", "eval", "--name", "P", "--order", "3", "--specialize", "z=1"])
    assert result.exit_code == 2


def test_series_eval_rejects_unknown_name(runner):
    result = runner.invoke(main.cli, ["series", "eval", "--name", "Q", "--order", "3"])
    assert result.exit_code == 2


def test_formulas_bfile(runner):
    result = runner.invoke(main.cli, ["formulas", "--max", "5"])
    assert result.exit_code == 0
    assert result.stdout == "1 1\n2 2\n3 6\n4 22\n5 91\n"


def test_check_formulas_passes(runner):
    result = runner.invoke(main.cli, ["check", "formulas", "--max", "8"])
    assert result.exit_code == 0, result.output
    report = json.loads(result.stdout.splitlines()[0])
    assert report["suite"] == "formulas"
    assert report["pass"] is True


def test_check_failure_exits_one(runner, monkeypatch):
    from finfish.validation import runner as suite_runner
    from finfish.validation.report import SuiteFailure, SuiteReport

    failing = SuiteReport(suite="area", passed=False, failure=SuiteFailure(check="forced", key=[1]))
    monkeypatch.setitem(suite_runner.SUITES, "area", suite_runner.Suite(lambda config: failing, lambda b, cfg: {}, 12))
    result = runner.invoke(main.cli, ["check", "area"])
    assert result.exit_code == 1
    assert json.loads(result.stdout)["pass"] is False


def test_usage_errors_exit_two(runner):
    assert runner.invoke(main.cli, ["fish", "enum", "--max-size", "1"]).exit_code == 2
    assert runner.invoke(main.cli, ["check", "nope"]).exit_code == 2
    assert runner.invoke(main.cli, ["check", "oracle", "--max", "50"]).exit_code == 2


def test_budget_exceeded_exits_three(runner, monkeypatch):
    monkeypatch.setattr(main, "settings", Settings(cache=None, term_budget=10))
    result = runner.invoke(main.cli, ["fish", "enum", "--max-size", "7"])
    assert result.exit_code == 3


def test_render_term_as_ascii(runner):
    result = runner.invoke(main.cli, ["render", "B2(A)", "--term", "--format", "ascii"])
    assert result.exit_code == 0, result.output
    assert result.stdout == ".*\n*\n"


def test_report_area(runner):
    result = runner.invoke(main.cli, ["report", "area", "--max-size", "5"])
    assert result.exit_code == 0, result.output
    payload = json.loads(result.stdout)
    assert payload["means_increasing"] is True
    assert [row["mean_area"] for row in payload["rows"]][:3] == ["1", "2", "19/6"]


def test_cache_clear_io_error_exits_one(runner, cached, monkeypatch):
    def broken(self):
        raise PermissionError("read-only cache directory")

    monkeypatch.setattr(main.CacheManager, "clear", broken)
    result = runner.invoke(main.cli, ["cache", "clear"])
    assert result.exit_code == 1
    assert result.exception is None or isinstance(result.exception, SystemExit)
