import json

import pytest

from finfish.core.config import Settings
from finfish.core.errors import PreconditionError
from finfish.validation import suites
from finfish.validation.report import SuiteReport, Tally
from finfish.validation.runner import SUITES, SuiteRunner


def test_tally_keeps_smallest_failure():
    tally = Tally()
    tally.compare("b", (3, 1), 1, 2)
    tally.compare("a", (2, 5), 1, 2)
    tally.compare("a", (2, 5), 1, 1)
    assert not tally.passed
    assert tally.checked == 3
    assert tally.failure.key == [2, 5]


def test_report_serializes_pass_key():
    report = SuiteReport(suite="x", passed=True, checked=3)
    payload = json.loads(report.to_json())
    assert payload["pass"] is True
    assert "failure" not in payload
    assert SuiteReport.model_validate(payload).passed


def test_formulas_suite():
    report = suites.check_formulas(6)
    assert report.passed, report.failure
    assert report.checked > 0


def test_series_suite(uncached):
    assert suites.check_series_vs_enum(5, config=uncached).passed


def test_oracle_suite_reports_census():
    report = suites.check_oracle(5)
    assert report.passed, report.failure
    assert [row["non_planar"] for row in report.notes["census"]] == [0, 0, 0, 0, 1]


def test_roundtrip_suite():
    assert suites.check_roundtrip(6, 4).passed


def test_fincore_suite():
    assert suites.check_fincore(7).passed


def test_conjecture_suite_names_an_orientation():
    report = suites.check_conjecture(7)
    assert report.passed, report.failure
    assert report.notes["orientations"]


def test_identities_suite():
    report = suites.check_identities(5, 3)
    assert report.passed, report.failure


def test_trees_suite():
    assert suites.check_trees(5, 2, recurrence_order=6, recurrence_jmax=2).passed


def test_trees_suite_recurrence_to_j6_at_order_10():
    report = suites.check_trees(3, 0, recurrence_order=10, recurrence_jmax=6)
    assert report.passed, report.failure
    assert report.params["recurrence_order"] == 10
    assert report.params["recurrence_jmax"] == 6


def test_trees_suite_brute_force_to_j4():
    report = suites.check_trees(7, 4, recurrence_order=2, recurrence_jmax=0)
    assert report.passed, report.failure


def test_trees_suite_default_bounds():
    params = SUITES["trees"].resolve(None, Settings(cache=None))
    assert params == {"max_nodes": 8, "jmax": 4, "recurrence_order": 10, "recurrence_jmax": 6}


def test_area_report():
    report = suites.area_report(6)
    means = [row.mean_area for row in report.rows]
    assert means[:3] == ["1", "2", "19/6"]
    assert report.means_increasing and report.ratios_increasing
    assert report.rows[0].slope is None
    assert suites.area_report(5, realize=True) == suites.area_report(5)


def test_area_suite_measures_built_fish():
    report = suites.check_area(7)
    assert report.passed, report.failure
    assert report.params == {"max_size": 7}
    # one symbolic-vs-realized comparison per size plus one per row
    assert report.checked >= 2 * 6
    assert [row["mean_area"] for row in report.notes["rows"]][:3] == ["1", "2", "19/6"]


def test_runner_metrics_and_cache(config):
    runner = SuiteRunner(config=config)
    first = runner.run("formulas", 4)
    second = runner.run("formulas", 4)
    assert first.passed and second.passed
    assert first.checked == second.checked
    metrics = runner.get_performance_metrics()
    assert metrics["suites_run"] == 2
    assert metrics["success_rate"] == 1.0
    assert metrics["cache_hit_rate"] == 0.5


def test_runner_validates_before_work(config):
    runner = SuiteRunner(config=config)
    with pytest.raises(PreconditionError):
        runner.run_all(["formulas", "nope"])
    with pytest.raises(PreconditionError):
        runner.run("oracle", 50)
    assert runner.performance_metrics["suites_run"] == 0


def test_every_suite_is_registered():
    assert set(SUITES) == {
        "formulas", "series", "oracle", "roundtrip", "fincore", "conjecture", "identities", "trees", "area",
    }


def test_runner_cache_follows_settings(tmp_path):
    cache = tmp_path / "cache"
    wide = SuiteRunner(config=Settings(cache=cache, suite_max_size=6)).run("fincore")
    narrow_runner = SuiteRunner(config=Settings(cache=cache, suite_max_size=4))
    narrow = narrow_runner.run("fincore")
    assert wide.params == {"max_size": 6}
    assert narrow.params == {"max_size": 4}
    fresh = suites.check_fincore(4)
    assert (narrow.checked, narrow.params) == (fresh.checked, fresh.params)
    assert narrow_runner.cache.hit_rate == 0.0


def test_runner_params_match_report_params(config):
    runner = SuiteRunner(config=config)
    for name in ("formulas", "series", "fincore"):
        assert runner.run(name).params == SUITES[name].resolve(None, config)


def test_formulas_default_covers_i_plus_j_up_to_11():
    assert SUITES["formulas"].resolve(None, Settings(cache=None)) == {"max_n": 10}
