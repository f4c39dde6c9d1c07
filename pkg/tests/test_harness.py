import csv
import io
import json

import pytest

from agentctl.errors import ScenarioError
from agentctl.harness import (
    CATEGORIES,
    load_scenarios,
    make_backend,
    render_report,
    run_all,
    run_category,
)


@pytest.fixture(scope="module")
def scenario_set(fixtures_dir):
    return load_scenarios(fixtures_dir / "scenarios.json")


class TestLoadScenarios:
    def test_shipped_fixture_set(self, scenario_set):
        assert len(scenario_set.scenarios) == 16
        for category in CATEGORIES:
            assert len(scenario_set.by_category(category)) == 4
        assert scenario_set.script_path.exists()
        assert scenario_set.corpus_path.exists()

    def test_empty_file(self, tmp_path):
        bad = tmp_path / "empty.json"
        bad.write_text("{}", encoding="utf-8")
        with pytest.raises(ScenarioError):
            load_scenarios(bad)

    def test_duplicate_ids(self, tmp_path):
        doc = {
            "scenarios": [
                {"id": "x", "category": "ControlAnalysis", "query": "q",
                 "ground_truth": {"answer": {"kind": "substring", "value": "v"}}},
                {"id": "x", "category": "ControlAnalysis", "query": "q2",
                 "ground_truth": {"answer": {"kind": "substring", "value": "v"}}},
            ]
        }
        bad = tmp_path / "dup.json"
        bad.write_text(json.dumps(doc), encoding="utf-8")
        with pytest.raises(ScenarioError) as err:
            load_scenarios(bad)
        assert "duplicate" in str(err.value)

    def test_schema_violation_carries_field_path(self, tmp_path):
        doc = {"scenarios": [{"id": "x", "category": "NotACategory", "query": "q",
                              "ground_truth": {"answer": {"kind": "substring", "value": "v"}}}]}
        bad = tmp_path / "cat.json"
        bad.write_text(json.dumps(doc), encoding="utf-8")
        with pytest.raises(ScenarioError) as err:
            load_scenarios(bad)
        assert err.value.field == "scenarios[0].category"

    def test_missing_answer_matcher(self, tmp_path):
        doc = {"scenarios": [{"id": "x", "category": "ControlAnalysis", "query": "q",
                              "ground_truth": {}}]}
        bad = tmp_path / "answer.json"
        bad.write_text(json.dumps(doc), encoding="utf-8")
        with pytest.raises(ScenarioError) as err:
            load_scenarios(bad)
        assert "answer" in err.value.field


class TestRunCategory:
    def test_single_run_perfect_scores(self, scenario_set):
        backend = make_backend("scripted", scenario_set)
        group = scenario_set.by_category("ControllerDesign")
        report = run_category(group, runs=1, backend=backend, category="ControllerDesign")
        assert report.report.tau == 4
        assert all(v == 1.0 for v in report.report.scores.values())

    def test_tau_one_equals_single_run_score(self, scenario_set):
        backend = make_backend("scripted", scenario_set)
        scenario = scenario_set.by_category("ControllerDesign")[:1]
        single = run_category(scenario, runs=1, backend=backend)
        assert single.report.tau == 1
        assert single.report.scores["C"] in (0.0, 1.0)

    def test_overall_is_union_of_categories(self, scenario_set):
        reports = run_all(scenario_set, runs=1)
        overall = reports[-1]
        assert overall.category == "Overall"
        assert overall.report.tau == sum(r.report.tau for r in reports[:-1])


@pytest.fixture(scope="module")
def reports(fixtures_dir):
    scenario_set = load_scenarios(fixtures_dir / "scenarios.json")
    return run_all(scenario_set, runs=1)


class TestRenderReport:

    def test_text_rows_in_table_order(self, reports):
        text = render_report(reports, "text")
        lines = text.splitlines()
        labels = [line.split("  ")[0].strip() for line in lines[2:]]
        assert labels == [
            "System Representation", "Control Analysis", "Controller Design",
            "Time-domain Simulation", "Overall Assessment",
        ]

    def test_csv_round_trips_numbers(self, reports):
        text = render_report(reports, "csv")
        rows = list(csv.reader(io.StringIO(text)))
        header, data = rows[0], rows[1:]
        assert header[1:11] == list(
            ("M_E", "M_R", "M_A", "M_P", "M_J", "M_S", "M_F", "M_D", "M_C", "M_T")
        )
        for row in data:
            for value in row[1:11]:
                assert float(value) == 1.0

    def test_chartdata_bar_count(self, reports):
        payload = json.loads(render_report(reports, "chartdata"))
        n_bars = sum(len(series["y"]) for series in payload["series"])
        assert n_bars == len(reports) * 10
        assert payload["kind"] == "bar"
