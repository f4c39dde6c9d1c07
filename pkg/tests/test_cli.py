import json

import pytest
from click.testing import CliRunner

from agentctl.cli import main

QUERY = "Plot the step response for the system with transfer function num = [1, 3], den = [1, 4.16, 3.16]."


@pytest.fixture()
def runner():
    return CliRunner()


class TestAsk:
    def test_scripted_fixture_query(self, runner, fixtures_dir, tmp_path):
        trace_out = tmp_path / "trace.jsonl"
        result = runner.invoke(
            main,
            [
                "ask", QUERY,
                "--script", str(fixtures_dir / "fixtures.script"),
                "--corpus", str(fixtures_dir / "corpus"),
                "--out-dir", str(tmp_path),
                "--reply", "pdf",
                "--trace", str(trace_out),
            ],
        )
        assert result.exit_code == 0, result.output
        assert "0.9494" in result.output
        assert trace_out.exists()

    def test_echo_backend_without_script(self, runner, tmp_path):
        result = runner.invoke(
            main, ["ask", "hello there", "--out-dir", str(tmp_path)], input=""
        )
        assert result.exit_code == 0, result.output
        assert "hello there" in result.output


class TestEval:
    def test_text_report(self, runner, fixtures_dir):
        result = runner.invoke(
            main,
            ["eval", "--scenarios", str(fixtures_dir / "scenarios.json"), "--runs", "1"],
        )
        assert result.exit_code == 0, result.output
        assert "Overall Assessment" in result.output

    def test_csv_to_file(self, runner, fixtures_dir, tmp_path):
        out = tmp_path / "report.csv"
        result = runner.invoke(
            main,
            ["eval", "--scenarios", str(fixtures_dir / "scenarios.json"),
             "--runs", "1", "--report", "csv", "--out", str(out)],
        )
        assert result.exit_code == 0, result.output
        assert out.read_text().startswith("Task,M_E")


class TestPlot:
    @pytest.fixture()
    def trace_file(self, runner, fixtures_dir, tmp_path):
        trace_out = tmp_path / "trace.jsonl"
        result = runner.invoke(
            main,
            ["ask", QUERY, "--script", str(fixtures_dir / "fixtures.script"),
             "--out-dir", str(tmp_path), "--reply", "pdf", "--trace", str(trace_out)],
        )
        assert result.exit_code == 0, result.output
        return trace_out

    def test_json_export(self, runner, trace_file, tmp_path):
        out = tmp_path / "plot.json"
        result = runner.invoke(main, ["plot", "--trace", str(trace_file), "--out", str(out)])
        assert result.exit_code == 0, result.output
        payload = json.loads(out.read_text())
        assert payload["kind"] == "step"
        assert payload["axes"]["x_label"] == "time (s)"

    def test_svg_export(self, runner, trace_file, tmp_path):
        out = tmp_path / "plot.svg"
        result = runner.invoke(main, ["plot", "--trace", str(trace_file), "--out", str(out)])
        assert result.exit_code == 0, result.output
        assert b"<svg" in out.read_bytes()

    def test_trace_without_plots(self, runner, tmp_path):
        from agentctl.tracing import RunTrace

        empty = tmp_path / "empty.jsonl"
        empty.write_text(RunTrace().to_jsonl(), encoding="utf-8")
        result = runner.invoke(main, ["plot", "--trace", str(empty), "--out", str(tmp_path / "x.json")])
        assert result.exit_code != 0
        assert "no plot payloads" in result.output


class TestCorpus:
    def test_add_document(self, runner, tmp_path):
        doc = tmp_path / "notes.txt"
        doc.write_text("Transfer function facts.", encoding="utf-8")
        corpus_dir = tmp_path / "corpus"
        result = runner.invoke(
            main, ["corpus", "add", str(doc), "--corpus-dir", str(corpus_dir)]
        )
        assert result.exit_code == 0, result.output
        assert (corpus_dir / "notes.txt").exists()
        assert "chunks indexed" in result.output


class TestChat:
    def test_chat_session_exit(self, runner, fixtures_dir, tmp_path):
        result = runner.invoke(
            main,
            ["chat", "--script", str(fixtures_dir / "fixtures.script"),
             "--out-dir", str(tmp_path)],
            input="exit\n",
        )
        assert result.exit_code == 0, result.output
        assert "agentctl chat" in result.output
