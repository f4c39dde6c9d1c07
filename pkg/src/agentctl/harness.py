"""Scenario loading, repeated-run evaluation, and report rendering."""

from __future__ import annotations

import csv
import io
import json
import tempfile
import time
from dataclasses import dataclass, field
from pathlib import Path

from .auxtools.humanio import ScriptedChannel
from .auxtools.memory import MemoryStore
from .auxtools.retrieval import CorpusIndex, ingest_corpus
from .backends import HttpBackend, ScriptedBackend
from .config import AgentConfig
from .errors import AgentError, RunAborted, ScenarioError
from .graph import AgentGraph
from .metrics import AnswerMatcher, GroundTruth, MetricsReport, compute_report
from .plotting import bar_payload
from .tracing import RunTrace

CATEGORIES = (
    "SystemRepresentation",
    "ControlAnalysis",
    "ControllerDesign",
    "TimeDomainSimulation",
)

CATEGORY_LABELS = {
    "SystemRepresentation": "System Representation",
    "ControlAnalysis": "Control Analysis",
    "ControllerDesign": "Controller Design",
    "TimeDomainSimulation": "Time-domain Simulation",
    "Overall": "Overall Assessment",
}

SCORE_COLUMNS = ("M_E", "M_R", "M_A", "M_P", "M_J", "M_S", "M_F", "M_D", "M_C", "M_T")


@dataclass(frozen=True)
class Scenario:
    scenario_id: str
    category: str
    query: str
    ground_truth: GroundTruth
    replies: tuple[str, ...] = ()
    backend: str = "scripted"
    config_overrides: dict = field(default_factory=dict)


@dataclass
class ScenarioSet:
    scenarios: list[Scenario]
    script_path: Path | None = None
    corpus_path: Path | None = None

    def by_category(self, category: str) -> list[Scenario]:
        return [s for s in self.scenarios if s.category == category]


@dataclass
class CategoryReport:
    category: str
    report: MetricsReport

    @property
    def label(self) -> str:
        return CATEGORY_LABELS.get(self.category, self.category)


# -- scenario parsing -----------------------------------------------------------


def _require(raw: dict, key: str, path: str):
    if key not in raw:
        raise ScenarioError("missing required field", field=f"{path}.{key}")
    return raw[key]


def _parse_matcher(raw: dict, path: str) -> AnswerMatcher:
    kind = _require(raw, "kind", path)
    value = _require(raw, "value", path)
    try:
        return AnswerMatcher(kind=kind, value=value, tolerance=float(raw.get("tolerance", 0.0)))
    except ValueError as exc:
        raise ScenarioError(str(exc), field=path) from exc


def _parse_ground_truth(raw: dict, path: str) -> GroundTruth:
    answer = _parse_matcher(_require(raw, "answer", path), f"{path}.answer")
    return GroundTruth(
        answer=answer,
        routes=tuple(raw.get("routes", ())),
        agent_sequence=tuple(raw.get("agent_sequence", ())),
        plan=tuple(raw.get("plan", ())),
        delivery=raw.get("delivery"),
        critic_labels=tuple(bool(v) for v in raw.get("critic_labels", ())),
    )


def _parse_scenario(raw: dict, path: str) -> Scenario:
    scenario_id = _require(raw, "id", path)
    category = _require(raw, "category", path)
    if category not in CATEGORIES:
        raise ScenarioError(
            f"unknown category {category!r}; expected one of {CATEGORIES}",
            field=f"{path}.category",
        )
    query = _require(raw, "query", path)
    if not str(query).strip():
        raise ScenarioError("query must be nonempty", field=f"{path}.query")
    return Scenario(
        scenario_id=str(scenario_id),
        category=category,
        query=str(query),
        ground_truth=_parse_ground_truth(_require(raw, "ground_truth", path), f"{path}.ground_truth"),
        replies=tuple(raw.get("replies", ())),
        backend=raw.get("backend", "scripted"),
        config_overrides=dict(raw.get("config", {})),
    )


def load_scenarios(path: str | Path) -> ScenarioSet:
    """Parse and validate a scenario JSON file."""
    path = Path(path)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ScenarioError(f"cannot read scenario file: {exc}", field=str(path)) from exc
    if not isinstance(raw, dict) or not raw.get("scenarios"):
        raise ScenarioError("file holds no scenarios", field="scenarios")
    scenarios = [
        _parse_scenario(entry, f"scenarios[{i}]") for i, entry in enumerate(raw["scenarios"])
    ]
    seen: set[str] = set()
    for i, scenario in enumerate(scenarios):
        if scenario.scenario_id in seen:
            raise ScenarioError(
                f"duplicate scenario id {scenario.scenario_id!r}", field=f"scenarios[{i}].id"
            )
        seen.add(scenario.scenario_id)
    base = path.parent
    script = raw.get("script")
    corpus = raw.get("corpus")
    return ScenarioSet(
        scenarios=scenarios,
        script_path=(base / script) if script else None,
        corpus_path=(base / corpus) if corpus else None,
    )


# -- execution --------------------------------------------------------------------


def make_backend(kind: str, scenario_set: ScenarioSet):
    if kind == "scripted":
        if scenario_set.script_path is None:
            raise ScenarioError("scenario set names no script file", field="script")
        return ScriptedBackend.from_file(str(scenario_set.script_path))
    if kind == "http":
        return HttpBackend()
    raise ScenarioError(f"unknown backend {kind!r}", field="backend")


def run_scenario(
    scenario: Scenario,
    backend,
    runs: int,
    corpus_index: CorpusIndex | None,
    work_dir: Path,
    base_config: AgentConfig | None = None,
):
    """Execute one scenario ``runs`` times; failures become failed indicators."""
    config = (base_config or AgentConfig()).with_overrides(scenario.config_overrides)
    traces: list[RunTrace] = []
    wall = 0.0
    for rep in range(runs):
        graph = AgentGraph(
            backend,
            config,
            memory_store=MemoryStore(),
            corpus_index=corpus_index,
            reply_channel=ScriptedChannel(scenario.replies),
            output_dir=work_dir,
            session_id=f"{scenario.scenario_id}-r{rep}",
        )
        started = time.monotonic()
        try:
            _, trace = graph.run_conversation(
                scenario.query, run_id=f"{scenario.scenario_id}-r{rep}"
            )
        except RunAborted as exc:
            trace = exc.trace or RunTrace(run_id=f"{scenario.scenario_id}-r{rep}")
        except AgentError as exc:
            trace = graph.turn_traces[-1] if graph.turn_traces else RunTrace()
            trace.error("Supervisor", type(exc).__name__, str(exc))
        wall += time.monotonic() - started
        traces.append(trace)
    return traces, wall


def run_category(
    scenarios: list[Scenario],
    runs: int,
    backend,
    corpus_index: CorpusIndex | None = None,
    category: str = "Overall",
    base_config: AgentConfig | None = None,
) -> CategoryReport:
    """Repeated-run evaluation of one scenario group."""
    if runs < 1:
        raise ValueError("runs must be >= 1")
    traces: list[RunTrace] = []
    truths: list[GroundTruth] = []
    wall_total = 0.0
    with tempfile.TemporaryDirectory(prefix="agentctl-eval-") as tmp:
        for scenario in scenarios:
            scenario_traces, wall = run_scenario(
                scenario, backend, runs, corpus_index, Path(tmp), base_config
            )
            traces.extend(scenario_traces)
            truths.extend([scenario.ground_truth] * len(scenario_traces))
            wall_total += wall
    n = len(traces)
    cost_total = sum(t.usage_totals["estimated_cost"] for t in traces)
    report = compute_report(
        traces,
        truths,
        wall_seconds=wall_total / n if n else 0.0,
        cost=cost_total / n if n else 0.0,
    )
    return CategoryReport(category=category, report=report)


def run_all(
    scenario_set: ScenarioSet,
    runs: int,
    backend_kind: str = "scripted",
    base_config: AgentConfig | None = None,
) -> list[CategoryReport]:
    """Per-category reports in fixed order, plus the overall aggregate."""
    backend = make_backend(backend_kind, scenario_set)
    corpus_index = (
        ingest_corpus([scenario_set.corpus_path]) if scenario_set.corpus_path else None
    )
    reports = []
    for category in CATEGORIES:
        group = scenario_set.by_category(category)
        if group:
            reports.append(
                run_category(group, runs, backend, corpus_index, category, base_config)
            )
    reports.append(
        run_category(
            scenario_set.scenarios, runs, backend, corpus_index, "Overall", base_config
        )
    )
    return reports


# -- rendering --------------------------------------------------------------------


def _report_rows(reports: list[CategoryReport]) -> list[list]:
    rows = []
    for cr in reports:
        scores = cr.report.scores
        row = [cr.label]
        row += [round(scores[k.split("_")[1]], 2) for k in SCORE_COLUMNS]
        row += [round(cr.report.wall_seconds, 2), round(cr.report.cost, 4)]
        rows.append(row)
    return rows


def render_report(reports: list[CategoryReport], fmt: str = "text") -> str:
    """Render category reports as an aligned table, CSV, or chart payload."""
    header = ["Task", *SCORE_COLUMNS, "Time (s)", "Money ($)"]
    rows = _report_rows(reports)
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(header)
        writer.writerows(rows)
        return buf.getvalue()
    if fmt == "chartdata":
        payload = bar_payload(
            row_labels=[row[0] for row in rows],
            column_labels=SCORE_COLUMNS,
            values=[row[1 : 1 + len(SCORE_COLUMNS)] for row in rows],
        )
        return json.dumps(payload, indent=2, sort_keys=True)
    if fmt != "text":
        raise ValueError(f"unknown report format {fmt!r}")
    widths = [
        max(len(str(header[c])), *(len(str(row[c])) for row in rows))
        for c in range(len(header))
    ]
    lines = [
        "  ".join(str(header[c]).ljust(widths[c]) for c in range(len(header))),
        "  ".join("-" * widths[c] for c in range(len(header))),
    ]
    for row in rows:
        lines.append("  ".join(str(row[c]).ljust(widths[c]) for c in range(len(header))))
    return "\n".join(lines)
