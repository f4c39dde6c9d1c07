"""The ten run-trace evaluation metrics.

Eight per-agent scores (efficiency, routing, arrangement, planning,
judgement, self-correction, footprint, delivery) average an indicator
over the relevant events within each run, then average over runs; runs
in which the relevant agent never fired are excluded from that metric.
Completion scores the final answer per run, and the total score is the
plain mean of the eight per-agent scores.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import EmptyEvaluation, MetricUndefined
from .tracing import RunTrace

METRIC_KINDS = ("E", "R", "A", "P", "J", "S", "F", "D")

METRIC_NAMES = {
    "E": "efficiency",
    "R": "routing",
    "A": "arrangement",
    "P": "planning",
    "J": "judgement",
    "S": "self_correcting",
    "F": "footprint",
    "D": "delivery",
    "C": "completion",
    "T": "total",
}

_FLOAT = re.compile(r"-?\d+(?:\.\d+)?(?:[eE][+-]?\d+)?")


@dataclass(frozen=True)
class AnswerMatcher:
    """Expected-answer check: substring, regex, or numeric-with-tolerance."""

    kind: str  # substring | regex | numeric
    value: str | float
    tolerance: float = 0.0

    def __post_init__(self):
        if self.kind not in ("substring", "regex", "numeric"):
            raise ValueError(f"unknown matcher kind {self.kind!r}")
        if self.kind == "regex":
            re.compile(str(self.value))

    def matches(self, text: str | None) -> bool:
        if text is None:
            return False
        if self.kind == "substring":
            return str(self.value) in text
        if self.kind == "regex":
            return re.search(str(self.value), text) is not None
        target = float(self.value)
        for token in _FLOAT.findall(text):
            if abs(float(token) - target) <= self.tolerance:
                return True
        return False


@dataclass(frozen=True)
class GroundTruth:
    """Per-run annotations the indicators are scored against."""

    answer: AnswerMatcher
    routes: tuple[str, ...] = ()
    agent_sequence: tuple[str, ...] = ()
    plan: tuple[str, ...] = ()
    delivery: str | None = None
    critic_labels: tuple[bool, ...] = ()


@dataclass
class MetricsReport:
    scores: dict[str, float] = field(default_factory=dict)
    tau: int = 0
    wall_seconds: float = 0.0
    cost: float = 0.0

    def to_dict(self) -> dict:
        out = {f"M_{k}": self.scores.get(k) for k in (*METRIC_KINDS, "C", "T")}
        out.update(tau=self.tau, wall_seconds=self.wall_seconds, cost=self.cost)
        return out


# -- event extraction ---------------------------------------------------------


def controller_outputs(trace: RunTrace) -> list[str]:
    return [
        e.text
        for e in trace.events
        if e.kind == "observation" and "node_output" in e.payload and e.agent == "Controller"
    ]


def routing_decisions(trace: RunTrace) -> list[tuple[str, str]]:
    out = []
    for e in trace.events:
        routing = e.payload.get("routing")
        if routing and routing.get("conditional"):
            out.append((routing["decision_by"], routing["routed_next"]))
    return out


def executed_agents(trace: RunTrace) -> list[str]:
    """Agents in invocation order; the Supervisor is an LLM, not an agent."""
    return [a for a in trace.node_path if a != "Supervisor"]


def planned_tool_sequences(trace: RunTrace) -> list[tuple[str, ...]]:
    return [
        tuple(e.payload["plan"]["ordered_tools"])
        for e in trace.events
        if e.kind == "observation" and "plan" in e.payload
    ]


def critic_judgements(trace: RunTrace) -> list[bool]:
    return [e.payload["accepted"] for e in trace.events if e.kind == "critic_verdict"]


def debug_records(trace: RunTrace) -> list[dict]:
    return [e.payload["debug"] for e in trace.events if "debug" in e.payload]


def memory_events(trace: RunTrace) -> list[dict]:
    return [e.payload["memory"] for e in trace.events if "memory" in e.payload]


def delivery_events(trace: RunTrace) -> list[dict]:
    return [e.payload["delivery"] for e in trace.events if "delivery" in e.payload]


# -- scoring -------------------------------------------------------------------


def _run_indicators(kind: str, trace: RunTrace, truth: GroundTruth) -> list[float]:
    if kind == "E":
        return [float(truth.answer.matches(text)) for text in controller_outputs(trace)]
    if kind == "R":
        decisions = routing_decisions(trace)
        out = []
        for q, (_, routed) in enumerate(decisions):
            expected = truth.routes[q] if q < len(truth.routes) else None
            out.append(float(routed == expected))
        return out
    if kind == "A":
        executed = executed_agents(trace)
        out = []
        for q, agent in enumerate(executed):
            arranged = truth.agent_sequence[q] if q < len(truth.agent_sequence) else None
            out.append(float(agent == arranged))
        return out
    if kind == "P":
        return [
            float(tuple(plan) == tuple(truth.plan))
            for plan in planned_tool_sequences(trace)
        ]
    if kind == "J":
        judgements = critic_judgements(trace)
        out = []
        for n, accepted in enumerate(judgements):
            label = truth.critic_labels[n] if n < len(truth.critic_labels) else True
            out.append(float(accepted == label))
        return out
    if kind == "S":
        return [
            0.5 * float(rec.get("detected", False)) + 0.5 * float(rec.get("fixed", False))
            for rec in debug_records(trace)
        ]
    if kind == "F":
        return [
            float(ev.get("ok", False) and ev.get("kind") in ("stored", "recalled"))
            for ev in memory_events(trace)
        ]
    if kind == "D":
        out = []
        for ev in delivery_events(trace):
            ok = bool(ev.get("ok")) and ev.get("delivered") == ev.get("requested")
            if truth.delivery is not None:
                ok = ok and ev.get("delivered") == truth.delivery
            out.append(float(ok))
        return out
    raise ValueError(f"unknown metric kind {kind!r}")


def score_metric(kind: str, traces, ground_truths) -> float:
    """Mean per-run indicator average for one of the eight agent metrics."""
    if len(traces) != len(ground_truths):
        raise ValueError("traces and ground truths must align")
    if not traces:
        raise EmptyEvaluation("no runs to evaluate")
    run_scores = []
    for trace, truth in zip(traces, ground_truths):
        indicators = _run_indicators(kind, trace, truth)
        if indicators:
            run_scores.append(sum(indicators) / len(indicators))
    if not run_scores:
        raise MetricUndefined(kind)
    return sum(run_scores) / len(run_scores)


def score_completion(traces, ground_truths) -> float:
    """Fraction of runs whose final answer matches its expected matcher."""
    if len(traces) != len(ground_truths):
        raise ValueError("traces and ground truths must align")
    if not traces:
        raise EmptyEvaluation("no runs to evaluate")
    hits = [
        float(truth.answer.matches(trace.final_answer))
        for trace, truth in zip(traces, ground_truths)
    ]
    return sum(hits) / len(hits)


def total_score(scores: dict[str, float]) -> float:
    """Mean of the eight agent scores (completion intentionally excluded)."""
    missing = [k for k in METRIC_KINDS if k not in scores or scores[k] is None]
    if missing:
        raise MetricUndefined(",".join(missing))
    return sum(scores[k] for k in METRIC_KINDS) / len(METRIC_KINDS)


def compute_report(
    traces, ground_truths, wall_seconds: float = 0.0, cost: float = 0.0
) -> MetricsReport:
    """All ten scores over a run set; undefined agent metrics propagate."""
    scores: dict[str, float] = {}
    for kind in METRIC_KINDS:
        scores[kind] = score_metric(kind, traces, ground_truths)
    scores["C"] = score_completion(traces, ground_truths)
    scores["T"] = total_score(scores)
    return MetricsReport(
        scores=scores, tau=len(traces), wall_seconds=wall_seconds, cost=cost
    )
