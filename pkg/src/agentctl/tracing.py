"""Run traces: the ordered event record of one conversation.

A trace is a flat, append-only sequence of events.  The same event
stream is pushed to live subscribers (the service streams it as
server-sent events) and kept as the scoring substrate, so the stored
trace and the streamed turn are identical modulo transport framing.

Event kinds and their payload conventions:

==================  ====================================================
kind                payload keys
==================  ====================================================
agent_started       agent, input_digest
thought             agent, (text carries the thought)
tool_call           agent, tool, args_digest, ok
observation         agent, plus one of:
                      node_output {agent, output_digest, usage}
                      routing {decision_by, routed_next, conditional}
                      memory {kind: stored|recalled|miss, ok}
                      delivery {requested, delivered, ok}
                      debug {detected, fixed}
                      plan {system_type, objective, ordered_tools}
plot_payload        agent, plot {kind, series, axes}
question_to_user    agent, (text carries the question)
critic_verdict      agent, similarity, accepted, forced
final_answer        (text carries the answer)
error               agent, error_class, message
==================  ====================================================
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

EVENT_KINDS = (
    "agent_started",
    "thought",
    "tool_call",
    "observation",
    "plot_payload",
    "question_to_user",
    "critic_verdict",
    "final_answer",
    "error",
)


def digest(text: str) -> str:
    """Stable short digest of a text blob (whitespace-normalized)."""
    normalized = " ".join(str(text).split())
    return hashlib.sha256(normalized.encode("utf-8")).hexdigest()[:12]


@dataclass(frozen=True)
class TraceEvent:
    seq: int
    kind: str
    agent: str | None = None
    text: str = ""
    payload: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "seq": self.seq,
            "kind": self.kind,
            "agent": self.agent,
            "text": self.text,
            "payload": self.payload,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "TraceEvent":
        return cls(
            seq=int(data["seq"]),
            kind=data["kind"],
            agent=data.get("agent"),
            text=data.get("text", ""),
            payload=data.get("payload", {}),
        )


class RunTrace:
    """Append-only event record for a single conversation run."""

    def __init__(self, run_id: str = "run"):
        self.run_id = run_id
        self.events: list[TraceEvent] = []
        self.usage_totals = {
            "prompt_tokens": 0,
            "completion_tokens": 0,
            "wall_seconds": 0.0,
            "estimated_cost": 0.0,
        }
        self._listeners: list = []

    # -- recording ---------------------------------------------------

    def subscribe(self, listener) -> None:
        """Register a callable invoked with each event as it is appended."""
        self._listeners.append(listener)

    def append(self, kind: str, agent: str | None = None, text: str = "", **payload) -> TraceEvent:
        if kind not in EVENT_KINDS:
            raise ValueError(f"unknown trace event kind {kind!r}")
        event = TraceEvent(seq=len(self.events), kind=kind, agent=agent, text=text, payload=payload)
        self.events.append(event)
        usage = payload.get("node_output", {}).get("usage") if "node_output" in payload else None
        if usage:
            self.usage_totals["prompt_tokens"] += usage.get("prompt_tokens", 0)
            self.usage_totals["completion_tokens"] += usage.get("completion_tokens", 0)
            self.usage_totals["wall_seconds"] += usage.get("wall_seconds", 0.0)
            self.usage_totals["estimated_cost"] += usage.get("estimated_cost", 0.0)
        for listener in self._listeners:
            listener(event)
        return event

    # -- convenience recorders ----------------------------------------

    def agent_started(self, agent: str, input_text: str) -> TraceEvent:
        return self.append("agent_started", agent=agent, input_digest=digest(input_text))

    def thought(self, agent: str, text: str) -> TraceEvent:
        return self.append("thought", agent=agent, text=text)

    def tool_call(self, agent: str, tool: str, args: str, ok: bool) -> TraceEvent:
        return self.append("tool_call", agent=agent, tool=tool, args_digest=digest(args), ok=ok)

    def observation(self, agent: str, text: str, **payload) -> TraceEvent:
        return self.append("observation", agent=agent, text=text, **payload)

    def node_output(self, agent: str, text: str, usage: dict) -> TraceEvent:
        return self.append(
            "observation",
            agent=agent,
            text=text,
            node_output={"agent": agent, "output_digest": digest(text), "usage": usage},
        )

    def routing(self, decision_by: str, routed_next: str, conditional: bool) -> TraceEvent:
        return self.append(
            "observation",
            agent=decision_by,
            text=f"<Route to {routed_next}>",
            routing={
                "decision_by": decision_by,
                "routed_next": routed_next,
                "conditional": conditional,
            },
        )

    def plot(self, agent: str, plot_payload: dict) -> TraceEvent:
        return self.append("plot_payload", agent=agent, plot=plot_payload)

    def question(self, agent: str, prompt: str) -> TraceEvent:
        return self.append("question_to_user", agent=agent, text=prompt)

    def critic(self, agent: str, similarity: float, accepted: bool, forced: bool = False) -> TraceEvent:
        return self.append(
            "critic_verdict",
            agent=agent,
            similarity=round(float(similarity), 6),
            accepted=bool(accepted),
            forced=bool(forced),
        )

    def final(self, text: str) -> TraceEvent:
        return self.append("final_answer", text=text)

    def error(self, agent: str, error_class: str, message: str) -> TraceEvent:
        return self.append("error", agent=agent, error_class=error_class, message=message)

    # -- views ---------------------------------------------------------

    @property
    def node_path(self) -> list[str]:
        return [e.agent for e in self.events if e.kind == "agent_started"]

    @property
    def final_answer(self) -> str | None:
        for event in reversed(self.events):
            if event.kind == "final_answer":
                return event.text
        return None

    def __len__(self) -> int:
        return len(self.events)

    # -- serialization ---------------------------------------------------

    def to_jsonl(self) -> str:
        header = json.dumps(
            {"run_id": self.run_id, "usage_totals": self.usage_totals}, sort_keys=True
        )
        lines = [header]
        lines += [json.dumps(e.to_dict(), sort_keys=True) for e in self.events]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_jsonl(cls, text: str) -> "RunTrace":
        lines = [line for line in text.splitlines() if line.strip()]
        header = json.loads(lines[0])
        trace = cls(run_id=header.get("run_id", "run"))
        trace.usage_totals = header.get("usage_totals", trace.usage_totals)
        trace.events = [TraceEvent.from_dict(json.loads(line)) for line in lines[1:]]
        return trace
