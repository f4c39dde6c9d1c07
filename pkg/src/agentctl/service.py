"""Streaming HTTP service: sessions, turns, answers, traces, evaluation.

Turns stream their trace events as server-sent events while they run;
the same events are buffered per session, so reconnecting clients can
replay from any sequence number and ``GET /trace`` returns exactly what
was streamed.
"""

from __future__ import annotations

import json
import queue
import threading
import uuid
from dataclasses import dataclass, field
from pathlib import Path

from fastapi import FastAPI
from fastapi.responses import JSONResponse, PlainTextResponse, StreamingResponse
from pydantic import BaseModel

from .auxtools.humanio import PendingQuestionChannel
from .auxtools.memory import MemoryStore
from .auxtools.retrieval import CorpusIndex
from .backends import ScriptedBackend
from .config import AgentConfig
from .errors import RunAborted
from .graph import AgentGraph
from .harness import load_scenarios, render_report, run_all
from .tracing import RunTrace, TraceEvent

STREAM_IDLE_TIMEOUT = 600.0


class CreateSessionBody(BaseModel):
    overrides: dict = {}


class MessageBody(BaseModel):
    text: str


class AnswerBody(BaseModel):
    reply: str


class EvalBody(BaseModel):
    scenarios_path: str
    runs: int = 1
    backend: str = "scripted"
    report: str = "text"


@dataclass
class Session:
    session_id: str
    graph: AgentGraph
    channel: PendingQuestionChannel
    events: list[dict] = field(default_factory=list)
    subscribers: list[queue.Queue] = field(default_factory=list)
    turn_lock: threading.Lock = field(default_factory=threading.Lock)
    state_lock: threading.Lock = field(default_factory=threading.Lock)

    def record(self, event: TraceEvent) -> dict:
        with self.state_lock:
            data = event.to_dict()
            data["seq"] = len(self.events)
            data["session_id"] = self.session_id
            self.events.append(data)
            for sub in list(self.subscribers):
                sub.put(data)
            return data

    def subscribe(self, after: int) -> tuple[list[dict], queue.Queue]:
        with self.state_lock:
            backlog = [e for e in self.events if e["seq"] > after]
            sub: queue.Queue = queue.Queue()
            self.subscribers.append(sub)
            return backlog, sub

    def unsubscribe(self, sub: queue.Queue) -> None:
        with self.state_lock:
            if sub in self.subscribers:
                self.subscribers.remove(sub)


def _sse(data: dict) -> str:
    return f"id: {data['seq']}\ndata: {json.dumps(data, sort_keys=True)}\n\n"


def merged_trace(session: Session) -> RunTrace:
    trace = RunTrace(run_id=session.session_id)
    for data in session.events:
        trace.events.append(TraceEvent.from_dict({**data, "seq": len(trace.events)}))
    for turn in session.graph.turn_traces:
        for key, value in turn.usage_totals.items():
            trace.usage_totals[key] += value
    return trace


def create_app(
    backend=None,
    config: AgentConfig | None = None,
    corpus_index: CorpusIndex | None = None,
    memory_path: str | Path | None = None,
    output_dir: str | Path = ".",
) -> FastAPI:
    """Build the service around one shared completion backend."""
    app = FastAPI(title="agentctl")
    base_backend = backend if backend is not None else ScriptedBackend()
    base_config = config or AgentConfig()
    sessions: dict[str, Session] = {}
    sessions_lock = threading.Lock()

    def _error(status: int, code: str) -> JSONResponse:
        return JSONResponse(status_code=status, content={"error": code})

    def _get(session_id: str) -> Session | None:
        with sessions_lock:
            return sessions.get(session_id)

    @app.post("/sessions")
    def create_session(body: CreateSessionBody):
        try:
            session_config = base_config.with_overrides(body.overrides)
        except (ValueError, TypeError) as exc:
            return _error(400, f"InvalidOverride: {exc}")
        session_id = uuid.uuid4().hex[:12]
        channel = PendingQuestionChannel(timeout=session_config.human_timeout)
        graph = AgentGraph(
            base_backend,
            session_config,
            memory_store=MemoryStore(memory_path),
            corpus_index=corpus_index,
            reply_channel=channel,
            output_dir=Path(output_dir),
            session_id=session_id,
        )
        with sessions_lock:
            sessions[session_id] = Session(session_id=session_id, graph=graph, channel=channel)
        return {"session_id": session_id}

    @app.post("/sessions/{session_id}/messages")
    def post_message(session_id: str, body: MessageBody):
        session = _get(session_id)
        if session is None:
            return _error(404, "NotFound")
        if not body.text.strip():
            return _error(400, "EmptyMessage")
        if not session.turn_lock.acquire(blocking=False):
            return _error(409, "Busy")

        live: queue.Queue = queue.Queue()

        def listener(event: TraceEvent) -> None:
            live.put(session.record(event))

        def worker() -> None:
            try:
                session.graph.run_conversation(body.text, listener=listener)
            except RunAborted:
                pass
            except Exception as exc:  # surfaced to the stream, never raised
                data = {
                    "seq": len(session.events),
                    "kind": "error",
                    "agent": None,
                    "text": "",
                    "payload": {"error_class": type(exc).__name__, "message": str(exc)},
                    "session_id": session.session_id,
                }
                with session.state_lock:
                    session.events.append(data)
                live.put(data)
            finally:
                live.put(None)
                session.turn_lock.release()

        threading.Thread(target=worker, daemon=True).start()

        def stream():
            while True:
                data = live.get()
                if data is None:
                    break
                yield _sse(data)

        return StreamingResponse(stream(), media_type="text/event-stream")

    @app.post("/sessions/{session_id}/answers")
    def answer_question(session_id: str, body: AnswerBody):
        session = _get(session_id)
        if session is None:
            return _error(404, "NotFound")
        if not session.channel.answer(body.reply):
            return _error(409, "NoQuestion")
        return {"ok": True}

    @app.get("/sessions/{session_id}/events")
    def stream_events(session_id: str, after: int = -1, wait: float = 25.0):
        """Replay events newer than ``after``, then tail live events.

        The live tail closes after ``wait`` idle seconds; clients resume
        by reconnecting with the last sequence number they saw (the
        standard server-sent-events reconnect pattern).  ``wait=0``
        returns the backlog only.
        """
        session = _get(session_id)
        if session is None:
            return _error(404, "NotFound")
        backlog, sub = session.subscribe(after)
        idle_cap = max(0.0, min(wait, STREAM_IDLE_TIMEOUT))

        def stream():
            try:
                for data in backlog:
                    yield _sse(data)
                idle = 0.0
                while idle < idle_cap:
                    try:
                        data = sub.get(timeout=0.5)
                    except queue.Empty:
                        idle += 0.5
                        yield ": keepalive\n\n"
                        continue
                    idle = 0.0
                    yield _sse(data)
            finally:
                session.unsubscribe(sub)

        return StreamingResponse(stream(), media_type="text/event-stream")

    @app.get("/sessions/{session_id}/trace")
    def get_trace(session_id: str):
        session = _get(session_id)
        if session is None:
            return _error(404, "NotFound")
        return PlainTextResponse(merged_trace(session).to_jsonl())

    @app.get("/sessions/{session_id}/question")
    def get_question(session_id: str):
        session = _get(session_id)
        if session is None:
            return _error(404, "NotFound")
        return {"pending": session.channel.pending}

    @app.post("/eval")
    def run_eval(body: EvalBody):
        try:
            scenario_set = load_scenarios(body.scenarios_path)
            reports = run_all(scenario_set, body.runs, body.backend, base_config)
            artifact = render_report(reports, body.report)
        except Exception as exc:
            return _error(400, f"{type(exc).__name__}: {exc}")
        return {"artifact": artifact}

    return app
