"""Completion backends with usage metering.

Two interchangeable backends drive the agent graph: a scripted backend
replaying canned completions keyed by (node, inner step, query hash),
and an HTTP backend speaking the common chat-completions wire format.
Every call returns the completion text plus a UsageRecord so whole runs
can be costed from their traces.
"""

from __future__ import annotations

import hashlib
import json
import os
import time
from dataclasses import dataclass, field

import httpx

from .errors import BackendAuthError, BackendError
from .tracing import RunTrace

ENV_URL = "AGENTCTL_LLM_URL"
ENV_KEY = "AGENTCTL_LLM_KEY"
ENV_MODEL = "AGENTCTL_MODEL"

# Editable per-model prices, USD per million tokens (input, output).
DEFAULT_PRICES: dict[str, tuple[float, float]] = {
    "gpt-3.5-turbo": (0.50, 1.50),
    "gpt-4o": (2.50, 10.00),
    "deepseek-v3": (0.27, 1.10),
    "claude-3.7-sonnet": (3.00, 15.00),
    "scripted": (0.0, 0.0),
}


def load_price_table(path: str) -> dict[str, tuple[float, float]]:
    """Read a {"model": [input_per_1m, output_per_1m]} JSON file."""
    with open(path, encoding="utf-8") as fh:
        raw = json.load(fh)
    table = dict(DEFAULT_PRICES)
    for model, rates in raw.items():
        table[model] = (float(rates[0]), float(rates[1]))
    return table


def estimate_cost(
    model: str, prompt_tokens: int, completion_tokens: int, prices=None
) -> float:
    table = prices or DEFAULT_PRICES
    rate_in, rate_out = table.get(model, (0.0, 0.0))
    return prompt_tokens * rate_in / 1e6 + completion_tokens * rate_out / 1e6


@dataclass(frozen=True)
class UsageRecord:
    prompt_tokens: int = 0
    completion_tokens: int = 0
    wall_seconds: float = 0.0
    estimated_cost: float = 0.0

    def __add__(self, other: "UsageRecord") -> "UsageRecord":
        return UsageRecord(
            self.prompt_tokens + other.prompt_tokens,
            self.completion_tokens + other.completion_tokens,
            self.wall_seconds + other.wall_seconds,
            self.estimated_cost + other.estimated_cost,
        )

    def to_dict(self) -> dict:
        return {
            "prompt_tokens": self.prompt_tokens,
            "completion_tokens": self.completion_tokens,
            "wall_seconds": round(self.wall_seconds, 6),
            "estimated_cost": round(self.estimated_cost, 8),
        }


@dataclass
class CompletionRequest:
    system_text: str
    user_text: str
    model_name: str = "scripted"
    temperature: float = 0.0
    max_output_tokens: int = 1024
    # Routing context for the scripted backend; HTTP backends ignore it.
    node_name: str | None = None
    step_index: int | None = None
    query_text: str | None = None

    def __post_init__(self):
        if not self.system_text or not self.user_text:
            raise ValueError("system_text and user_text must be nonempty")
        if not 0.0 <= self.temperature <= 2.0:
            raise ValueError(f"temperature {self.temperature} outside [0, 2]")


def stable_hash(text: str) -> str:
    """Whitespace-insensitive 12-hex-digit fingerprint of a message."""
    normalized = " ".join(str(text).split())
    return hashlib.sha256(normalized.encode("utf-8")).hexdigest()[:12]


def _estimate_tokens(text: str) -> int:
    return max(1, len(text) // 4)


class ScriptedBackend:
    """Canned completions keyed by (query hash, node, inner-step index).

    Script files use a line-oriented format::

        query q1: Plot the step response ...

        [q1/Supervisor/0]
        Planner

        [q1/Controller/0]
        Thought: ...
        Action: tf
        Action Input: num = [1, 3], den = [1, -2, -3]

    ``*`` in place of a query id matches any query.  Lookups that miss
    fall back to echoing the latest user message as a final answer, so
    unscripted nodes terminate immediately.
    """

    model_name = "scripted"

    def __init__(self, script: dict[tuple[str, str, int], str] | None = None):
        self._script: dict[tuple[str, str, int], str] = {}
        for (query, node, step), text in (script or {}).items():
            key_hash = "*" if query == "*" else stable_hash(query)
            self._script[(key_hash, node, step)] = text

    @classmethod
    def from_file(cls, path: str) -> "ScriptedBackend":
        backend = cls()
        backend.load(path)
        return backend

    def load(self, path: str) -> None:
        queries: dict[str, str] = {}
        section: tuple[str, str, int] | None = None
        body: list[str] = []

        def flush():
            if section is not None:
                qid, node, step = section
                key = "*" if qid == "*" else stable_hash(queries[qid])
                self._script[(key, node, step)] = "\n".join(body).strip()

        with open(path, encoding="utf-8") as fh:
            for raw in fh:
                line = raw.rstrip("\n")
                if line.startswith("#") and section is None:
                    continue
                if line.startswith("query "):
                    flush()
                    section, body = None, []
                    name, _, text = line[len("query "):].partition(":")
                    queries[name.strip()] = text.strip()
                elif line.startswith("[") and line.rstrip().endswith("]"):
                    flush()
                    parts = line.strip()[1:-1].split("/")
                    if len(parts) != 3:
                        raise ValueError(f"bad script section header: {line!r}")
                    qid, node, step = parts
                    if qid != "*" and qid not in queries:
                        raise ValueError(f"section references unknown query id {qid!r}")
                    section, body = (qid, node, int(step)), []
                elif section is not None:
                    body.append(line)
        flush()

    def scripted_lookup(self, fingerprint: tuple[str, str, int], echo: str = "") -> str:
        """Resolve a (query hash, node, step) fingerprint to canned text."""
        qhash, node, step = fingerprint
        hit = self._script.get((qhash, node, step))
        if hit is None:
            hit = self._script.get(("*", node, step))
        if hit is None:
            return f"Final Answer: {echo}"
        return hit

    def complete(self, request: CompletionRequest) -> tuple[str, UsageRecord]:
        query = request.query_text or request.user_text
        fingerprint = (stable_hash(query), request.node_name or "", request.step_index or 0)
        text = self.scripted_lookup(fingerprint, echo=query)
        usage = UsageRecord(
            prompt_tokens=_estimate_tokens(request.system_text + request.user_text),
            completion_tokens=_estimate_tokens(text),
            wall_seconds=0.0,
            estimated_cost=0.0,
        )
        return text, usage


class HttpBackend:
    """Chat-completions client with bounded retry on transient failures."""

    def __init__(
        self,
        url: str | None = None,
        api_key: str | None = None,
        model: str | None = None,
        prices: dict[str, tuple[float, float]] | None = None,
        timeout: float = 60.0,
        max_retries: int = 2,
        backoff: float = 0.5,
        transport: httpx.BaseTransport | None = None,
    ):
        self.url = url or os.environ.get(ENV_URL, "")
        self.api_key = api_key or os.environ.get(ENV_KEY, "")
        self.model_name = model or os.environ.get(ENV_MODEL, "gpt-3.5-turbo")
        self.prices = prices or DEFAULT_PRICES
        self.timeout = timeout
        self.max_retries = max_retries
        self.backoff = backoff
        self._client = httpx.Client(timeout=timeout, transport=transport)

    def complete(self, request: CompletionRequest) -> tuple[str, UsageRecord]:
        if not self.url:
            raise BackendError("no completion endpoint configured (AGENTCTL_LLM_URL)")
        if not self.api_key:
            raise BackendAuthError("no API credential configured (AGENTCTL_LLM_KEY)")
        body = {
            "model": request.model_name if request.model_name != "scripted" else self.model_name,
            "messages": [
                {"role": "system", "content": request.system_text},
                {"role": "user", "content": request.user_text},
            ],
            "temperature": request.temperature,
            "max_tokens": request.max_output_tokens,
        }
        headers = {"Authorization": f"Bearer {self.api_key}"}
        start = time.monotonic()
        last_error: Exception | None = None
        for attempt in range(self.max_retries + 1):
            try:
                response = self._client.post(self.url, json=body, headers=headers)
            except httpx.TimeoutException as exc:
                last_error = exc
            except httpx.HTTPError as exc:
                raise BackendError(f"transport failure: {exc}") from exc
            else:
                if response.status_code in (401, 403):
                    raise BackendAuthError(f"authentication rejected ({response.status_code})")
                if response.status_code < 500:
                    if response.status_code >= 400:
                        raise BackendError(
                            f"backend returned {response.status_code}: {response.text[:200]}"
                        )
                    return self._parse(response, body["model"], start)
                last_error = BackendError(f"server error {response.status_code}")
            if attempt < self.max_retries:
                time.sleep(self.backoff * 2**attempt)
        raise BackendError(f"exhausted retries: {last_error}")

    def _parse(self, response: httpx.Response, model: str, start: float) -> tuple[str, UsageRecord]:
        try:
            data = response.json()
            text = data["choices"][0]["message"]["content"]
        except (KeyError, IndexError, ValueError) as exc:
            raise BackendError(f"malformed completion response: {exc}") from exc
        usage_raw = data.get("usage", {})
        prompt_tokens = int(usage_raw.get("prompt_tokens", 0))
        completion_tokens = int(usage_raw.get("completion_tokens", 0))
        usage = UsageRecord(
            prompt_tokens=prompt_tokens,
            completion_tokens=completion_tokens,
            wall_seconds=time.monotonic() - start,
            estimated_cost=estimate_cost(model, prompt_tokens, completion_tokens, self.prices),
        )
        return text, usage


def meter_run(trace: RunTrace) -> UsageRecord:
    """Aggregate the per-node usage recorded in a trace."""
    total = UsageRecord()
    for event in trace.events:
        usage = event.payload.get("node_output", {}).get("usage")
        if usage:
            total = total + UsageRecord(
                prompt_tokens=usage.get("prompt_tokens", 0),
                completion_tokens=usage.get("completion_tokens", 0),
                wall_seconds=usage.get("wall_seconds", 0.0),
                estimated_cost=usage.get("estimated_cost", 0.0),
            )
    return total
