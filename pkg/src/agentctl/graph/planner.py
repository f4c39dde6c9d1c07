"""Table-driven query planning for the Controller's tool sequence."""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..backends import CompletionRequest
from ..errors import PlanFailure

# Keyword table, first match wins; specific objectives come before the
# generic representation/pole vocabulary they tend to contain.
_OBJECTIVE_KEYWORDS: tuple[tuple[str, tuple[str, ...]], ...] = (
    ("acker", ("ackermann", "acker")),
    ("place", ("place",)),
    ("lqr", ("lqr", "linear quadratic")),
    ("impulse_response", ("impulse",)),
    ("step_response", ("step",)),
    ("forced_response", ("forced",)),
    ("bode", ("bode",)),
    ("nyquist", ("nyquist",)),
    ("root_locus", ("root locus", "root-locus", "rlocus")),
    ("pzmap", ("pole-zero map", "pole zero map", "pzmap", "pole-zero")),
    ("stability", ("stability", "stable", "unstable")),
    ("feedback", ("feedback",)),
    ("dcgain", ("dc gain", "dcgain", "steady-state gain")),
    ("ctrb", ("controllability", "ctrb", "controllable")),
    ("tf2ss", ("tf2ss", "to state space", "to state-space", "into state space")),
    ("ss2tf", ("ss2tf", "to transfer function", "into a transfer function")),
    ("zeros", ("zeros", "zero")),
    ("poles", ("poles", "pole")),
    ("ss", ("state space", "state-space")),
    ("tf", ("transfer function",)),
)

OBJECTIVES = tuple(obj for obj, _ in _OBJECTIVE_KEYWORDS)

# When the system arrives as raw design matrices, placement and LQR run
# directly on them; analysis objectives build the system object first,
# and time-domain simulation of a state-space system goes through its
# transfer function.
_DIRECT_ON_MATRICES = {"place", "acker", "lqr", "ctrb"}
_TIME_DOMAIN = {"step_response", "impulse_response", "forced_response"}


@dataclass(frozen=True)
class Plan:
    system_type: str  # "TF" | "SS"
    objective: str
    ordered_tools: tuple[str, ...]

    def describe(self) -> str:
        tools = ", ".join(f"'control.{t}'" for t in self.ordered_tools)
        return (
            f"System Type: {self.system_type}, Objective: {self.objective}, "
            f"Ordered Tools: [{tools}]."
        )


def detect_system_type(query: str) -> str:
    q = query.lower()
    if re.search(r"\bnum\b|\bden\b|transfer function", q):
        return "TF"
    if re.search(r"\bss\b|state.space|\ba\s*=\s*\[|\bb\s*=\s*\[", q):
        return "SS"
    return "TF"


def detect_objective(query: str) -> str | None:
    q = query.lower()
    for objective, keywords in _OBJECTIVE_KEYWORDS:
        if any(kw in q for kw in keywords):
            return objective
    return None


def tool_chain(system_type: str, objective: str) -> tuple[str, ...]:
    if objective in ("tf", "ss"):
        return (objective,)
    if objective == "tf2ss":
        return ("tf", "tf2ss") if system_type == "TF" else ("tf2ss",)
    if objective == "ss2tf":
        return ("ss2tf",)
    if objective in _DIRECT_ON_MATRICES:
        return ("tf", "tf2ss", objective) if system_type == "TF" else (objective,)
    if objective == "feedback":
        return ("tf", "feedback") if system_type == "TF" else ("feedback",)
    if system_type == "SS" and objective in _TIME_DOMAIN:
        return ("ss2tf", objective)
    constructor = "tf" if system_type == "TF" else "ss"
    return (constructor, objective)


def planner_tool(query: str, backend=None, query_text: str | None = None) -> Plan:
    """Derive (system type, objective, ordered tools) from a query.

    Keyword classification handles the standard vocabulary; anything
    unmatched falls back to one backend completion constrained to the
    objective list.
    """
    if not query.strip():
        raise PlanFailure("empty planning query")
    system_type = detect_system_type(query)
    objective = detect_objective(query)
    if objective is None and backend is not None:
        listing = ", ".join(OBJECTIVES)
        request = CompletionRequest(
            system_text=(
                "You classify control-engineering queries. Reply with exactly one "
                f"objective from this list: {listing}."
            ),
            user_text=query,
            node_name="planner_tool",
            step_index=0,
            query_text=query_text or query,
        )
        text, _ = backend.complete(request)
        lowered = text.lower()
        for candidate in OBJECTIVES:
            if candidate in lowered:
                objective = candidate
                break
    if objective is None:
        raise PlanFailure(f"no objective recognized in query: {query[:80]!r}")
    return Plan(
        system_type=system_type,
        objective=objective,
        ordered_tools=tool_chain(system_type, objective),
    )
