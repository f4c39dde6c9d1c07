"""The supervisor-routed agent network and its main conversation loop.

Ten nodes cooperate on each query: a Supervisor routes conditionally to
support agents (Memory, Retriever, Researcher, Reasoner) or straight to
the Planner; Planner, Controller, Critic, Memory, and Communicator then
follow the fixed pipeline, with the Critic able to bounce a rejected
answer back to the Controller and the Debugger consulted inline when a
tool call fails.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from ..backends import CompletionRequest, UsageRecord
from ..config import AgentConfig
from ..errors import NodeStalled, RunAborted, UnknownTool
from ..tracing import RunTrace
from .parsing import FinalAnswer, ParseFailure, parse_react
from .prompts import load_template, render_node_prompt, render_prompt
from .state import ConversationState, Message
from .tools import (
    TOOLS,
    ToolResult,
    ToolSession,
    dispatch_tool,
    resolve_tool_id,
    tool_listing,
)

END = "END"

AGENT_ORDER = (
    "Supervisor",
    "Planner",
    "Retriever",
    "Researcher",
    "Reasoner",
    "Controller",
    "Critic",
    "Debugger",
    "Memory",
    "Communicator",
)

SUPERVISOR_SUCCESSORS = ("Memory", "Planner", "Retriever", "Researcher", "Reasoner")

CONTROLLER_TOOLS = tuple(
    tool_id
    for tool_id, spec in TOOLS.items()
    if spec.category in ("representation", "analysis", "design", "simulation")
)


@dataclass(frozen=True)
class AgentNodeSpec:
    name: str
    tool_ids: tuple[str, ...]
    edge_kind: str  # "deterministic" | "conditional"
    successors: tuple[str, ...]


NODE_SPECS: dict[str, AgentNodeSpec] = {
    "Supervisor": AgentNodeSpec("Supervisor", (), "conditional", SUPERVISOR_SUCCESSORS),
    "Retriever": AgentNodeSpec("Retriever", ("retriever_tool",), "deterministic", ("Planner",)),
    "Researcher": AgentNodeSpec("Researcher", ("search_tool",), "deterministic", ("Planner",)),
    "Reasoner": AgentNodeSpec("Reasoner", ("cot_tool", "tot_tool"), "deterministic", ("Planner",)),
    "Planner": AgentNodeSpec("Planner", ("planner_tool",), "deterministic", ("Controller",)),
    "Controller": AgentNodeSpec("Controller", CONTROLLER_TOOLS, "deterministic", ("Critic",)),
    "Critic": AgentNodeSpec("Critic", ("critic_tool",), "conditional", ("Memory", "Controller")),
    "Debugger": AgentNodeSpec("Debugger", ("debug_tool",), "deterministic", ()),
    "Memory": AgentNodeSpec(
        "Memory", ("storage_memory_tool", "recall_memory_tool"), "conditional",
        ("Communicator", "Supervisor"),
    ),
    "Communicator": AgentNodeSpec(
        "Communicator",
        ("human_tool", "text_to_pdf_tool", "text_to_speech_tool", "translate_tool"),
        "deterministic",
        (END,),
    ),
}

_TEMPLATE_SLOT_TOOLS: dict[str, str] = {
    "Controller": "tools",
    "Planner": "planner_tools",
    "Retriever": "retriever_tools",
    "Reasoner": "reasoning_tools",
    "Researcher": "researcher_tools",
    "Critic": "critic_tool",
    "Debugger": "debugger_tools",
    "Memory": "memory_tools",
    "Communicator": "communicator_tools",
}


@dataclass
class NodeRun:
    output: str
    results: list[ToolResult]
    stalled: bool = False


class AgentGraph:
    """One conversational session over the agent network."""

    _session_counter = itertools.count(1)

    def __init__(
        self,
        backend,
        config: AgentConfig | None = None,
        *,
        memory_store=None,
        corpus_index=None,
        search_client=None,
        reply_channel=None,
        output_dir=".",
        session_id: str | None = None,
    ):
        from pathlib import Path

        from ..auxtools.memory import MemoryStore

        self.backend = backend
        self.config = config or AgentConfig()
        self.session_id = session_id or f"session-{next(self._session_counter)}"
        self.state = ConversationState(session_id=self.session_id)
        self.session = ToolSession(
            trace=None,
            backend=backend,
            config=self.config,
            memory_store=memory_store if memory_store is not None else MemoryStore(),
            corpus_index=corpus_index,
            search_client=search_client,
            reply_channel=reply_channel,
            output_dir=Path(output_dir),
            state=self.state,
        )
        self.turn_traces: list[RunTrace] = []
        self._turn_counter = itertools.count(1)

    # -- public API ----------------------------------------------------------

    def run_conversation(self, query: str, run_id: str | None = None, listener=None):
        """Process one user query through the network; returns (answer, trace)."""
        if not query.strip():
            raise ValueError("query must be nonempty")
        trace = RunTrace(run_id or f"{self.session_id}-turn{next(self._turn_counter)}")
        if listener is not None:
            trace.subscribe(listener)
        self.turn_traces.append(trace)
        self.session.trace = trace
        self.state.add(Message(role="user", content=query))

        revisions = 0
        feedback: str | None = None
        node = "Supervisor"
        prev: str | None = None
        final_text = ""
        self.state.step_count = 0

        while node != END:
            if self.state.step_count >= self.config.max_steps:
                trace.error(node, "RunAborted", f"exceeded max_steps={self.config.max_steps}")
                raise RunAborted(
                    f"conversation exceeded {self.config.max_steps} steps", trace=trace
                )
            self.state.step_count += 1
            self.state.current_node = node

            if node == "Supervisor":
                next_node = self._supervisor_route(trace)
                prev, node = node, next_node
                continue

            run = self._run_node(node, self._node_input(node, feedback), trace)
            self.state.add(Message(role="agent", agent_name=node, content=run.output or "[no output]"))

            if node == "Controller":
                self.session.candidate_answer = run.output
                feedback = None
                next_node = "Critic"
                trace.routing(node, next_node, conditional=False)
            elif node == "Critic":
                verdicts = [r.verdict for r in run.results if r.verdict is not None]
                accepted = verdicts[-1].accepted if verdicts else True
                if accepted:
                    next_node = "Memory"
                elif revisions < self.config.max_revisions:
                    revisions += 1
                    feedback = run.output or "The answer was rejected; revise it."
                    self.state.add(
                        Message(role="agent", agent_name="Critic",
                                content=f"[revision {revisions}] {feedback}")
                    )
                    next_node = "Controller"
                else:
                    trace.observation(
                        "Critic",
                        "Maximum revisions reached; answer force-accepted.",
                        forced_accept={"revisions": revisions},
                    )
                    next_node = "Memory"
                trace.routing(node, next_node, conditional=True)
            elif node == "Memory":
                recall_mode = prev == "Supervisor"
                memory_events = [r.memory_event for r in run.results if r.memory_event]
                recalled = any(
                    ev["kind"] == "recalled" and ev["ok"] for ev in memory_events
                )
                if recall_mode:
                    if recalled:
                        self.session.candidate_answer = run.output
                        next_node = "Communicator"
                    else:
                        self.state.add(
                            Message(role="agent", agent_name="Memory",
                                    content="[memory miss] escalating to the supervisor")
                        )
                        next_node = "Supervisor"
                    trace.routing(node, next_node, conditional=True)
                else:
                    next_node = "Communicator"
                    trace.routing(node, next_node, conditional=False)
            elif node == "Communicator":
                if not any(r.delivery for r in run.results):
                    requested = self.session.last_requested_format or "text"
                    trace.observation(
                        "Communicator",
                        f"Answer delivered as plain text.",
                        delivery={"requested": requested, "delivered": "text",
                                  "ok": requested == "text"},
                    )
                final_text = run.output
                trace.final(final_text)
                next_node = END
            else:  # Retriever, Researcher, Reasoner, Planner
                next_node = NODE_SPECS[node].successors[0]
                trace.routing(node, next_node, conditional=False)

            prev, node = node, next_node

        return final_text, trace

    # -- node execution --------------------------------------------------------

    def _node_input(self, node: str, feedback: str | None) -> str:
        query = self.state.latest_user_message()
        if node == "Controller":
            plan = self.session.current_plan
            parts = [query]
            if plan is not None:
                parts.append(f"Execution plan: {plan.describe()}")
            if feedback:
                parts.append(f"Critic feedback: {feedback}")
            return "\n\n".join(parts)
        if node == "Critic":
            return f"{query}\n\nCandidate answer:\n{self.session.candidate_answer}"
        if node == "Communicator":
            return f"{query}\n\nFinal answer to deliver:\n{self.session.candidate_answer}"
        return query

    def _slots_for(self, node: str) -> dict[str, str]:
        spec = NODE_SPECS[node]
        slot_name = _TEMPLATE_SLOT_TOOLS[node]
        slots = {
            slot_name: tool_listing(spec.tool_ids),
            "agent_tools": "[" + ", ".join(spec.tool_ids) + "]",
        }
        if node == "Planner":
            slots["controller_tools"] = "[" + ", ".join(CONTROLLER_TOOLS) + "]"
        return slots

    def _complete(self, node: str, step: int, system_text: str, user_text: str) -> str:
        request = CompletionRequest(
            system_text=system_text,
            user_text=user_text,
            model_name=self.config.model_name,
            temperature=self.config.temperature,
            max_output_tokens=self.config.max_output_tokens,
            node_name=node,
            step_index=step,
            query_text=self.state.latest_user_message(),
        )
        text, usage = self.backend.complete(request)
        # All completion usage funnels through the session accumulator so
        # node outputs (and stalled loops) meter every call they made.
        self.session.add_usage(usage)
        return text

    def _consult_debugger(self, error_class: str, message: str, trace: RunTrace):
        from ..auxtools.debugging import debug_advise

        report = f"{error_class}: {message}"
        trace.agent_started("Debugger", report)
        advice = debug_advise(error_class, message, {"registry": sorted(TOOLS)})
        trace.tool_call("Debugger", "debug_tool", report, ok=True)
        trace.observation("Debugger", advice.text)
        trace.node_output("Debugger", advice.text, usage=UsageRecord().to_dict())
        return advice

    def _record_result(self, node: str, result: ToolResult, trace: RunTrace) -> None:
        payload = {}
        if result.plan is not None:
            payload["plan"] = {
                "system_type": result.plan.system_type,
                "objective": result.plan.objective,
                "ordered_tools": list(result.plan.ordered_tools),
            }
        if result.memory_event is not None:
            payload["memory"] = result.memory_event
        if result.delivery is not None:
            payload["delivery"] = result.delivery
        trace.observation(node, result.observation, **payload)
        if result.plot is not None:
            self.session.last_plot = result.plot
            trace.plot(node, result.plot)
        if result.verdict is not None:
            trace.critic(node, result.verdict.similarity, result.verdict.accepted)

    def _run_node(self, node: str, input_text: str, trace: RunTrace) -> NodeRun:
        trace.agent_started(node, input_text)
        try:
            run = self._react_loop(node, input_text, trace)
        except NodeStalled as exc:
            trace.error(node, "NodeStalled", str(exc))
            run = NodeRun(output=f"[{node} stalled: {exc}]", results=[], stalled=True)
        trace.node_output(node, run.output, usage=self.session.drain_usage().to_dict())
        return run

    def _react_loop(self, node: str, input_text: str, trace: RunTrace) -> NodeRun:
        spec = NODE_SPECS[node]
        slots = self._slots_for(node)
        scratchpad = ""
        results: list[ToolResult] = []
        completions = 0
        parse_failed_last = False
        pending_debug: bool | None = None

        while completions < self.config.max_inner:
            system_text, user_text = render_node_prompt(node, slots, input_text, scratchpad)
            text = self._complete(node, completions, system_text, user_text)
            completions += 1

            parsed = parse_react(text)
            if isinstance(parsed, ParseFailure):
                trace.error(node, "ParseFailure", parsed.reason)
                if parse_failed_last:
                    raise NodeStalled(f"{node} produced unparseable output twice")
                parse_failed_last = True
                advice = self._consult_debugger("ParseFailure", parsed.reason, trace)
                scratchpad += f"Observation: {advice.text}\nThought: "
                continue
            parse_failed_last = False

            if isinstance(parsed, FinalAnswer):
                if pending_debug is not None:
                    trace.observation(
                        "Debugger", "Node finished without retrying the failed step.",
                        debug={"detected": pending_debug, "fixed": False},
                    )
                return NodeRun(output=parsed.text, results=results)

            step = parsed
            if step.thought:
                trace.thought(node, step.thought)
            try:
                canonical = resolve_tool_id(step.action)
                if canonical not in spec.tool_ids:
                    raise UnknownTool(f"tool {step.action!r} is not available to {node}")
                result = dispatch_tool(canonical, step.action_input, self.session)
            except Exception as exc:
                error_class = type(exc).__name__
                trace.tool_call(node, step.action, step.action_input, ok=False)
                trace.error(node, error_class, str(exc))
                if pending_debug is not None:
                    trace.observation(
                        "Debugger", "Retry failed; the error persists.",
                        debug={"detected": pending_debug, "fixed": False},
                    )
                    pending_debug = None
                    scratchpad += (
                        f"{step.serialize()}\nObservation: Error ({error_class}): {exc}\nThought: "
                    )
                    continue
                advice = self._consult_debugger(error_class, str(exc), trace)
                pending_debug = advice.recognized
                scratchpad += (
                    f"{step.serialize()}\nObservation: Error ({error_class}): {exc}\n"
                    f"Remedy: {advice.text}\nThought: "
                )
                continue

            trace.tool_call(node, canonical, step.action_input, ok=True)
            self._record_result(node, result, trace)
            results.append(result)
            if pending_debug is not None:
                trace.observation(
                    "Debugger", "Retry succeeded after the suggested remedy.",
                    debug={"detected": pending_debug, "fixed": True},
                )
                pending_debug = None
            scratchpad += f"{step.serialize()}\nObservation: {result.observation}\nThought: "

        raise NodeStalled(f"{node} exceeded max_inner={self.config.max_inner}")

    # -- supervisor ------------------------------------------------------------

    def _supervisor_route(self, trace: RunTrace) -> str:
        query = self.state.latest_user_message()
        trace.agent_started("Supervisor", query)
        members = [name for name in AGENT_ORDER if name != "Supervisor"]
        member_tool_lines = "\n".join(
            f"    {name} has access to: [{', '.join(NODE_SPECS[name].tool_ids)}]"
            for name in members
        )
        system_text = render_prompt(
            load_template("supervisor"),
            {"supervisor_members": ", ".join(members), "member_tool_lines": member_tool_lines},
        )
        recent = self.state.message_list[-1].content if self.state.message_list else query
        user_text = (
            f"User query:\n{query}\n\nMost recent message:\n{recent}\n\n"
            "Decide which team member should act next. "
            f"Reply with exactly one of: {', '.join(SUPERVISOR_SUCCESSORS)}."
        )
        choice: str | None = None
        for attempt in range(2):
            text = self._complete("Supervisor", attempt, system_text, user_text)
            choice = _parse_choice(text, SUPERVISOR_SUCCESSORS)
            if choice is not None:
                break
        if choice is None:
            choice = "Planner"
        trace.node_output(
            "Supervisor", f"<Route to {choice}>", usage=self.session.drain_usage().to_dict()
        )
        trace.routing("Supervisor", choice, conditional=True)
        self.state.add(Message(role="agent", agent_name="Supervisor", content=f"<Route to {choice}>"))
        return choice


def _parse_choice(text: str, choices: tuple[str, ...]) -> str | None:
    lowered = text.lower()
    best: tuple[int, str] | None = None
    for choice in choices:
        at = lowered.find(choice.lower())
        if at >= 0 and (best is None or at < best[0]):
            best = (at, choice)
    return best[1] if best else None


def run_conversation(query: str, backend, config: AgentConfig | None = None, **session_kwargs):
    """One-shot conversation in a fresh session; returns (answer, trace)."""
    graph = AgentGraph(backend, config, **session_kwargs)
    return graph.run_conversation(query)
