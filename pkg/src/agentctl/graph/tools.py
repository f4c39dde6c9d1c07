"""Tool registry, session object store, and dispatch.

Kernel tools take ``name = value`` action inputs (parsed by the shared
grammar); auxiliary tools take raw text.  System-valued results are
stored in the session object registry under fresh ``sys [k]`` handles
and referenced by name in observation text.  Numbers quoted in
observations are rounded to two decimals; full precision stays in the
registry.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

import numpy as np

from .. import plotting
from ..auxtools import critique, memory, reasoning, research, retrieval
from ..auxtools.pdfdoc import text_to_pdf_tool as write_pdf
from ..backends import UsageRecord
from ..errors import ArgParseError, UnknownTool
from ..kernel import (
    StateSpace,
    TransferFunction,
    acker,
    closed_loop_state_feedback,
    controllability_matrix,
    dc_gain,
    frequency_response,
    interconnect,
    is_stable,
    lqr,
    make_ss,
    make_tf,
    place,
    poles,
    poly_to_string,
    root_locus_data,
    ss_to_tf,
    tf_to_ss,
    time_response,
    zeros,
)
from .parsing import parse_action_input
from .planner import Plan, planner_tool
from .state import ConversationState

_HANDLE = re.compile(r"^sys\s*\[?\s*(\d+)\s*\]?$")


# -- observation formatting -------------------------------------------------


def fmt_num(x: float, ndigits: int = 2) -> str:
    r = round(float(x), ndigits)
    if r == int(r):
        return str(int(r))
    return f"{r:g}"


def fmt_complex(z: complex, ndigits: int = 2) -> str:
    z = complex(z)
    if round(z.imag, ndigits) == 0:
        return fmt_num(z.real, ndigits)
    sign = "+" if z.imag >= 0 else "-"
    return f"{fmt_num(z.real, ndigits)}{sign}{fmt_num(abs(z.imag), ndigits)}j"


def fmt_vector(v, ndigits: int = 2) -> str:
    return "[" + ", ".join(fmt_num(x, ndigits) for x in np.asarray(v).ravel()) + "]"


def fmt_matrix(M, ndigits: int = 2) -> str:
    rows = ["[" + ", ".join(fmt_num(x, ndigits) for x in row) + "]" for row in np.atleast_2d(M)]
    return "[" + ", ".join(rows) + "]"


def fmt_complex_list(values, ndigits: int = 2) -> str:
    return "[" + ", ".join(fmt_complex(z, ndigits) for z in values) + "]"


def describe_system(handle: int, sys) -> str:
    header = f"sys [{handle}]\nInputs (1): ['u [0]']\nOutputs (1): ['y [0]']"
    if isinstance(sys, TransferFunction):
        top = poly_to_string(sys.num, ndigits=2)
        bottom = poly_to_string(sys.den, ndigits=2)
        width = max(len(top), len(bottom))
        return f"{header}\n{top.center(width)}\n{'-' * width}\n{bottom.center(width)}"
    states = ", ".join(f"'x [{i}]'" for i in range(sys.n_states))
    body = "\n".join(
        f"{name} = {np.array2string(np.round(mat, 2))}"
        for name, mat in (("A", sys.A), ("B", sys.B), ("C", sys.C), ("D", sys.D))
    )
    return f"{header}\nStates ({sys.n_states}): [{states}]\n{body}"


# -- session ----------------------------------------------------------------


@dataclass
class ToolSession:
    """Everything a dispatched tool may touch during one conversation."""

    trace: object
    backend: object
    config: object
    memory_store: memory.MemoryStore
    corpus_index: retrieval.CorpusIndex | None = None
    search_client: object | None = None
    reply_channel: object | None = None
    output_dir: Path = Path(".")
    state: ConversationState | None = None
    registry: dict[int, object] = field(default_factory=dict)
    next_handle: int = 1
    current_plan: Plan | None = None
    candidate_answer: str = ""
    last_requested_format: str | None = None
    last_plot: dict | None = None
    pdf_count: int = 0
    extra_usage: UsageRecord = field(default_factory=UsageRecord)

    def put_system(self, sys) -> int:
        handle = self.next_handle
        self.registry[handle] = sys
        self.next_handle += 1
        return handle

    def get_system(self, ref):
        if isinstance(ref, int):
            key = ref
        elif isinstance(ref, str):
            match = _HANDLE.match(ref.strip())
            if not match:
                raise ArgParseError(f"not a system handle: {ref!r}", span=str(ref))
            key = int(match.group(1))
        else:
            raise ArgParseError(f"not a system handle: {ref!r}", span=str(ref))
        if key not in self.registry:
            raise ArgParseError(f"unknown system handle sys [{key}]", span=str(ref))
        return self.registry[key]

    @property
    def latest_query(self) -> str:
        return self.state.latest_user_message() if self.state else ""

    def conversation_text(self) -> str:
        return self.state.transcript() if self.state else ""

    def add_usage(self, usage: UsageRecord) -> None:
        self.extra_usage = self.extra_usage + usage

    def drain_usage(self) -> UsageRecord:
        drained, self.extra_usage = self.extra_usage, UsageRecord()
        return drained


@dataclass
class ToolResult:
    observation: str
    plot: dict | None = None
    plan: Plan | None = None
    memory_event: dict | None = None
    delivery: dict | None = None
    verdict: critique.CriticVerdict | None = None
    handle: int | None = None


@dataclass(frozen=True)
class ToolSpec:
    tool_id: str
    description: str
    mode: str  # "named" | "raw"
    category: str
    fn: Callable


# -- argument helpers --------------------------------------------------------


def _system_from_args(session: ToolSession, args: dict):
    """Resolve a system from a handle, num/den pair, or A,B,C,D set."""
    if "sys" in args:
        return session.get_system(args["sys"])
    if "num" in args and "den" in args:
        return make_tf(args["num"], args["den"])
    if "A" in args or "a" in args:
        get = lambda *names: next((args[n] for n in names if n in args), None)
        A = get("A", "a")
        B = get("B", "b")
        C = get("C", "c")
        D = get("D", "d")
        if D is None:
            D = [[0.0]]
        if C is None and A is not None:
            C = [[1.0] + [0.0] * (len(np.atleast_2d(A)) - 1)]
        return make_ss(A, B, C, D)
    raise ArgParseError(
        "expected sys = <handle>, num/den coefficients, or A, B, C, D matrices",
        span=str(sorted(args)),
    )


def _matrix_args(args: dict, *names):
    out = []
    for name in names:
        value = args.get(name, args.get(name.lower()))
        if value is None:
            raise ArgParseError(f"missing argument {name!r}", span=str(sorted(args)))
        out.append(value)
    return out


# -- kernel tool wrappers ------------------------------------------------------


def _tool_tf(session: ToolSession, args: dict) -> ToolResult:
    sys = make_tf(*_matrix_args(args, "num", "den"))
    handle = session.put_system(sys)
    return ToolResult(observation=describe_system(handle, sys), handle=handle)


def _tool_ss(session: ToolSession, args: dict) -> ToolResult:
    A, B, C, D = _matrix_args(args, "A", "B", "C", "D")
    sys = make_ss(A, B, C, D)
    handle = session.put_system(sys)
    return ToolResult(observation=describe_system(handle, sys), handle=handle)


def _tool_tf2ss(session: ToolSession, args: dict) -> ToolResult:
    sys = _system_from_args(session, args)
    tf = sys if isinstance(sys, TransferFunction) else ss_to_tf(sys)
    converted = tf_to_ss(tf)
    handle = session.put_system(converted)
    return ToolResult(observation=describe_system(handle, converted), handle=handle)


def _tool_ss2tf(session: ToolSession, args: dict) -> ToolResult:
    sys = _system_from_args(session, args)
    tf = ss_to_tf(sys) if isinstance(sys, StateSpace) else sys
    handle = session.put_system(tf)
    return ToolResult(observation=describe_system(handle, tf), handle=handle)


def _tool_poles(session: ToolSession, args: dict) -> ToolResult:
    values = poles(_system_from_args(session, args))
    return ToolResult(observation=f"Poles: {fmt_complex_list(values)}")


def _tool_zeros(session: ToolSession, args: dict) -> ToolResult:
    values = zeros(_system_from_args(session, args))
    return ToolResult(observation=f"Zeros: {fmt_complex_list(values)}")


def _tool_dcgain(session: ToolSession, args: dict) -> ToolResult:
    value = dc_gain(_system_from_args(session, args))
    if not np.isfinite(value):
        return ToolResult(observation="DC gain: infinite (pole at the origin)")
    return ToolResult(observation=f"DC gain: {fmt_num(value, 4)}")


def _tool_stability(session: ToolSession, args: dict) -> ToolResult:
    report = is_stable(_system_from_args(session, args))
    if report.is_stable:
        text = "The system is stable: every pole lies in the left-half plane."
    elif report.rhp_pole_count:
        text = (
            f"The system is unstable: {report.rhp_pole_count} pole(s) in the "
            "right-half of the complex plane."
        )
    else:
        text = "The system is marginally stable: pole(s) on the imaginary axis."
    return ToolResult(observation=f"{text} Poles: {fmt_complex_list(report.poles)}")


def _tool_pzmap(session: ToolSession, args: dict) -> ToolResult:
    sys = _system_from_args(session, args)
    payload = plotting.pzmap_payload(poles(sys), zeros(sys))
    return ToolResult(
        observation=(
            f"Pole-zero map computed. Poles: {fmt_complex_list(poles(sys))}, "
            f"Zeros: {fmt_complex_list(zeros(sys))}"
        ),
        plot=payload,
    )


def _tool_root_locus(session: ToolSession, args: dict) -> ToolResult:
    sys = _system_from_args(session, args)
    tf = sys if isinstance(sys, TransferFunction) else ss_to_tf(sys)
    data = root_locus_data(tf, gains=args.get("gains"))
    return ToolResult(
        observation=f"Root locus computed over {len(data.gains)} gain values.",
        plot=plotting.root_locus_payload(data),
    )


def _tool_bode(session: ToolSession, args: dict) -> ToolResult:
    data = frequency_response(_system_from_args(session, args), kind="bode", omega=args.get("omega"))
    return ToolResult(
        observation=f"Bode data computed on {len(data.omega)} frequencies.",
        plot=plotting.bode_payload(data),
    )


def _tool_nyquist(session: ToolSession, args: dict) -> ToolResult:
    data = frequency_response(
        _system_from_args(session, args), kind="nyquist", omega=args.get("omega")
    )
    return ToolResult(
        observation=f"Nyquist data computed on {len(data.omega)} frequencies.",
        plot=plotting.nyquist_payload(data),
    )


def _tool_ctrb(session: ToolSession, args: dict) -> ToolResult:
    if "sys" in args:
        sys = session.get_system(args["sys"])
        if isinstance(sys, TransferFunction):
            sys = tf_to_ss(sys)
        A, B = sys.A, sys.B
    else:
        A, B = _matrix_args(args, "A", "B")
    matrix, rank = controllability_matrix(A, B)
    return ToolResult(
        observation=f"Controllability matrix: {fmt_matrix(matrix)}, rank {rank}."
    )


def _tool_acker(session: ToolSession, args: dict) -> ToolResult:
    A, B, desired = _matrix_args(args, "A", "B", "poles")
    K = acker(A, B, desired)
    return ToolResult(observation=fmt_matrix(K))


def _tool_place(session: ToolSession, args: dict) -> ToolResult:
    A, B, desired = _matrix_args(args, "A", "B", "poles")
    K = place(A, B, desired)
    return ToolResult(observation=fmt_matrix(K))


def _tool_lqr(session: ToolSession, args: dict) -> ToolResult:
    if "sys" in args:
        sys = session.get_system(args["sys"])
        if isinstance(sys, TransferFunction):
            sys = tf_to_ss(sys)
        A, B = sys.A, sys.B
        Q, R = _matrix_args(args, "Q", "R")
    else:
        A, B, Q, R = _matrix_args(args, "A", "B", "Q", "R")
    sol = lqr(A, B, Q, R)
    observation = (
        f"(array({fmt_matrix(sol.K)}), array({fmt_matrix(sol.S)}), "
        f"array({fmt_complex_list(sol.E)}))"
    )
    return ToolResult(observation=observation)


def _tool_state_feedback(session: ToolSession, args: dict) -> ToolResult:
    K = args.get("K", args.get("k"))
    if K is None:
        raise ArgParseError("missing argument 'K'", span=str(sorted(args)))
    sys = _system_from_args(session, {k: v for k, v in args.items() if k not in ("K", "k")})
    if isinstance(sys, TransferFunction):
        sys = tf_to_ss(sys)
    closed = closed_loop_state_feedback(sys, np.atleast_2d(np.asarray(K, dtype=float)))
    handle = session.put_system(closed)
    return ToolResult(observation=describe_system(handle, closed), handle=handle)


def _interconnect_tool(kind: str):
    def run(session: ToolSession, args: dict) -> ToolResult:
        def as_tf(ref_key, num_key, den_key):
            if ref_key in args:
                sys = session.get_system(args[ref_key])
                return sys if isinstance(sys, TransferFunction) else ss_to_tf(sys)
            if num_key in args and den_key in args:
                return make_tf(args[num_key], args[den_key])
            return None

        g1 = as_tf("sys1", "num1", "den1") or as_tf("sys", "num", "den")
        if g1 is None:
            raise ArgParseError(
                "expected sys1/sys (or num1, den1) for the first operand",
                span=str(sorted(args)),
            )
        g2 = as_tf("sys2", "num2", "den2")
        combined = interconnect(kind, g1, g2)
        handle = session.put_system(combined)
        return ToolResult(observation=describe_system(handle, combined), handle=handle)

    return run


def _response_tool(kind: str):
    def run(session: ToolSession, args: dict) -> ToolResult:
        sys = _system_from_args(session, args)
        data = time_response(
            sys,
            kind=kind,
            horizon=args.get("horizon"),
            n_points=args.get("n_points"),
            u=args.get("u"),
        )
        payload = plotting.time_payload(data)
        summary = (
            f"<TimeResponseData> object ({kind} response, {len(data.t)} samples over "
            f"{fmt_num(data.t[-1])} time units; y(t_end) = {fmt_num(data.y[-1])})"
        )
        return ToolResult(observation=summary, plot=payload)

    return run


# -- auxiliary tool wrappers ---------------------------------------------------


class _MeteredBackend:
    """Backend proxy crediting tool-internal completions to the session."""

    def __init__(self, session: "ToolSession"):
        self._session = session

    def complete(self, request):
        text, usage = self._session.backend.complete(request)
        self._session.add_usage(usage)
        return text, usage


def _tool_planner(session: ToolSession, raw: str) -> ToolResult:
    plan = planner_tool(raw or session.latest_query, backend=_MeteredBackend(session),
                        query_text=session.latest_query)
    session.current_plan = plan
    return ToolResult(observation=plan.describe(), plan=plan)


def _tool_retriever(session: ToolSession, raw: str) -> ToolResult:
    index = session.corpus_index
    passages = retrieval.retriever_tool(raw or session.latest_query, index)
    top = passages[0]
    note = " (low confidence)" if top.low_confidence else ""
    lines = [f"I found the following in the documents{note}:"]
    for passage in passages:
        source = Path(index.documents[passage.chunk.doc_id].source).name
        lines.append(f"[{source}] {passage.chunk.text.strip()}")
    return ToolResult(observation="\n".join(lines))


def _tool_search(session: ToolSession, raw: str) -> ToolResult:
    snippets = research.search_tool(raw or session.latest_query, client=session.search_client)
    if not snippets:
        return ToolResult(observation="No results found.")
    lines = [f"- {snip.text} (source: {snip.source})" for snip in snippets]
    return ToolResult(observation="\n".join(lines))


def _reason_tool(mode: str):
    def run(session: ToolSession, raw: str) -> ToolResult:
        text, usage = reasoning.reason_tool(
            mode, raw or session.latest_query, session.backend,
            query_text=session.latest_query,
        )
        session.add_usage(usage)
        return ToolResult(observation=text)

    return run


_CRITIC_PAIR = re.compile(r"['\"]\s*\+\s*['\"]")


def _tool_critic(session: ToolSession, raw: str) -> ToolResult:
    text = raw.strip()
    if _CRITIC_PAIR.search(text):
        left, right = _CRITIC_PAIR.split(text, maxsplit=1)
        query = left.strip().strip("'\"")
        answer = right.strip().strip("'\"")
    else:
        query, answer = session.latest_query, text or session.candidate_answer
    verdict = critique.critic_tool(
        query, answer, threshold=session.config.critic_threshold
    )
    if verdict.accepted:
        observation = (
            f"The output is aligned with the input. Similarity score: {verdict.similarity:.2f}."
        )
    else:
        observation = (
            f"The output does not align with the input. Similarity score: "
            f"{verdict.similarity:.2f} (back to controller agent)."
        )
    return ToolResult(observation=observation, verdict=verdict)


_CONVERSATION_PLACEHOLDER = re.compile(r"^<\s*conversation\s*>$", re.IGNORECASE)


def _conversation_or_raw(session: ToolSession, raw: str) -> str:
    text = raw.strip()
    if not text or _CONVERSATION_PLACEHOLDER.match(text):
        return session.conversation_text()
    return text


def _tool_store_memory(session: ToolSession, raw: str) -> ToolResult:
    transcript = _conversation_or_raw(session, raw)
    session.memory_store.store(
        query=session.latest_query, transcript=transcript, answer=session.candidate_answer
    )
    return ToolResult(
        observation="The memory has been updated.",
        memory_event={"kind": "stored", "ok": True},
    )


def _tool_recall_memory(session: ToolSession, raw: str) -> ToolResult:
    query = raw.strip() or session.latest_query
    result = session.memory_store.recall(query, threshold=session.config.recall_threshold)
    if result.hit:
        tail = result.record.transcript.splitlines()[-1] if result.record.transcript else ""
        observation = (
            "The memory has been recalled successfully. "
            f"Stored query: {result.record.query} "
            f"(similarity {result.similarity:.2f}). {tail}"
        )
        return ToolResult(
            observation=observation,
            memory_event={"kind": "recalled", "ok": True, "similarity": result.similarity},
        )
    return ToolResult(
        observation=(
            "No relevant conversation is stored in memory "
            f"(best similarity {result.similarity:.2f}). Escalating to the supervisor."
        ),
        memory_event={"kind": "miss", "ok": False, "similarity": result.similarity},
    )


_KNOWN_FORMATS = ("pdf", "text", "speech", "translation")


def _tool_human(session: ToolSession, raw: str) -> ToolResult:
    prompt = raw.strip() or "Please identify the format you prefer for the output file."
    if session.reply_channel is None:
        raise HumanToolUnavailable("no reply channel configured for this session")
    session.trace.question(agent="Communicator", prompt=prompt)
    if session.state is not None:
        session.state.pending_question = prompt
    try:
        reply = session.reply_channel.ask(prompt)
    finally:
        if session.state is not None:
            session.state.pending_question = None
    normalized = reply.strip().lower()
    if normalized in _KNOWN_FORMATS:
        session.last_requested_format = normalized
    return ToolResult(observation=reply.strip())


class HumanToolUnavailable(UnknownTool):
    pass


def _tool_text_to_pdf(session: ToolSession, raw: str) -> ToolResult:
    content = _conversation_or_raw(session, raw)
    session.pdf_count += 1
    out = session.output_dir / f"answer_{session.pdf_count}.pdf"
    write_pdf(content, out)
    requested = session.last_requested_format or "pdf"
    return ToolResult(
        observation="The PDF has been created successfully.",
        delivery={"requested": requested, "delivered": "pdf", "ok": requested == "pdf",
                  "path": str(out)},
    )


def _stub_delivery(kind: str, message: str):
    def run(session: ToolSession, raw: str) -> ToolResult:
        requested = session.last_requested_format or kind
        return ToolResult(
            observation=message,
            delivery={"requested": requested, "delivered": "none", "ok": False},
        )

    return run


def _tool_debug(session: ToolSession, raw: str) -> ToolResult:
    from ..auxtools.debugging import debug_advise

    error_class, _, message = raw.partition(":")
    advice = debug_advise(
        error_class.strip() or "Unknown", message.strip(), {"registry": sorted(TOOLS)}
    )
    return ToolResult(observation=advice.text)


# -- registry -----------------------------------------------------------------

TOOLS: dict[str, ToolSpec] = {}


def _register(tool_id: str, description: str, mode: str, category: str, fn) -> None:
    TOOLS[tool_id] = ToolSpec(tool_id, description, mode, category, fn)


_register("tf", "create a transfer function from num, den coefficients", "named",
          "representation", _tool_tf)
_register("ss", "create a state-space system from A, B, C, D matrices", "named",
          "representation", _tool_ss)
_register("tf2ss", "convert a transfer function to state space", "named",
          "representation", _tool_tf2ss)
_register("ss2tf", "convert a state-space system to a transfer function", "named",
          "representation", _tool_ss2tf)
_register("poles", "compute system poles", "named", "analysis", _tool_poles)
_register("zeros", "compute system zeros", "named", "analysis", _tool_zeros)
_register("dcgain", "compute the steady-state (DC) gain", "named", "analysis", _tool_dcgain)
_register("stability", "assess stability from pole locations", "named", "analysis",
          _tool_stability)
_register("pzmap", "compute pole-zero map data", "named", "analysis", _tool_pzmap)
_register("root_locus", "compute root locus branches", "named", "analysis", _tool_root_locus)
_register("bode", "compute Bode magnitude/phase data", "named", "analysis", _tool_bode)
_register("nyquist", "compute Nyquist curve data", "named", "analysis", _tool_nyquist)
_register("ctrb", "controllability matrix and rank", "named", "analysis", _tool_ctrb)
_register("acker", "pole placement gain via Ackermann's formula", "named", "design",
          _tool_acker)
_register("place", "pole placement gain", "named", "design", _tool_place)
_register("lqr", "LQR gain, Riccati solution, closed-loop eigenvalues", "named",
          "design", _tool_lqr)
_register("state_feedback", "close the loop with u = -Kx", "named", "design",
          _tool_state_feedback)
_register("series", "series interconnection of two systems", "named", "design",
          _interconnect_tool("series"))
_register("parallel", "parallel interconnection of two systems", "named", "design",
          _interconnect_tool("parallel"))
_register("feedback", "negative feedback interconnection", "named", "design",
          _interconnect_tool("feedback"))
_register("step_response", "simulate the step response", "named", "simulation",
          _response_tool("step"))
_register("impulse_response", "simulate the impulse response", "named", "simulation",
          _response_tool("impulse"))
_register("forced_response", "simulate the response to given input samples", "named",
          "simulation", _response_tool("forced"))

_register("planner_tool", "derive objective and ordered tools from the query", "raw",
          "auxiliary", _tool_planner)
_register("retriever_tool", "fetch passages from the user-provided corpus", "raw",
          "auxiliary", _tool_retriever)
_register("search_tool", "search external sources", "raw", "auxiliary", _tool_search)
_register("cot_tool", "chain-of-thought reasoning", "raw", "auxiliary", _reason_tool("cot"))
_register("tot_tool", "tree-of-thought reasoning", "raw", "auxiliary", _reason_tool("tot"))
_register("critic_tool", "score answer alignment with the query", "raw", "auxiliary",
          _tool_critic)
_register("storage_memory_tool", "store the conversation for future recall", "raw",
          "auxiliary", _tool_store_memory)
_register("recall_memory_tool", "recall the best matching stored conversation", "raw",
          "auxiliary", _tool_recall_memory)
_register("human_tool", "ask the user a question and wait for the reply", "raw",
          "auxiliary", _tool_human)
_register("text_to_pdf_tool", "render the answer as a PDF document", "raw", "auxiliary",
          _tool_text_to_pdf)
_register("text_to_speech_tool", "speech delivery (pluggable stub)", "raw", "auxiliary",
          _stub_delivery("speech", "Speech delivery is not implemented in this build; "
                         "plug a synthesis backend into the delivery interface."))
_register("translate_tool", "translation delivery (pluggable stub)", "raw", "auxiliary",
          _stub_delivery("translation", "Translation delivery is not implemented in this "
                         "build; plug a translation backend into the delivery interface."))
_register("debug_tool", "map an error report to remedy advice", "raw", "auxiliary",
          _tool_debug)


def resolve_tool_id(tool_id: str) -> str:
    """Canonical registry id; paper-style 'control.x' aliases accepted."""
    candidate = tool_id.strip()
    if candidate.startswith("control."):
        candidate = candidate[len("control."):]
    candidate = candidate.strip().lower()
    if candidate in TOOLS:
        return candidate
    raise UnknownTool(f"unknown tool {tool_id!r}")


def tool_listing(tool_ids) -> str:
    parts = []
    for tool_id in tool_ids:
        spec = TOOLS[tool_id]
        parts.append(f"{spec.tool_id}: {spec.description}")
    return "\n".join(parts)


def dispatch_tool(tool_id: str, raw_input: str, session: ToolSession) -> ToolResult:
    """Execute a registered tool against the session."""
    canonical = resolve_tool_id(tool_id)
    spec = TOOLS[canonical]
    if spec.mode == "named":
        args = parse_action_input(raw_input)
        return spec.fn(session, args)
    return spec.fn(session, raw_input)
