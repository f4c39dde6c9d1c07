import pytest

from agentctl.auxtools import MemoryStore, ScriptedChannel
from agentctl.backends import ScriptedBackend
from agentctl.config import AgentConfig
from agentctl.errors import ArgParseError, UnknownTool
from agentctl.graph import ConversationState, Message, ToolSession, dispatch_tool, resolve_tool_id
from agentctl.graph.tools import fmt_complex_list, fmt_matrix, fmt_num
from agentctl.tracing import RunTrace


@pytest.fixture()
def session(tmp_path):
    state = ConversationState(session_id="t")
    state.add(Message(role="user", content="design a controller"))
    return ToolSession(
        trace=RunTrace(),
        backend=ScriptedBackend(),
        config=AgentConfig(),
        memory_store=MemoryStore(),
        reply_channel=ScriptedChannel(["pdf"]),
        output_dir=tmp_path,
        state=state,
    )


class TestFormatting:
    def test_numbers_round_to_two_decimals(self):
        assert fmt_num(6.16227766) == "6.16"
        assert fmt_num(10.000000001) == "10"
        assert fmt_num(-3.16227) == "-3.16"

    def test_matrix_and_complex_lists(self):
        assert fmt_matrix([[6.16227, 6.16227], [6.16227, 7.16227]]) == (
            "[[6.16, 6.16], [6.16, 7.16]]"
        )
        assert fmt_complex_list([-3.16227, -1.0]) == "[-3.16, -1]"
        assert fmt_complex_list([-2 + 1.5j, -2 - 1.5j]) == "[-2+1.5j, -2-1.5j]"


class TestHandles:
    def test_fresh_handles_increment(self, session):
        r1 = dispatch_tool("tf", "num = [1, 3], den = [1, -2, -3]", session)
        r2 = dispatch_tool("tf", "num = [1], den = [1, 1]", session)
        assert r1.handle == 1 and r2.handle == 2
        assert "sys [1]" in r1.observation

    def test_handle_reference_forms(self, session):
        dispatch_tool("tf", "num = [1, 3], den = [1, -2, -3]", session)
        for ref in ("sys = sys1", "sys = sys [1]", "sys = sys[1]"):
            result = dispatch_tool("poles", ref, session)
            assert "Poles: [-1, 3]" in result.observation

    def test_unknown_handle(self, session):
        with pytest.raises(ArgParseError):
            dispatch_tool("poles", "sys = sys [99]", session)


class TestDispatch:
    def test_alias_resolution(self):
        assert resolve_tool_id("control.tf") == "tf"
        assert resolve_tool_id("Step_Response") == "step_response"
        with pytest.raises(UnknownTool):
            resolve_tool_id("foo")

    def test_tf_observation_matches_transcript_shape(self, session):
        result = dispatch_tool("tf", "num = [1, 3], den = [1, -2, -3]", session)
        assert "Inputs (1): ['u [0]']" in result.observation
        assert "s + 3" in result.observation
        assert "s^2 - 2 s - 3" in result.observation

    def test_tf2ss_canonical_matrices(self, session):
        dispatch_tool("tf", "num = [1, 3], den = [1, -2, -3]", session)
        result = dispatch_tool("tf2ss", "sys = sys [1]", session)
        assert "A = [[2. 3.]" in result.observation.replace("\n ", " ")
        assert "States (2)" in result.observation

    def test_lqr_observation_rounding(self, session):
        result = dispatch_tool(
            "lqr", "A = [[2, 3], [1, 0]], B = [[1], [0]], Q = [[1, 0], [0, 1]], R = [[1]]",
            session,
        )
        assert "(array([[6.16, 6.16]]), array([[6.16, 6.16], [6.16, 7.16]]), "
        assert "array([-3.16, -1])" in result.observation

    def test_acker_observation(self, session):
        result = dispatch_tool(
            "acker", "A = [[0, 1], [-2, -3]], B = [[0], [1]], poles = [-3, -4]", session
        )
        assert result.observation == "[[10, 4]]"

    def test_step_response_payload(self, session):
        dispatch_tool("tf", "num = [1, 3], den = [1, 4.16, 3.16]", session)
        result = dispatch_tool("step_response", "sys = sys [1]", session)
        assert "<TimeResponseData>" in result.observation
        assert result.plot is not None
        assert result.plot["kind"] == "step"
        assert len(result.plot["series"][0]["x"]) == 500

    def test_stability_observation(self, session):
        dispatch_tool("tf", "num = [1, 7, 10], den = [1, 3, 4, 20]", session)
        result = dispatch_tool("stability", "sys = sys [1]", session)
        assert "unstable" in result.observation
        assert "2 pole(s) in the right-half" in result.observation

    def test_feedback_interconnection(self, session):
        dispatch_tool("tf", "num = [4], den = [1, 0]", session)
        result = dispatch_tool("feedback", "sys1 = sys [1]", session)
        assert "s + 4" in result.observation

    def test_planner_tool_records_plan(self, session):
        result = dispatch_tool(
            "planner_tool",
            "Place the poles of a system with A = [[0, 1], [-2, -3]], B = [[0], [1]] at [-3, -4].",
            session,
        )
        assert result.plan is not None
        assert result.plan.ordered_tools == ("place",)
        assert session.current_plan is result.plan
        assert "Objective: place" in result.observation

    def test_unknown_tool(self, session):
        with pytest.raises(UnknownTool):
            dispatch_tool("frobnicate", "", session)

    def test_named_tool_arg_error(self, session):
        with pytest.raises(ArgParseError):
            dispatch_tool("tf", "num = [1, 3]", session)


class TestDeliveryTools:
    def test_human_then_pdf(self, session):
        reply = dispatch_tool("human_tool", "Please identify the format you prefer.", session)
        assert reply.observation == "pdf"
        assert session.last_requested_format == "pdf"
        result = dispatch_tool("text_to_pdf_tool", "<Conversation>", session)
        assert result.observation == "The PDF has been created successfully."
        assert result.delivery == {
            "requested": "pdf", "delivered": "pdf", "ok": True,
            "path": str(session.output_dir / "answer_1.pdf"),
        }
        assert (session.output_dir / "answer_1.pdf").read_bytes().startswith(b"%PDF-")

    def test_speech_stub(self, session):
        result = dispatch_tool("text_to_speech_tool", "say it", session)
        assert "not implemented" in result.observation
        assert result.delivery["ok"] is False

    def test_memory_roundtrip(self, session):
        session.candidate_answer = "The gain matrix K is [[10, 4]]."
        stored = dispatch_tool("storage_memory_tool", "<Conversation>", session)
        assert stored.memory_event == {"kind": "stored", "ok": True}
        recalled = dispatch_tool("recall_memory_tool", "design a controller", session)
        assert recalled.memory_event["kind"] == "recalled"
