import pytest

from agentctl.backends import ScriptedBackend
from agentctl.errors import PlanFailure
from agentctl.graph import planner_tool


class TestPlannerClassification:
    def test_place_on_state_space_matrices(self):
        plan = planner_tool(
            "Place the poles of a system with A = [[0, 1], [-2, -3]], B = [[0], [1]] at [-3, -4]."
        )
        assert plan.system_type == "SS"
        assert plan.objective == "place"
        assert plan.ordered_tools == ("place",)

    def test_lqr_on_transfer_function(self):
        plan = planner_tool(
            "Design an LQR controller for the mentioned system with Q = [[1, 0], [0, 1]], "
            "R = [[1]], num = [1, 3], den = [1, -2, -3]"
        )
        assert plan.system_type == "TF"
        assert plan.objective == "lqr"
        assert plan.ordered_tools == ("tf", "tf2ss", "lqr")

    def test_step_response_with_coefficients(self):
        plan = planner_tool("plot its step response, num = [1, 3], den = [1, -2, -3]")
        assert (plan.system_type, plan.objective) == ("TF", "step_response")
        assert plan.ordered_tools == ("tf", "step_response")

    def test_mangled_placement_query_degrades_to_poles(self):
        # Dropping the verb leaves only the pole vocabulary: the classifier
        # picks the analysis objective, reproducing the planning failure mode.
        plan = planner_tool(
            "query='system with A = [[0, 1], [-2, -3]], B = [[0], [1]], poles at [-3, -4]'"
        )
        assert plan.objective == "poles"
        assert plan.ordered_tools == ("ss", "poles")

    def test_acker_direct(self):
        plan = planner_tool(
            "Use Ackermann's formula to place the poles of a system with "
            "A = [[0, 1], [-2, -3]], B = [[0], [1]] at [-3, -4]."
        )
        assert plan.objective == "acker"
        assert plan.ordered_tools == ("acker",)

    def test_state_space_step_goes_through_conversion(self):
        plan = planner_tool(
            "The state-space system A = [[-4.16, -3.16], [1, 0]], B = [[1], [0]], "
            "C = [[1, 3]], D = [[0]]; then plot the step response for the closed-loop system."
        )
        assert (plan.system_type, plan.objective) == ("SS", "step_response")
        assert plan.ordered_tools == ("ss2tf", "step_response")

    def test_objective_matches_last_tool(self):
        for query in (
            "bode plot for num = [1], den = [1, 1]",
            "find the zeros of num = [1, 7, 10], den = [1, 3, 4, 20]",
            "is the system with num = [1], den = [1, 1] stable?",
        ):
            plan = planner_tool(query)
            assert plan.ordered_tools[-1] == plan.objective

    def test_describe_uses_paper_style_ids(self):
        plan = planner_tool("poles of the system with A = [[0, 1], [-2, -3]], B = [[0], [1]]")
        assert "Ordered Tools: ['control.ss', 'control.poles']" in plan.describe()

    def test_empty_query_fails(self):
        with pytest.raises(PlanFailure):
            planner_tool("   ")


class TestPlannerFallback:
    def test_backend_fallback_constrained_to_vocabulary(self):
        query = "What happens to the output of this thing over time?"
        backend = ScriptedBackend({(query, "planner_tool", 0): "step_response"})
        plan = planner_tool(query, backend=backend)
        assert plan.objective == "step_response"

    def test_unparseable_fallback_fails(self):
        query = "Tell me something nice."
        backend = ScriptedBackend({(query, "planner_tool", 0): "I have no idea."})
        with pytest.raises(PlanFailure):
            planner_tool(query, backend=backend)
