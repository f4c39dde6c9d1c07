import pytest
from hypothesis import given
from hypothesis import strategies as st

from agentctl.errors import ArgParseError
from agentctl.graph import FinalAnswer, ParseFailure, ReActStep, parse_action_input, parse_react


class TestParseReact:
    def test_tool_step(self):
        completion = (
            "Thought: I should use Ackermann's formula to place the poles of the system.\n"
            "Action: acker\n"
            "Action Input: A = [[0, 1], [-2, -3]], B = [[0], [1]], poles = [-3, -4]"
        )
        step = parse_react(completion)
        assert isinstance(step, ReActStep)
        assert step.action == "acker"
        assert step.action_input.startswith("A = [[0, 1]")
        assert "place the poles" in step.thought

    def test_final_answer(self):
        result = parse_react("Thought: I now know the final answer\nFinal Answer: K = [10, 4]")
        assert isinstance(result, FinalAnswer)
        assert result.text == "K = [10, 4]"

    def test_plain_prose_fails(self):
        assert isinstance(parse_react("hello"), ParseFailure)

    def test_leading_prose_tolerated(self):
        result = parse_react("Sure, let me work on that.\nThought: ok\nAction: tf\nAction Input: num = [1], den = [1]")
        assert isinstance(result, ReActStep)
        assert result.action == "tf"

    def test_first_pattern_wins(self):
        text = "Thought: t\nAction: tf\nAction Input: num = [1], den = [1]\nFinal Answer: later"
        assert isinstance(parse_react(text), ReActStep)
        text = "Thought: t\nFinal Answer: done\nAction: tf\nAction Input: x = 1"
        assert isinstance(parse_react(text), FinalAnswer)

    def test_multiline_action_input(self):
        text = "Thought: t\nAction: ss\nAction Input: A = [[0, 1],\n[-2, -3]], B = [[0], [1]], C = [[1, 0]], D = [[0]]"
        step = parse_react(text)
        assert isinstance(step, ReActStep)
        assert "[-2, -3]]" in step.action_input

    def test_case_sensitive_labels(self):
        assert isinstance(parse_react("thought: x\naction: tf\naction input: y"), ParseFailure)

    @given(
        thought=st.text(st.characters(blacklist_characters="\n", blacklist_categories=("Cs",)), min_size=1, max_size=60),
        action=st.from_regex(r"[a-z][a-z_]{0,15}", fullmatch=True),
        action_input=st.text(st.characters(blacklist_characters="\n", blacklist_categories=("Cs",)), min_size=1, max_size=60),
    )
    def test_serialize_round_trip(self, thought, action, action_input):
        step = ReActStep(thought=thought.strip() or "t", action=action, action_input=action_input.strip() or "x")
        parsed = parse_react(step.serialize())
        assert isinstance(parsed, ReActStep)
        assert parsed.action == step.action
        assert parsed.action_input == step.action_input
        assert parsed.thought == step.thought


class TestParseActionInput:
    def test_four_matrices(self):
        args = parse_action_input(
            "A = [[2, 3], [1, 0]], B = [[1], [0]], Q = [[1, 0], [0, 1]], R = [[1]]"
        )
        assert args["A"] == [[2, 3], [1, 0]]
        assert args["B"] == [[1], [0]]
        assert args["Q"] == [[1, 0], [0, 1]]
        assert args["R"] == [[1]]

    def test_handle_reference(self):
        assert parse_action_input("sys = sys7") == {"sys": "sys7"}
        assert parse_action_input("sys = sys [24]") == {"sys": "sys [24]"}

    def test_empty_input(self):
        assert parse_action_input("") == {}
        assert parse_action_input("   ") == {}

    def test_numbers_and_strings(self):
        args = parse_action_input("num = [1, 3], den = [1, -2, -3], horizon = 2.5, mode = 'fast'")
        assert args["num"] == [1, 3]
        assert args["den"] == [1, -2, -3]
        assert args["horizon"] == 2.5
        assert args["mode"] == "fast"

    def test_quoted_value_with_commas(self):
        args = parse_action_input("query='system with A = [[0, 1]], poles at [-3, -4]'")
        assert args["query"] == "system with A = [[0, 1]], poles at [-3, -4]"

    def test_scientific_notation(self):
        assert parse_action_input("tol = 1e-6")["tol"] == pytest.approx(1e-6)

    def test_malformed_inputs(self):
        with pytest.raises(ArgParseError) as err:
            parse_action_input("A = [[1, 2]")
        assert err.value.span
        with pytest.raises(ArgParseError):
            parse_action_input("just words without equals")
        with pytest.raises(ArgParseError):
            parse_action_input("2bad = 3")
