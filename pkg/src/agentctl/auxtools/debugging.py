"""Rule-table remedies the Debugger agent attaches to retry prompts."""

from __future__ import annotations

from dataclasses import dataclass

ARG_GRAMMAR = (
    "Action Input must follow `name = value, name = value` with values that are "
    "numbers, [lists], [[matrices]], quoted strings, or object handles like sys [7]."
)

FORMAT_REMINDER = (
    "Follow the required format exactly:\n"
    "Thought: you should always think about what to do.\n"
    "Action: the action to take.\n"
    "Action Input: the input to the action.\n"
    "or finish with\n"
    "Final Answer: the final answer to the original input question."
)


@dataclass(frozen=True)
class DebugAdvice:
    text: str
    recognized: bool


def debug_advise(error_class: str, message: str, context: dict | None = None) -> DebugAdvice:
    """Map an error class to actionable retry advice.

    Unknown classes get generic advice flagged as unrecognized so the
    self-correction score can distinguish detected from undiagnosed
    failures.
    """
    context = context or {}
    if error_class == "ArgParseError":
        return DebugAdvice(
            text=f"The action input could not be parsed ({message}). {ARG_GRAMMAR}",
            recognized=True,
        )
    if error_class == "ShapeError":
        dims = context.get("expected_dims", "A must be n x n, B n x m, C p x n, D p x m")
        return DebugAdvice(
            text=f"Matrix dimensions are inconsistent ({message}). Expected: {dims}.",
            recognized=True,
        )
    if error_class == "UnknownTool":
        tools = context.get("registry", [])
        listing = ", ".join(tools) if tools else "the registered tool list"
        return DebugAdvice(
            text=f"No such tool ({message}). Choose the Action from: {listing}.",
            recognized=True,
        )
    if error_class == "ParseFailure":
        return DebugAdvice(
            text=f"The response did not match the expected format ({message}). {FORMAT_REMINDER}",
            recognized=True,
        )
    if error_class in (
        "DegenerateSystem",
        "ImproperSystem",
        "Uncontrollable",
        "BadPoleSet",
        "Unstabilizable",
        "SingularWeight",
        "NoConvergence",
        "BadGrid",
        "UnsupportedShape",
    ):
        return DebugAdvice(
            text=f"The tool rejected its inputs ({error_class}: {message}). "
            "Re-check the system data against the tool's preconditions and retry.",
            recognized=True,
        )
    return DebugAdvice(
        text=f"An unrecognized error occurred ({error_class}: {message}). "
        "Review the last action and its input, then retry once.",
        recognized=False,
    )
