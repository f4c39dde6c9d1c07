"""Chain-of-thought and tree-of-thought scaffolds around a backend call."""

from __future__ import annotations

from ..backends import CompletionRequest

COT_SCAFFOLD = """Reason through the problem in clear, numbered steps.
Lay out each step's logic, then state the result of the final step.

Problem: {query}

Path:"""

TOT_SCAFFOLD = """Explore the problem along exactly three distinct reasoning paths.

Path 1: describe the first approach step by step.
Path 2: describe the second approach step by step.
Path 3: describe the third approach step by step.

Then compare the paths and select the most plausible one, justifying the choice.

Problem: {query}

Selected path:"""


def build_scaffold(mode: str, query: str) -> str:
    if mode == "cot":
        return COT_SCAFFOLD.format(query=query)
    if mode == "tot":
        return TOT_SCAFFOLD.format(query=query)
    raise ValueError(f"unknown reasoning mode {mode!r}")


def reason_tool(mode: str, query: str, backend, query_text: str | None = None):
    """Run the scaffolded reasoning prompt; returns (labeled text, usage)."""
    scaffold = build_scaffold(mode, query)
    request = CompletionRequest(
        system_text="You are a careful, stepwise reasoner.",
        user_text=scaffold,
        node_name=f"{mode}_tool",
        step_index=0,
        query_text=query_text or query,
    )
    text, usage = backend.complete(request)
    label = "Path:" if mode == "cot" else "Selected path:"
    body = text.strip()
    if not body.startswith(label.rstrip(":")) and not body.startswith("Path"):
        body = f"{label}\n{body}"
    return body, usage
