"""Prompt template loading and rendering.

Templates live as versioned text assets under ``agentctl/prompts``.
Rendering is exact single-pass textual substitution: placeholder names
are resolved against the provided slots and inserted verbatim, so slot
values containing braces are never re-expanded.
"""

from __future__ import annotations

import functools
import re
from importlib import resources

from ..errors import TemplateError

_PLACEHOLDER = re.compile(r"\{([a-z_]+)\}")

AGENT_TEMPLATES = (
    "supervisor",
    "controller",
    "planner",
    "retriever",
    "reasoner",
    "researcher",
    "critic",
    "debugger",
    "memory",
    "communicator",
)


@functools.lru_cache(maxsize=None)
def load_template(name: str) -> str:
    path = resources.files("agentctl").joinpath(f"prompts/{name}.txt")
    return path.read_text(encoding="utf-8")


def render_prompt(template: str, slots: dict[str, str]) -> str:
    """Substitute every {placeholder} in the template from ``slots``."""

    def replace(match: re.Match) -> str:
        key = match.group(1)
        if key not in slots:
            raise TemplateError(f"unbound placeholder {{{key}}}")
        return str(slots[key])

    return _PLACEHOLDER.sub(replace, template)


def render_node_prompt(
    agent: str,
    slots: dict[str, str],
    input_text: str,
    scratchpad: str = "",
) -> tuple[str, str]:
    """Render an agent's prompt, split at the format-instruction block.

    Returns (system_text, user_text): the role preamble with its tool
    lists bound, and the ReAct format block carrying the question and
    the accumulated scratchpad.
    """
    template = load_template(agent.lower())
    marker = "{format_instruction}"
    if marker not in template:
        raise TemplateError(f"template {agent!r} lacks a format-instruction marker")
    prefix, suffix = template.split(marker, 1)
    common = dict(slots)
    common.setdefault("input", input_text)
    common.setdefault("agent_scratchpad", scratchpad)
    system_text = render_prompt(prefix, common).strip()
    format_block = render_prompt(load_template("format_instruction"), common)
    user_text = (format_block + render_prompt(suffix, common)).rstrip("\n")
    return system_text, user_text
