"""Parsers for the ReAct completion format and tool action inputs."""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..errors import ArgParseError

_LABELS = ("Thought:", "Action:", "Action Input:", "Observation:", "Final Answer:")


@dataclass
class ReActStep:
    thought: str
    action: str
    action_input: str
    observation: str | None = None

    def serialize(self) -> str:
        return (
            f"Thought: {self.thought}\n"
            f"Action: {self.action}\n"
            f"Action Input: {self.action_input}"
        )


@dataclass(frozen=True)
class FinalAnswer:
    text: str


@dataclass(frozen=True)
class ParseFailure:
    reason: str


def _label_of(line: str) -> str | None:
    stripped = line.lstrip()
    for label in _LABELS:
        if stripped.startswith(label):
            return label
    return None


def parse_react(completion: str) -> ReActStep | FinalAnswer | ParseFailure:
    """Extract the first Thought/Action/Action Input triple or final answer.

    Labels are line-anchored and case-sensitive; leading prose before the
    first label is tolerated.  Values may continue over following lines
    until the next label.  Whichever of ``Action:`` / ``Final Answer:``
    appears first wins.
    """
    lines = completion.split("\n")
    segments: list[tuple[str, str]] = []
    for line in lines:
        label = _label_of(line)
        if label:
            value = line.lstrip()[len(label):].strip()
            segments.append((label, value))
        elif segments:
            label, value = segments[-1]
            segments[-1] = (label, (value + "\n" + line).strip())

    thought = ""
    for i, (label, value) in enumerate(segments):
        if label == "Thought:":
            thought = value
        elif label == "Final Answer:":
            return FinalAnswer(text=value)
        elif label == "Action:":
            action = value
            action_input = ""
            for next_label, next_value in segments[i + 1 :]:
                if next_label == "Action Input:":
                    action_input = next_value
                    break
                if next_label in ("Action:", "Final Answer:", "Observation:"):
                    break
            if not action:
                return ParseFailure(reason="empty Action label")
            return ReActStep(thought=thought, action=action, action_input=action_input)
    return ParseFailure(reason="no Action or Final Answer found")


_NUMBER = re.compile(r"^[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?$")


def _split_top_level(text: str, sep: str = ",") -> list[str]:
    """Split on separators not enclosed in brackets or quotes."""
    parts: list[str] = []
    depth = 0
    quote: str | None = None
    current: list[str] = []
    for ch in text:
        if quote:
            if ch == quote:
                quote = None
            current.append(ch)
            continue
        if ch in "'\"":
            quote = ch
            current.append(ch)
        elif ch in "([{":
            depth += 1
            current.append(ch)
        elif ch in ")]}":
            depth -= 1
            current.append(ch)
        elif ch == sep and depth == 0:
            parts.append("".join(current))
            current = []
        else:
            current.append(ch)
    if depth != 0:
        raise ArgParseError("unbalanced brackets", span=text)
    if quote is not None:
        raise ArgParseError("unterminated quote", span=text)
    parts.append("".join(current))
    return parts


def _parse_value(raw: str):
    value = raw.strip()
    if not value:
        raise ArgParseError("empty value", span=raw)
    if value[0] in "'\"" and len(value) >= 2 and value[-1] == value[0]:
        return value[1:-1]
    if value.startswith("["):
        if not value.endswith("]"):
            raise ArgParseError("unterminated list", span=value)
        inner = value[1:-1].strip()
        if not inner:
            return []
        items = [_parse_value(item) for item in _split_top_level(inner)]
        return items
    if _NUMBER.match(value):
        num = float(value)
        return int(num) if num.is_integer() and "e" not in value.lower() and "." not in value else num
    # Bare string (object handles like "sys7" or "sys [24]").
    return value


def parse_action_input(raw: str) -> dict:
    """Parse ``name = value, name = value`` action inputs.

    Values are numbers, bracketed vectors/matrices, quoted strings, or
    bare strings; whitespace is insignificant.  An empty input yields an
    empty mapping.
    """
    text = raw.strip()
    if not text:
        return {}
    args: dict = {}
    for segment in _split_top_level(text):
        if not segment.strip():
            continue
        name, eq, value = segment.partition("=")
        if not eq:
            raise ArgParseError("expected name = value", span=segment.strip())
        key = name.strip()
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", key):
            raise ArgParseError(f"bad argument name {key!r}", span=segment.strip())
        args[key] = _parse_value(value)
    return args
