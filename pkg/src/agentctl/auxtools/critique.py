"""Lexical similarity scoring for answer critique and memory recall."""

from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass

# Lowercase alphanumeric tokens; decimal numbers survive as single tokens.
_TOKEN = re.compile(r"[a-z0-9]+(?:\.[0-9]+)?")

DEFAULT_CRITIC_THRESHOLD = 0.5


def tokenize(text: str) -> list[str]:
    return _TOKEN.findall(text.lower())


def cosine_similarity(a: str, b: str) -> float:
    """Cosine of token frequency vectors; 1.0 on identical token streams."""
    ca, cb = Counter(tokenize(a)), Counter(tokenize(b))
    if not ca or not cb:
        return 0.0
    dot = sum(count * cb[token] for token, count in ca.items())
    norm = math.sqrt(sum(v * v for v in ca.values())) * math.sqrt(
        sum(v * v for v in cb.values())
    )
    return dot / norm if norm else 0.0


@dataclass(frozen=True)
class CriticVerdict:
    similarity: float
    accepted: bool
    threshold: float


def critic_tool(query: str, answer: str, threshold: float = DEFAULT_CRITIC_THRESHOLD) -> CriticVerdict:
    """Judge whether an answer aligns with its query by lexical overlap."""
    if not query or not answer:
        raise ValueError("critic_tool requires nonempty query and answer")
    similarity = cosine_similarity(query, answer)
    return CriticVerdict(
        similarity=similarity,
        accepted=similarity >= threshold,
        threshold=threshold,
    )
