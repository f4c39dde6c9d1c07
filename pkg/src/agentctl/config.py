"""Run configuration: loop bounds, thresholds, and model settings."""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .auxtools.critique import DEFAULT_CRITIC_THRESHOLD
from .auxtools.memory import DEFAULT_RECALL_THRESHOLD


@dataclass(frozen=True)
class AgentConfig:
    max_steps: int = 40
    max_inner: int = 8
    max_revisions: int = 2
    critic_threshold: float = DEFAULT_CRITIC_THRESHOLD
    recall_threshold: float = DEFAULT_RECALL_THRESHOLD
    model_name: str = "scripted"
    max_output_tokens: int = 1024
    temperature: float = 0.0
    human_timeout: float = 300.0

    def with_overrides(self, overrides: dict | None) -> "AgentConfig":
        if not overrides:
            return self
        unknown = set(overrides) - set(self.__dataclass_fields__)
        if unknown:
            raise ValueError(f"unknown config overrides: {sorted(unknown)}")
        return replace(self, **overrides)
