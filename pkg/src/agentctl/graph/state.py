"""Conversation state shared across the node loop."""

from __future__ import annotations

import time
from dataclasses import dataclass, field


@dataclass(frozen=True)
class Message:
    role: str  # user | agent | tool | system
    content: str
    agent_name: str | None = None
    timestamp: float = field(default_factory=time.time)

    def __post_init__(self):
        if not self.content:
            raise ValueError("message content must be nonempty")
        needs_agent = self.role in ("agent", "tool")
        if needs_agent != (self.agent_name is not None):
            raise ValueError(f"agent_name must be set iff role is agent/tool (role={self.role})")


@dataclass
class ConversationState:
    session_id: str
    message_list: list[Message] = field(default_factory=list)
    current_node: str = "Supervisor"
    step_count: int = 0
    pending_question: str | None = None

    def add(self, message: Message) -> None:
        self.message_list.append(message)

    def latest_user_message(self) -> str:
        for message in reversed(self.message_list):
            if message.role == "user":
                return message.content
        return ""

    def transcript(self) -> str:
        lines = []
        for message in self.message_list:
            speaker = message.agent_name or message.role.capitalize()
            lines.append(f"{speaker}: {message.content}")
        return "\n".join(lines)
