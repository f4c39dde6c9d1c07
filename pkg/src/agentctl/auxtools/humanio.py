"""Reply channels backing the human-in-the-loop tool.

A channel answers questions posed mid-run.  Three variants cover the
deployment modes: scripted answers for the harness, stdin prompts for
the CLI, and an event-driven channel the service resumes when a client
posts a reply.
"""

from __future__ import annotations

import threading

from ..errors import HumanTimeout, MissingScriptedReply

INTERACTIVE_TIMEOUT = 300.0


class ScriptedChannel:
    """Plays back a fixed sequence of replies."""

    def __init__(self, replies):
        self._replies = list(replies)

    def ask(self, prompt: str) -> str:
        if not self._replies:
            raise MissingScriptedReply(f"no scripted reply left for: {prompt!r}")
        return self._replies.pop(0)


class InteractiveChannel:
    """Prompts on stdin, bounded by a reply timeout."""

    def __init__(self, timeout: float = INTERACTIVE_TIMEOUT, input_fn=input):
        self.timeout = timeout
        self._input = input_fn

    def ask(self, prompt: str) -> str:
        result: dict[str, str] = {}

        def worker():
            try:
                result["reply"] = self._input(f"{prompt}\n> ")
            except EOFError:
                pass

        thread = threading.Thread(target=worker, daemon=True)
        thread.start()
        thread.join(self.timeout)
        if "reply" not in result:
            raise HumanTimeout(f"no reply within {self.timeout:.0f} s")
        return result["reply"]


class PendingQuestionChannel:
    """Blocks the running turn until another thread posts the answer."""

    def __init__(self, timeout: float = INTERACTIVE_TIMEOUT):
        self.timeout = timeout
        self._event = threading.Event()
        self._reply: str | None = None
        self.pending: str | None = None

    def ask(self, prompt: str) -> str:
        self.pending = prompt
        self._event.clear()
        if not self._event.wait(self.timeout):
            self.pending = None
            raise HumanTimeout(f"no reply within {self.timeout:.0f} s")
        self.pending = None
        reply, self._reply = self._reply, None
        return reply or ""

    def answer(self, reply: str) -> bool:
        """Deliver a reply; returns False when no question is pending."""
        if self.pending is None:
            return False
        self._reply = reply
        self._event.set()
        return True
