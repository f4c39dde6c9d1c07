from pathlib import Path

import pytest

import agentctl

QUERIES = {
    "q1": "Retrieve the Transfer Function of the system from the provided document, "
          "Sys_Control.pdf. Then, plot its step response to assess the system's stability.",
    "q2": "Design an LQR controller for the mentioned system with Q = [[1, 0], [0, 1]], "
          "R = [[1]].",
    "q3": "Use reasoning and apply the feedback gain K = [[6.16, 6.16]] to the state-space "
          "system A = [[2, 3], [1, 0]], B = [[1], [0]], C = [[1, 3]], D = [[0]]. Then, "
          "plot the step response for the closed-loop system.",
    "q4": "Plot the step response for a system with transfer function num = [1, 3], "
          "den = [1, 4.16, 3.16].",
    "b": "Place the poles of a system with A = [[0, 1], [-2, -3]], B = [[0], [1]] "
         "at [-3, -4].",
    "b3": "Use Ackermann's formula to place the poles of a system with "
          "A = [[0, 1], [-2, -3]], B = [[0], [1]] at [-3, -4].",
}


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return Path(str(agentctl.fixtures_dir()))


@pytest.fixture()
def scripted_session(tmp_path):
    """Factory for a graph wired with a dict script and scripted replies."""
    from agentctl.auxtools import MemoryStore, ScriptedChannel
    from agentctl.backends import ScriptedBackend
    from agentctl.config import AgentConfig
    from agentctl.graph import AgentGraph

    def build(script, replies=(), config=None, **kwargs):
        backend = ScriptedBackend(script)
        return AgentGraph(
            backend,
            config or AgentConfig(),
            memory_store=kwargs.pop("memory_store", MemoryStore()),
            reply_channel=ScriptedChannel(list(replies)),
            output_dir=tmp_path,
            **kwargs,
        )

    return build
