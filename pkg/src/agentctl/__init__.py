"""agentctl: a multi-agent control-engineering assistant.

The package couples a deterministic continuous-time LTI tool kernel
(`agentctl.kernel`) with a supervisor-routed agent graph
(`agentctl.graph`), pluggable completion backends, run-trace metrics,
a scenario evaluation harness, and a streaming HTTP service / CLI.
"""

__version__ = "0.1.0"


def fixtures_dir():
    """Path to the shipped scenario fixtures (scripts, scenarios, corpus)."""
    from importlib import resources

    return resources.files("agentctl") / "fixtures"
