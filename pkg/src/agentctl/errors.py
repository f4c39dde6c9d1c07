"""Application-level exception types shared across modules."""


class AgentError(Exception):
    """Base class for orchestration-layer failures."""


class BackendError(AgentError):
    """Completion backend failed after exhausting retries."""


class BackendAuthError(BackendError):
    """Completion backend rejected or lacked credentials."""


class TemplateError(AgentError):
    """A prompt template placeholder was left unbound."""


class ArgParseError(AgentError):
    """Tool action input did not match the argument grammar."""

    def __init__(self, message: str, span: str = ""):
        super().__init__(message)
        self.span = span


class UnknownTool(AgentError):
    """Requested tool id is not registered for the node."""


class NodeStalled(AgentError):
    """A node exhausted its inner-loop budget without a final answer."""


class RunAborted(AgentError):
    """The conversation loop hit max_steps; the partial trace is kept."""

    def __init__(self, message: str, trace=None):
        super().__init__(message)
        self.trace = trace


class PlanFailure(AgentError):
    """No objective could be derived from the query."""


class MissingScriptedReply(AgentError):
    """Harness-mode human tool ran out of scripted answers."""


class HumanTimeout(AgentError):
    """No user reply arrived within the channel timeout."""


class StoreError(AgentError):
    """Memory log or document output could not be written."""


class IngestError(AgentError):
    """A corpus file could not be read."""


class NoCorpus(AgentError):
    """Retrieval was attempted against an empty index."""


class SearchUnavailable(AgentError):
    """No search client configured and no fixtures supplied."""


class ScenarioError(AgentError):
    """Scenario file failed schema validation."""

    def __init__(self, message: str, field: str = ""):
        super().__init__(f"{field}: {message}" if field else message)
        self.field = field


class EmptyEvaluation(AgentError):
    """Metrics were requested over zero runs."""


class MetricUndefined(AgentError):
    """Every run was excluded from a metric (relevant agent never fired)."""

    def __init__(self, kind: str):
        super().__init__(f"metric {kind} undefined: no run exercised it")
        self.kind = kind
