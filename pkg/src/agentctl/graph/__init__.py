"""Supervisor-routed agent network, ReAct loop, and tool dispatch."""

from .engine import (
    AGENT_ORDER,
    CONTROLLER_TOOLS,
    END,
    NODE_SPECS,
    SUPERVISOR_SUCCESSORS,
    AgentGraph,
    AgentNodeSpec,
    run_conversation,
)
from .parsing import FinalAnswer, ParseFailure, ReActStep, parse_action_input, parse_react
from .planner import OBJECTIVES, Plan, planner_tool
from .prompts import load_template, render_node_prompt, render_prompt
from .state import ConversationState, Message
from .tools import TOOLS, ToolResult, ToolSession, dispatch_tool, resolve_tool_id, tool_listing

__all__ = [
    "AGENT_ORDER",
    "CONTROLLER_TOOLS",
    "END",
    "NODE_SPECS",
    "OBJECTIVES",
    "SUPERVISOR_SUCCESSORS",
    "AgentGraph",
    "AgentNodeSpec",
    "ConversationState",
    "FinalAnswer",
    "Message",
    "ParseFailure",
    "Plan",
    "ReActStep",
    "TOOLS",
    "ToolResult",
    "ToolSession",
    "dispatch_tool",
    "load_template",
    "parse_action_input",
    "parse_react",
    "planner_tool",
    "render_node_prompt",
    "render_prompt",
    "resolve_tool_id",
    "run_conversation",
    "tool_listing",
]
