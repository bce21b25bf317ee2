"""The default agent: prompt assembly, decision parsing, cost metering, the step loop."""

from sandbench.agent.config import ModelConfig
from sandbench.agent.ledger import CostLedger, CostLimitExceeded, charge
from sandbench.agent.parsing import AgentDecision, FormatError, parse_decision
from sandbench.agent.window import ConversationWindow
from sandbench.agent.prompts import (
    ContextLengthExceeded,
    assemble_prompt,
    default_system_template,
    estimate_tokens,
)
from sandbench.agent.clients import (
    CassetteClient,
    HTTPClient,
    ModelClient,
    ModelResponse,
    ScriptedClient,
    ScriptExhausted,
)
from sandbench.agent.episode import run_episode

__all__ = [
    "ModelConfig",
    "CostLedger",
    "CostLimitExceeded",
    "charge",
    "AgentDecision",
    "FormatError",
    "parse_decision",
    "ConversationWindow",
    "ContextLengthExceeded",
    "assemble_prompt",
    "default_system_template",
    "estimate_tokens",
    "CassetteClient",
    "HTTPClient",
    "ModelClient",
    "ModelResponse",
    "ScriptedClient",
    "ScriptExhausted",
    "run_episode",
]
