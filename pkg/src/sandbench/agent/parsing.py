"""Extract the single command from a model response."""

from __future__ import annotations

import re
from dataclasses import dataclass

_FENCE_RE = re.compile(r"```[^\n`]*\n(.*?)```", re.DOTALL)
_DISCUSSION_HEADER_RE = re.compile(r"^\s*DISCUSSION\s*\n", re.IGNORECASE)


class FormatError(ValueError):
    """The model response does not contain exactly one command block."""


@dataclass(frozen=True)
class AgentDecision:
    discussion: str
    command: str


def parse_decision(model_output: str) -> AgentDecision:
    """Split a response into its discussion and its one fenced command.

    The command block keeps interior newlines and indentation untouched
    (multi-line edit bodies depend on it); only the surrounding fence and
    trailing newline are removed.
    """
    blocks = _FENCE_RE.findall(model_output)
    if len(blocks) == 0:
        raise FormatError(
            "no command found: include exactly one command between triple "
            "backticks after your discussion"
        )
    if len(blocks) > 1:
        raise FormatError(
            f"found {len(blocks)} command blocks: include exactly one command "
            "per response and wait for its output"
        )
    command = blocks[0].rstrip("\n")
    if not command.strip():
        raise FormatError("the command block is empty")
    discussion = model_output[: model_output.index("```")]
    discussion = _DISCUSSION_HEADER_RE.sub("", discussion, count=1).strip()
    return AgentDecision(discussion=discussion, command=command)


def retry_feedback(error: FormatError) -> str:
    """The corrective message appended to the prompt before a retry."""
    return (
        "\n\nYour previous response could not be parsed "
        f"({error}). Respond with one DISCUSSION section followed by exactly "
        "one command in a triple-backtick block."
    )
