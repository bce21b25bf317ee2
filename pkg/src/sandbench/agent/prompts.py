"""Prompt assembly from the system template, tool docs, memory and history."""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from sandbench.agent.window import ConversationWindow
from sandbench.environment.session import SessionState

TEMPLATE_SLOTS = ("{tool_docs}", "{task_description}", "{memory_state}", "{step_banner}")


class ContextLengthExceeded(Exception):
    """The assembled prompt does not fit the model's context limit."""


def default_system_template() -> str:
    return (
        resources.files("sandbench.agent")
        .joinpath("templates/system.txt")
        .read_text()
    )


def load_system_template(path: str | Path | None = None) -> str:
    """Load a template file, checking that every named slot is present."""
    text = default_system_template() if path is None else Path(path).read_text()
    missing = [slot for slot in TEMPLATE_SLOTS if slot not in text]
    if missing:
        raise ValueError(f"system template is missing slots: {missing}")
    return text


def estimate_tokens(text: str) -> int:
    """Whitespace token count; an approximation used for context budgeting."""
    return len(text.split())


def step_banner(session: SessionState) -> str:
    open_file = "n/a"
    if session.open_file is not None:
        try:
            open_file = session.open_file.relative_to(session.spec.root_dir).as_posix()
        except ValueError:
            open_file = str(session.open_file)
    return (
        f"(Current Step: {len(session.steps)}, "
        f"Remaining Steps: {session.steps_remaining})\n"
        f"(Open file: {open_file})\n"
        f"(Current directory: {session.relative_cwd()})"
    )


def memory_state_line(session: SessionState) -> str:
    if session.memory is None:
        return "memory is not enabled for this task"
    count, tags = session.memory.state_summary()
    if count == 0:
        return "memory is empty (0 records)"
    return f"{count} record(s); tags: {', '.join(tags)}"


def assemble_prompt(window: ConversationWindow, tool_docs: str,
                    memory_summary: str, banner: str,
                    context_limit: int | None = None) -> str:
    """Render the full prompt; deterministic in its inputs.

    Raises ContextLengthExceeded when the estimated token count passes the
    model's context limit.
    """
    body = (
        window.system_block
        .replace("{tool_docs}", tool_docs)
        .replace("{task_description}", window.pinned_task_block)
        .replace("{memory_state}", memory_summary)
        .replace("{step_banner}", banner)
    )
    history = window.render_history()
    prompt = body if not history else body + "\n" + history + "\n\n" + banner
    if context_limit is not None:
        tokens = estimate_tokens(prompt)
        if tokens > context_limit:
            raise ContextLengthExceeded(
                f"assembled prompt is ~{tokens} tokens, over the "
                f"{context_limit}-token context limit"
            )
    return prompt
