"""The episode loop: assemble, query, parse, act, until termination."""

from __future__ import annotations

from dataclasses import dataclass

from sandbench.agent.clients import ModelClient
from sandbench.agent.config import ModelConfig
from sandbench.agent.ledger import CostLedger, CostLimitExceeded, charge
from sandbench.agent.parsing import FormatError, parse_decision, retry_feedback
from sandbench.agent.prompts import (
    ContextLengthExceeded,
    assemble_prompt,
    estimate_tokens,
    load_system_template,
    memory_state_line,
    step_banner,
)
from sandbench.agent.window import ConversationWindow
from sandbench.environment.session import (
    SessionState,
    TerminationKind,
    TerminationStatus,
    finalize,
)
from sandbench.tools.dispatch import dispatch_command
from sandbench.tools.registry import default_registry

# A step tolerates this many malformed model responses before the episode
# ends with a format error.
FORMAT_ATTEMPTS = 3


@dataclass
class EpisodeResult:
    termination: TerminationStatus
    ledger: CostLedger
    steps_taken: int


def run_episode(
    client: ModelClient,
    session: SessionState,
    model_config: ModelConfig,
    task_description: str,
    system_template: str | None = None,
    keep_last: int = 5,
    format_attempts: int = FORMAT_ATTEMPTS,
) -> EpisodeResult:
    """Drive one session to termination.

    Every failure mode maps to a TerminationStatus; this function does not
    raise for anything the model or the commands do.
    """
    template = system_template if system_template is not None else load_system_template()
    window = ConversationWindow(
        system_block=template,
        pinned_task_block=task_description,
        keep_last=keep_last,
    )
    tool_docs = default_registry().render_docs()
    ledger = CostLedger()
    session.model_name = model_config.name

    while session.running:
        if len(session.steps) >= session.config.step_limit:
            finalize(session, TerminationKind.AUTOSUBMIT)
            break
        try:
            prompt = assemble_prompt(
                window,
                tool_docs,
                memory_state_line(session),
                step_banner(session),
                context_limit=model_config.context_limit,
            )
        except ContextLengthExceeded as exc:
            finalize(session, TerminationKind.CONTEXT_LENGTH_EXCEEDED, str(exc))
            break

        decision = None
        try:
            for _ in range(format_attempts):
                response = client.complete(prompt)
                if response.has_usage:
                    ledger = charge(
                        ledger, response.input_tokens, response.output_tokens,
                        model_config,
                    )
                else:
                    ledger = charge(
                        ledger,
                        estimate_tokens(prompt),
                        estimate_tokens(response.text),
                        model_config,
                        approximate=True,
                    )
                try:
                    decision = parse_decision(response.text)
                    break
                except FormatError as exc:
                    last_error = exc
                    prompt = prompt + retry_feedback(exc)
        except CostLimitExceeded as exc:
            ledger = exc.ledger
            finalize(session, TerminationKind.COST_LIMIT_EXCEEDED, str(exc))
            break
        except Exception as exc:  # client failure: network, exhausted script, ...
            finalize(session, TerminationKind.RUNTIME_ERROR, f"model client failed: {exc}")
            break

        if decision is None:
            finalize(
                session,
                TerminationKind.FORMAT_ERROR,
                f"no parseable command after {format_attempts} attempts: {last_error}",
            )
            break

        step_index = len(session.steps)
        observation = dispatch_command(session, decision.command, thought=decision.discussion)
        window.add(step_index, decision.command, observation)

    assert session.termination is not None
    return EpisodeResult(
        termination=session.termination,
        ledger=ledger,
        steps_taken=len(session.steps),
    )
