"""Route one agent command to a tool or the shell, recording exactly one step.

Tool invocations look like shell commands (``name arg1 arg2``); edit and
insert carry a multi-line body terminated by a sentinel line.  Anything
that is not a registered tool name falls through to the shell executor.
Tool failures become observations; nothing a command does can raise past
this boundary except session protocol violations.
"""

from __future__ import annotations

import re
import shlex

from sandbench.environment.session import (
    SessionState,
    TerminationKind,
    execute_action,
    finalize,
)
from sandbench.tools import editor, evaluation, literature, search, viewer

EDIT_SENTINEL = "end_of_edit"
INSERT_SENTINEL = "end_of_insert"

_EDIT_HEAD_RE = re.compile(r"^edit\s+(\d+):(\d+)\s*$")
_INSERT_HEAD_RE = re.compile(r"^insert\s+(\d+)\s*$")

TOOL_NAMES = frozenset(
    {
        "open", "goto", "scroll_up", "scroll_down", "create",
        "edit", "insert",
        "search_dir", "search_file", "find_file",
        "validate", "submit",
        "literature_search", "parse_pdf_url",
        "memory_write", "memory_read",
    }
)


class _Outcome:
    def __init__(self, observation: str, exit_code: int = 0,
                 finalize_kind: str | None = None, finalize_detail: str = "") -> None:
        self.observation = observation
        self.exit_code = exit_code
        self.finalize_kind = finalize_kind
        self.finalize_detail = finalize_detail


def first_token(command: str) -> str:
    stripped = command.strip()
    if not stripped:
        return ""
    return stripped.split(None, 1)[0]


def is_tool_command(command: str) -> bool:
    return first_token(command) in TOOL_NAMES


def dispatch_command(session: SessionState, command: str, thought: str = "") -> str:
    """Execute one agent action (tool or shell) and append its StepRecord."""
    session.require_running()
    token = first_token(command)
    if token not in TOOL_NAMES:
        observation, _ = execute_action(session, command, thought)
        return observation
    start = session.clock()
    try:
        outcome = _run_tool(session, token, command)
    except Exception as exc:  # tool bugs become observations, not crashes
        outcome = _Outcome(f"The {token} command failed: {exc}", exit_code=1)
    record = session.record_step(thought, command, outcome.observation,
                                 session.clock() - start, outcome.exit_code)
    if outcome.finalize_kind is not None:
        finalize(session, outcome.finalize_kind, outcome.finalize_detail)
    return record.observation


def _split_args(command: str) -> list[str] | None:
    try:
        return shlex.split(command)
    except ValueError:
        return None


def _body_of(command: str, sentinel: str) -> tuple[str, str] | None:
    """Split a multi-line command into its head line and body before ``sentinel``."""
    lines = command.splitlines()
    head = lines[0]
    rest = lines[1:]
    for i, line in enumerate(rest):
        if line.strip() == sentinel:
            return head, "\n".join(rest[:i])
    return None


def _run_tool(session: SessionState, name: str, command: str) -> _Outcome:
    if name == "edit":
        parsed = _body_of(command, EDIT_SENTINEL)
        if parsed is None:
            return _Outcome(
                f"Malformed edit: terminate the replacement text with a line "
                f"containing only {EDIT_SENTINEL}.", 1)
        head, body = parsed
        match = _EDIT_HEAD_RE.match(head.strip())
        if match is None:
            return _Outcome("Malformed edit: expected `edit <start_line>:<end_line>`.", 1)
        result = editor.edit_lines(session, int(match.group(1)), int(match.group(2)), body)
        return _Outcome(result.observation(), 0 if result.applied else 1)

    if name == "insert":
        parsed = _body_of(command, INSERT_SENTINEL)
        if parsed is None:
            return _Outcome(
                f"Malformed insert: terminate the text with a line containing "
                f"only {INSERT_SENTINEL}.", 1)
        head, body = parsed
        match = _INSERT_HEAD_RE.match(head.strip())
        if match is None:
            return _Outcome("Malformed insert: expected `insert <line_number>`.", 1)
        result = editor.insert_lines(session, int(match.group(1)), body)
        return _Outcome(result.observation(), 0 if result.applied else 1)

    if name in ("memory_write", "memory_read"):
        payload = command.strip()[len(name):].strip()
        return _memory_tool(session, name, payload)

    args = _split_args(command)
    if args is None:
        return _Outcome(f"Could not parse the {name} command arguments (unbalanced quotes?).", 1)
    args = args[1:]

    if name == "open":
        if not args:
            return _Outcome("Usage: open \"<path>\" [<line_number>]", 1)
        line = None
        if len(args) > 1:
            if not args[1].isdigit():
                return _Outcome(f"Line number must be an integer, got {args[1]!r}.", 1)
            line = int(args[1])
        return _Outcome(viewer.open_file(session, args[0], line))

    if name == "goto":
        if len(args) != 1 or not args[0].lstrip("-").isdigit():
            return _Outcome("Usage: goto <line_number>", 1)
        return _Outcome(viewer.goto(session, int(args[0])))

    if name in ("scroll_up", "scroll_down"):
        return _Outcome(viewer.scroll(session, name.split("_")[1]))

    if name == "create":
        if len(args) != 1:
            return _Outcome("Usage: create <filename>", 1)
        result = editor.create_file(session, args[0])
        return _Outcome(result.observation(), 0 if result.applied else 1)

    if name == "search_dir":
        if not args:
            return _Outcome("Usage: search_dir <search_term> [<dir>]", 1)
        return _Outcome(search.search_dir(session, args[0], args[1] if len(args) > 1 else None))

    if name == "search_file":
        if not args:
            return _Outcome("Usage: search_file <search_term> [<file>]", 1)
        return _Outcome(search.search_file(session, args[0], args[1] if len(args) > 1 else None))

    if name == "find_file":
        if not args:
            return _Outcome("Usage: find_file <file_name> [<dir>]", 1)
        return _Outcome(search.find_file(session, args[0], args[1] if len(args) > 1 else None))

    if name == "validate":
        report = evaluation.run_validation(session)
        return _Outcome(
            evaluation.validation_observation(session, report),
            0 if report.valid else 1,
        )

    if name == "submit":
        report = evaluation.run_validation(session)
        observation = evaluation.submission_observation(report)
        if report.valid:
            session.final_report = report
            return _Outcome(observation, 0, finalize_kind=TerminationKind.SUBMIT)
        return _Outcome(
            observation, 1,
            finalize_kind=TerminationKind.EVALUATION_ERROR,
            finalize_detail=f"submission evaluation failed: {report.raw_output[:500]}",
        )

    if name == "literature_search":
        if session.literature_fetcher is None:
            return _Outcome("No literature fetcher is configured for this session.", 1)
        if not args:
            return _Outcome("Usage: literature_search <query> [<num_results>]", 1)
        n = literature.DEFAULT_RESULTS
        if len(args) > 1 and args[-1].isdigit():
            n = int(args[-1])
            args = args[:-1]
        query = " ".join(args)
        return _Outcome(literature.literature_search(session.literature_fetcher, query, n))

    if name == "parse_pdf_url":
        if session.literature_fetcher is None:
            return _Outcome("No literature fetcher is configured for this session.", 1)
        if len(args) != 1:
            return _Outcome("Usage: parse_pdf_url <url>", 1)
        return _Outcome(literature.parse_pdf_url(session.literature_fetcher, args[0]))

    raise AssertionError(f"unhandled tool {name!r}")


def _memory_tool(session: SessionState, name: str, payload: str) -> _Outcome:
    if session.memory is None:
        return _Outcome("No memory store is configured for this session.", 1)
    store = session.memory
    if name == "memory_write":
        if not payload:
            return _Outcome("Cannot store an empty memory entry.", 1)
        record_id = store.write(payload, created_step=len(session.steps))
        record = store.records[-1]
        return _Outcome(f"Stored memory record {record_id} with tag {record.tag!r}.")
    if not payload:
        return _Outcome("Usage: memory_read <query>", 1)
    records = store.read(payload)
    if not records:
        return _Outcome("Memory is empty; nothing to retrieve.")
    lines = [f"Top {len(records)} memory record(s) for the query:"]
    for record in records:
        lines.append(f"[{record.id}] (tag: {record.tag}) {record.content}")
    return _Outcome("\n".join(lines))
