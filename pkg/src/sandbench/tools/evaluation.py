"""Validation and submission: running the task's evaluation script.

The metric contract is language-agnostic: the script must print a single
JSON object mapping metric names to numbers as the last line of stdout
and exit 0.  Anything else produces an invalid report, which is logged
but never counts as an attempt.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from sandbench.environment.session import SessionState
from sandbench.environment.workspace import EVAL_DIR, eval_script_path


@dataclass
class ValidationReport:
    metrics: dict[str, float]
    raw_output: str
    valid: bool
    # Monotonic per-session marker: strictly increasing across reports.
    timestamp: int = 0


def _parse_metrics(output: str) -> dict[str, float] | None:
    lines = [line for line in output.strip().splitlines() if line.strip()]
    if not lines:
        return None
    try:
        payload = json.loads(lines[-1])
    except json.JSONDecodeError:
        return None
    if not isinstance(payload, dict) or not payload:
        return None
    metrics: dict[str, float] = {}
    for key, value in payload.items():
        if not isinstance(value, (int, float)) or isinstance(value, bool):
            return None
        metrics[str(key)] = float(value)
    return metrics


def _eval_command(session: SessionState) -> str:
    # Invoke by workspace-relative path so the script's own error messages
    # stay stable across workspace locations (replay verification relies
    # on observation equality).
    script = eval_script_path(session.spec)
    relative = Path("..") / EVAL_DIR / script.name
    if script.suffix == ".py":
        return f'python3 "{relative}"'
    return f'"{relative}"'


def run_validation(session: SessionState, log: bool = True) -> ValidationReport:
    """Execute the read-only evaluation script against the workspace.

    Valid reports are appended to the session's attempt log (keyed by the
    step index about to be recorded); every report lands in the report
    log.  Evaluation failures never raise: they come back as invalid
    reports with the script output attached.
    """
    try:
        result = session.executor.run(
            _eval_command(session),
            cwd=session.workspace_dir,
            timeout=session.config.command_timeout,
        )
        raw = result.output
        exit_code = result.exit_code
    except Exception as exc:
        raw = f"evaluation failed to run: {exc}"
        exit_code = -1
    metrics = _parse_metrics(raw) if exit_code == 0 else None
    report = ValidationReport(
        metrics=metrics or {},
        raw_output=raw,
        valid=metrics is not None,
        timestamp=len(session.report_log),
    )
    if log:
        session.report_log.append(report)
        if report.valid:
            session.attempt_log.append((len(session.steps), report))
    return report


def validation_observation(session: SessionState, report: ValidationReport) -> str:
    if report.valid:
        return (
            "Validation succeeded. Current metrics on the test set: "
            + json.dumps(report.metrics, sort_keys=True)
        )
    detail = report.raw_output.strip() or "(no output)"
    return (
        "Validation failed; no valid metrics were produced. Make sure the "
        "required submission artifact exists and the evaluation can read it.\n"
        f"Evaluation output:\n{detail}"
    )


def submission_observation(report: ValidationReport) -> str:
    if report.valid:
        return (
            "Submission accepted. Final metrics: "
            + json.dumps(report.metrics, sort_keys=True)
        )
    detail = report.raw_output.strip() or "(no output)"
    return (
        "Submission failed evaluation; the session is terminated.\n"
        f"Evaluation output:\n{detail}"
    )
