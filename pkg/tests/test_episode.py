from __future__ import annotations

from decimal import Decimal

from sandbench.agent.clients import CassetteClient, ScriptedClient
from sandbench.agent.config import ModelConfig
from sandbench.environment.session import SessionStatus
from sandbench.runner import TaskConfig, run_one

from conftest import FakeClock, write_task_config

MODEL = ModelConfig(name="scripted")


def scripted(commands):
    return ScriptedClient.from_commands(commands)


def load_task(task_inputs, tmp_path, **overrides) -> TaskConfig:
    path = write_task_config(task_inputs, tmp_path / "task.json", **overrides)
    return TaskConfig.load(path)


def test_ls_then_submit(task_inputs, tmp_path):
    task = load_task(task_inputs, tmp_path)
    client = scripted(["echo 0.4 > solution.txt", "submit"])
    session, result = run_one(task, client, MODEL, tmp_path / "run", seed=0,
                              clock=FakeClock())
    assert result.termination.kind == "submit"
    assert session.status == SessionStatus.SUBMITTED
    assert result.steps_taken == 2


def test_sixty_actions_autosubmit_at_fifty(task_inputs, tmp_path):
    task = load_task(task_inputs, tmp_path)
    commands = ["echo 0.1 > solution.txt"] + ["true"] * 59
    session, result = run_one(task, scripted(commands), MODEL, tmp_path / "run",
                              seed=0, clock=FakeClock())
    assert result.steps_taken == 50
    assert result.termination.kind == "autosubmit"
    assert session.status == SessionStatus.AUTO_SUBMITTED
    assert session.final_report.metrics == {"score": 0.1}


def test_garbage_thrice_is_format_error(task_inputs, tmp_path):
    task = load_task(task_inputs, tmp_path)
    client = ScriptedClient(["nonsense", "more nonsense", "still nothing"])
    session, result = run_one(task, client, MODEL, tmp_path / "run", seed=0,
                              clock=FakeClock())
    assert result.termination.kind == "format-error"
    assert session.steps == []


def test_retry_recovers_from_one_bad_response(task_inputs, tmp_path):
    task = load_task(task_inputs, tmp_path)
    client = ScriptedClient([
        "no fence at all",
        "DISCUSSION\nok\n```\necho 0.2 > solution.txt\n```",
        "DISCUSSION\nship\n```\nsubmit\n```",
    ])
    session, result = run_one(task, client, MODEL, tmp_path / "run", seed=0,
                              clock=FakeClock())
    assert result.termination.kind == "submit"
    assert result.steps_taken == 2


def test_cost_limit_terminates(task_inputs, tmp_path):
    task = load_task(task_inputs, tmp_path)
    model = ModelConfig(
        name="pricey",
        price_per_million_input=Decimal("1000000"),
        cost_limit=Decimal("0.5"),
    )
    client = scripted(["true", "true", "true"])
    session, result = run_one(task, client, model, tmp_path / "run", seed=0,
                              clock=FakeClock())
    assert result.termination.kind == "cost-limit-exceeded"
    assert result.ledger.spend > Decimal("0.5")


def test_context_limit_terminates(task_inputs, tmp_path):
    task = load_task(task_inputs, tmp_path)
    model = ModelConfig(name="tiny", context_limit=50)
    client = scripted(["true"] * 5)
    session, result = run_one(task, client, model, tmp_path / "run", seed=0,
                              clock=FakeClock())
    assert result.termination.kind == "context-length-exceeded"


def test_exhausted_script_is_runtime_error(task_inputs, tmp_path):
    task = load_task(task_inputs, tmp_path)
    client = scripted(["true"])  # loop wants more
    session, result = run_one(task, client, MODEL, tmp_path / "run", seed=0,
                              clock=FakeClock())
    assert result.termination.kind == "runtime-error"
    assert "model client failed" in result.termination.detail


def test_cassette_client_reports_usage(task_inputs, tmp_path):
    task = load_task(task_inputs, tmp_path)
    records = [
        {"text": "DISCUSSION\nx\n```\necho 0.3 > solution.txt\n```",
         "input_tokens": 100, "output_tokens": 10},
        {"text": "DISCUSSION\nx\n```\nsubmit\n```",
         "input_tokens": 120, "output_tokens": 8},
    ]
    model = ModelConfig(
        name="m",
        price_per_million_input=Decimal("2"),
        price_per_million_output=Decimal("4"),
    )
    session, result = run_one(task, CassetteClient(records), model,
                              tmp_path / "run", seed=0, clock=FakeClock())
    assert result.termination.kind == "submit"
    assert result.ledger.input_tokens == 220
    assert result.ledger.output_tokens == 18
    assert not result.ledger.approximate


def test_scripted_usage_is_flagged_approximate(task_inputs, tmp_path):
    task = load_task(task_inputs, tmp_path)
    client = scripted(["echo 0.4 > solution.txt", "submit"])
    _, result = run_one(task, client, MODEL, tmp_path / "run", seed=0,
                        clock=FakeClock())
    assert result.ledger.approximate
    assert result.ledger.input_tokens > 0


def test_replay_determinism_byte_identical(task_inputs, tmp_path):
    task = load_task(task_inputs, tmp_path)
    commands = [
        "ls",
        "create notes.txt",
        "edit 1:1\nhello world\nend_of_edit",
        "echo 0.6 > solution.txt",
        "validate",
        "submit",
    ]
    paths = []
    for label in ("a", "b"):
        trajectory = tmp_path / f"{label}.jsonl"
        run_one(task, scripted(commands), MODEL, tmp_path / f"run-{label}",
                seed=7, trajectory_path=trajectory, clock=FakeClock())
        paths.append(trajectory)
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_single_action_per_step(task_inputs, tmp_path):
    task = load_task(task_inputs, tmp_path)
    commands = ["ls", "pwd", "echo 0.1 > solution.txt", "submit"]
    session, result = run_one(task, scripted(commands), MODEL, tmp_path / "run",
                              seed=0, clock=FakeClock())
    assert [s.action for s in session.steps] == commands
    assert [s.thought for s in session.steps] == ["scripted step"] * 4
