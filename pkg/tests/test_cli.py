from __future__ import annotations

import json
from pathlib import Path

from sandbench.cli import main

from conftest import write_task_config

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def run_cli(*argv) -> int:
    return main([str(a) for a in argv])


def test_report_reproduces_committed_goldens(tmp_path):
    out = tmp_path / "report"
    code = run_cli(
        "report",
        "--attempt", FIXTURES / "best_attempt_scores.csv",
        "--submission", FIXTURES / "best_submission_scores.csv",
        "--reference", FIXTURES / "published_aup.json",
        "--output", out,
    )
    assert code == 0
    assert (out / "report.json").read_bytes() == (FIXTURES / "golden" / "report-full.json").read_bytes()
    assert (out / "report.txt").read_bytes() == (FIXTURES / "golden" / "report-full.txt").read_bytes()


def test_report_rank_subset_reproduces_goldens(tmp_path):
    tasks = json.loads((FIXTURES / "rank_tasks.json").read_text())
    out = tmp_path / "report"
    code = run_cli(
        "report",
        "--attempt", FIXTURES / "best_attempt_scores.csv",
        "--submission", FIXTURES / "best_submission_scores.csv",
        "--reference", FIXTURES / "published_aup.json",
        "--tasks", *tasks,
        "--output", out,
    )
    assert code == 0
    assert (out / "report.json").read_bytes() == (FIXTURES / "golden" / "report-ranks.json").read_bytes()


def test_report_single_table_single_method_unit_area(tmp_path):
    csv = tmp_path / "one.csv"
    csv.write_text(
        "task,method,run,score,direction,baseline\n"
        "t,only,0,5.0,lower,10.0\n"
    )
    out = tmp_path / "r"
    assert run_cli("report", "--attempt", csv, "--output", out) == 0
    report = json.loads((out / "report.json").read_text())
    entry = report["aup"]["raw"]
    assert entry["values"]["attempt"]["only"] == entry["tau_max"] - 1.0


def test_report_malformed_csv_exits_nonzero(tmp_path, capsys):
    csv = tmp_path / "bad.csv"
    csv.write_text(
        "task,method,run,score,direction,baseline\n"
        "t,m,zero,1.0,higher,0.0\n"
    )
    code = run_cli("report", "--attempt", csv, "--output", tmp_path / "r")
    assert code == 1
    assert "row 2" in capsys.readouterr().err


def test_report_without_tables_is_usage_error(tmp_path, capsys):
    assert run_cli("report", "--output", tmp_path / "r") == 2


def test_gen_sat_writes_dimacs_and_manifest(tmp_path):
    out = tmp_path / "batch"
    code = run_cli(
        "gen-sat", "--count", 5, "--n-min", 10, "--n-max", 20,
        "--ratio", 4.3, "--seed", 3, "--output", out,
    )
    assert code == 0
    files = sorted(out.glob("instance-*.cnf"))
    assert len(files) == 5
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest == {
        "seed": 3, "n_range": [10, 20], "ratio": 4.3, "count": 5,
        "generator": "fixed",
    }


def test_gen_sat_deterministic(tmp_path):
    for d in ("a", "b"):
        assert run_cli(
            "gen-sat", "--count", 3, "--n-min", 8, "--n-max", 12,
            "--seed", 1, "--output", tmp_path / d,
        ) == 0
    for i in range(3):
        a = (tmp_path / "a" / f"instance-{i}.cnf").read_bytes()
        b = (tmp_path / "b" / f"instance-{i}.cnf").read_bytes()
        assert a == b


def test_play_game_baseline_score(capsys):
    assert run_cli("play-game", "--game", "pd", "--episodes", 20, "--seed", 1) == 0
    payload = json.loads(capsys.readouterr().out.strip())
    assert payload["game_id"] == "pd"
    assert 0.0 <= payload["score"] <= 5.0


def test_play_game_external_strategy(tmp_path, capsys):
    strategy = tmp_path / "always_defect.py"
    strategy.write_text(
        "import json, sys\n"
        "json.load(sys.stdin)\n"
        "print(json.dumps({'action': 'defect'}))\n"
    )
    code = run_cli(
        "play-game", "--game", "pd", "--episodes", 2, "--rounds", 3,
        "--strategy-cmd", f"python3 {strategy}",
    )
    assert code == 0
    payload = json.loads(capsys.readouterr().out.strip())
    assert payload["score"] > 0.0


def test_run_and_replay_round_trip(task_inputs, tmp_path, capsys):
    task_path = write_task_config(task_inputs, tmp_path / "task.json")
    script = tmp_path / "actions.txt"
    script.write_text("ls\necho 0.5 > solution.txt\nvalidate\nsubmit\n")
    out = tmp_path / "runs"
    code = run_cli(
        "run", "--task", task_path, "--script", script,
        "--seeds", 0, 1, "--output", out,
    )
    assert code == 0
    stdout = capsys.readouterr().out
    assert "seed 0: submitted (submit) after 4 steps" in stdout
    assert (out / "toy-seed0.trajectory.jsonl").exists()
    assert (out / "toy-seed1.summary.json").exists()

    code = run_cli(
        "replay",
        "--task", task_path,
        "--trajectory", out / "toy-seed0.trajectory.jsonl",
        "--workdir", tmp_path / "replay-root",
    )
    assert code == 0
    assert "reproduced all 4 observations" in capsys.readouterr().out


def test_analyze_over_run_outputs(task_inputs, tmp_path, capsys):
    task_path = write_task_config(task_inputs, tmp_path / "task.json")
    script = tmp_path / "actions.txt"
    script.write_text("ls\necho 0.5 > solution.txt\nvalidate\nsubmit\n")
    out = tmp_path / "runs"
    assert run_cli("run", "--task", task_path, "--script", script,
                   "--seeds", 0, "--output", out) == 0
    capsys.readouterr()
    assert run_cli("analyze", out, "--grouping", "by-model") == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["trajectories"] == 1
    assert payload["outcomes"] == {"completed": 1}
    assert payload["action_counts"]["scripted/Validate"] == 1
    assert payload["action_counts"]["scripted/Submit"] == 1
    assert payload["action_counts"]["scripted/Bash"] == 2


def test_committed_demo_task_runs_and_replays(tmp_path, capsys):
    out = tmp_path / "demo"
    code = run_cli(
        "run", "--task", FIXTURES / "demo-task" / "task.json",
        "--script", FIXTURES / "demo-task" / "actions.txt",
        "--seeds", 0, "--output", out,
    )
    assert code == 0
    assert "seed 0: submitted (submit) after 7 steps" in capsys.readouterr().out
    summary = json.loads((out / "demo-seed0.summary.json").read_text())
    assert summary["final_metrics"] == {"score": 0.85}
    code = run_cli(
        "replay", "--task", FIXTURES / "demo-task" / "task.json",
        "--trajectory", out / "demo-seed0.trajectory.jsonl",
        "--workdir", tmp_path / "replayed",
    )
    assert code == 0


def test_duplicate_seeds_rejected(task_inputs, tmp_path, capsys):
    task_path = write_task_config(task_inputs, tmp_path / "task.json")
    script = tmp_path / "actions.txt"
    script.write_text("submit\n")
    code = run_cli("run", "--task", task_path, "--script", script,
                   "--seeds", 1, 1, "--output", tmp_path / "o")
    assert code == 1
    assert "distinct" in capsys.readouterr().err
