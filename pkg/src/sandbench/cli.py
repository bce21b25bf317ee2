"""Command-line front end.

Subcommands:

    run        drive scripted episodes over a task config, one per seed
    replay     re-execute a recorded trajectory and verify observations
    report     score tables -> aggregation, AUP, Borda rank tables
    gen-sat    write a seeded batch of random 3-SAT instances
    play-game  score a strategy against a built-in opponent
    analyze    action/termination statistics over trajectory files

All outputs are data files (JSON/CSV/DIMACS); nothing here renders plots.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from sandbench.evaluation.report import ReportSpec, build_report, render_text


def _cmd_run(args: argparse.Namespace) -> int:
    from dataclasses import replace
    from decimal import Decimal

    from sandbench.agent.clients import ScriptedClient
    from sandbench.agent.config import ModelConfig
    from sandbench.runner import RunManifest, run_manifest

    config = ModelConfig.load(args.model) if args.model else ModelConfig(name="scripted")
    overrides = {}
    if args.temperature is not None:
        overrides["temperature"] = args.temperature
    if args.top_p is not None:
        overrides["top_p"] = args.top_p
    if args.context_limit is not None:
        overrides["context_limit"] = args.context_limit
    if args.cost_limit is not None:
        overrides["cost_limit"] = Decimal(args.cost_limit)
    if overrides:
        config = replace(config, **overrides)

    manifest = RunManifest(
        task_config=Path(args.task),
        model_config=Path(args.model) if args.model else None,
        output_dir=Path(args.output),
        seeds=tuple(args.seeds),
        executor=args.executor,
    )
    if args.script:
        def client_factory(seed: int):
            return ScriptedClient.from_file(args.script)
    else:
        from sandbench.agent.clients import HTTPClient

        def client_factory(seed: int):
            return HTTPClient(config)

    summaries = run_manifest(manifest, client_factory, model_config=config)
    for summary in summaries:
        print(
            f"seed {summary['seed']}: {summary['status']} "
            f"({summary['termination']['kind']}) after {summary['steps']} steps"
        )
    return 0


def _cmd_replay(args: argparse.Namespace) -> int:
    from sandbench.environment.trajectory import load_trajectory, replay_actions
    from sandbench.runner import TaskConfig, build_session

    trajectory = load_trajectory(args.trajectory)
    task = TaskConfig.load(args.task)
    session = build_session(task, Path(args.workdir), trajectory.seed)
    mismatches = replay_actions(session, trajectory)
    if mismatches:
        print(f"replay diverged on {len(mismatches)} step(s):")
        for entry in mismatches[:10]:
            print(f"  step {entry['index']}")
        return 1
    print(f"replay reproduced all {len(trajectory.steps)} observations")
    return 0


def _cmd_report(args: argparse.Namespace) -> int:
    tables = {}
    if args.attempt:
        tables["attempt"] = Path(args.attempt)
    if args.submission:
        tables["submission"] = Path(args.submission)
    if not tables:
        print("report: provide --attempt and/or --submission score tables", file=sys.stderr)
        return 2
    spec = ReportSpec(
        tables=tables,
        tasks=args.tasks,
        reference_path=Path(args.reference) if args.reference else None,
    )
    report = build_report(spec)
    output = Path(args.output)
    output.mkdir(parents=True, exist_ok=True)
    (output / "report.json").write_text(
        json.dumps(report, indent=2, sort_keys=True) + "\n"
    )
    (output / "report.txt").write_text(render_text(report) + "\n")
    print(f"wrote {output / 'report.json'} and {output / 'report.txt'}")
    return 0


def _cmd_gen_sat(args: argparse.Namespace) -> int:
    from sandbench.sat.cnf import write_dimacs
    from sandbench.sat.generate import BatchManifest, generate_instances

    manifest = BatchManifest(
        seed=args.seed,
        n_range=(args.n_min, args.n_max),
        ratio=args.ratio,
        count=args.count,
        generator=args.generator,
    )
    instances = generate_instances(
        count=manifest.count,
        n_range=manifest.n_range,
        ratio=manifest.ratio,
        seed=manifest.seed,
        generator=manifest.generator,
    )
    output = Path(args.output)
    output.mkdir(parents=True, exist_ok=True)
    width = len(str(max(len(instances) - 1, 0)))
    for i, instance in enumerate(instances):
        write_dimacs(instance, output / f"instance-{i:0{width}d}.cnf")
    manifest.dump(output / "manifest.json")
    print(f"wrote {len(instances)} instances to {output}")
    return 0


def _cmd_play_game(args: argparse.Namespace) -> int:
    from sandbench.games.tasks import GameTaskConfig, run_game_task

    config = GameTaskConfig(
        game_id=args.game,
        k=args.rounds,
        episodes=args.episodes,
        seed=args.seed,
    )
    command = args.strategy_cmd.split() if args.strategy_cmd else None
    score = run_game_task(config, candidate_command=command)
    payload = {
        "game_id": config.game_id,
        "rounds": config.k,
        "episodes": config.episodes,
        "seed": config.seed,
        "score": score if score is not None else "inf",
    }
    print(json.dumps(payload, sort_keys=True))
    return 0 if score is not None else 1


def _cmd_analyze(args: argparse.Namespace) -> int:
    from sandbench.analysis import (
        histogram,
        outcome_distribution,
        termination_distribution,
    )
    from sandbench.environment.trajectory import load_trajectory

    paths: list[Path] = []
    for entry in args.trajectories:
        path = Path(entry)
        if path.is_dir():
            paths.extend(sorted(path.glob("*.trajectory.jsonl")))
        else:
            paths.append(path)
    if not paths:
        print("analyze: no trajectory files found", file=sys.stderr)
        return 2
    trajectories = [load_trajectory(p) for p in paths]
    hist = histogram(trajectories, args.grouping)
    payload = {
        "trajectories": len(trajectories),
        "grouping": hist.grouping,
        "action_counts": {
            f"{key}/{category.value}": count
            for (key, category), count in sorted(
                hist.counts.items(), key=lambda kv: (kv[0][0], kv[0][1].value)
            )
        },
        "termination_errors": termination_distribution(trajectories),
        "outcomes": {
            outcome.value: count
            for outcome, count in sorted(
                outcome_distribution(trajectories).items(), key=lambda kv: kv[0].value
            )
        },
    }
    text = json.dumps(payload, indent=2, sort_keys=True)
    if args.output:
        Path(args.output).write_text(text + "\n")
    print(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sandbench",
        description="sandboxed agent harness, task packs, and benchmark scoring",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run scripted or live episodes over a task")
    p.add_argument("--task", required=True, help="task config JSON")
    p.add_argument("--model", help="model config JSON")
    p.add_argument("--script", help="file of commands for the scripted client")
    p.add_argument("--seeds", type=int, nargs="+", default=[0, 1, 2, 3])
    p.add_argument("--output", required=True, help="output directory")
    p.add_argument("--executor", default="local", choices=["local"])
    # field-level overrides of the model config
    p.add_argument("--temperature", type=float)
    p.add_argument("--top-p", dest="top_p", type=float)
    p.add_argument("--context-limit", dest="context_limit", type=int)
    p.add_argument("--cost-limit", dest="cost_limit", help="spend ceiling in USD")
    p.set_defaults(func=_cmd_run)

    p = sub.add_parser("replay", help="re-execute a recorded trajectory")
    p.add_argument("--task", required=True, help="task config JSON")
    p.add_argument("--trajectory", required=True, help="trajectory JSONL file")
    p.add_argument("--workdir", required=True, help="fresh workspace root")
    p.set_defaults(func=_cmd_replay)

    p = sub.add_parser("report", help="aggregate score tables into AUP and rank tables")
    p.add_argument("--attempt", help="best-attempt score CSV")
    p.add_argument("--submission", help="best-submission score CSV")
    p.add_argument("--tasks", nargs="+", help="restrict to these tasks")
    p.add_argument("--reference", help="published aggregate values JSON for calibration")
    p.add_argument("--output", required=True, help="output directory")
    p.set_defaults(func=_cmd_report)

    p = sub.add_parser("gen-sat", help="generate a seeded 3-SAT batch as DIMACS files")
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--n-min", type=int, default=50)
    p.add_argument("--n-max", type=int, default=100)
    p.add_argument("--ratio", type=float, default=4.3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--generator", default="fixed", choices=["fixed", "pair"])
    p.add_argument("--output", required=True)
    p.set_defaults(func=_cmd_gen_sat)

    p = sub.add_parser("play-game", help="score a strategy against a built-in opponent")
    p.add_argument("--game", required=True, choices=["pd", "bos", "blotto"])
    p.add_argument("--rounds", type=int, default=20)
    p.add_argument("--episodes", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument(
        "--strategy-cmd",
        help="external strategy command speaking the JSON wire protocol "
        "(default: the built-in baseline strategy)",
    )
    p.set_defaults(func=_cmd_play_game)

    p = sub.add_parser("analyze", help="action and termination statistics")
    p.add_argument("trajectories", nargs="+", help="trajectory files or directories")
    p.add_argument("--grouping", default="by-model",
                   choices=["by-model", "by-task", "by-step"])
    p.add_argument("--output", help="also write the JSON payload here")
    p.set_defaults(func=_cmd_analyze)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except Exception as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
