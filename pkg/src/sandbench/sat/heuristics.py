"""Branching heuristics for the DPLL solver.

Built-ins are in-process callables; ``script_heuristic`` adapts an
external program speaking JSON over stdin/stdout so agent-authored
heuristics can plug into the same solver.
"""

from __future__ import annotations

import json
import random
import subprocess
from typing import Callable

from sandbench.sat.dpll import HeuristicChoice, HeuristicFault, SolverState


def random_heuristic(seed: int) -> Callable[[SolverState], HeuristicChoice]:
    """Uniform choice among unassigned variables with uniform polarity.

    Returns a fresh callable with its own seeded stream, so a fixed seed
    reproduces the exact branching sequence.
    """
    rng = random.Random(f"sat-random-heuristic:{seed}")

    def choose(state: SolverState) -> HeuristicChoice:
        candidates = state.unassigned_vars()
        if not candidates:
            raise HeuristicFault("no unassigned variables to branch on")
        return HeuristicChoice(rng.choice(candidates), rng.random() < 0.5)

    return choose


def frequency_heuristic(state: SolverState) -> HeuristicChoice:
    """Branch on the unassigned variable occurring most often in open clauses.

    Polarity follows the majority literal sign; ties prefer the lowest
    variable index and positive polarity.
    """
    best_var = None
    best_count = -1
    best_pos = 0
    for var in state.unassigned_vars():
        pos, neg = state.literal_counts(var)
        count = pos + neg
        if count > best_count:
            best_var, best_count, best_pos = var, count, pos
    if best_var is None:
        raise HeuristicFault("no unassigned variables to branch on")
    pos, neg = best_pos, best_count - best_pos
    return HeuristicChoice(best_var, pos >= neg)


def first_unassigned_heuristic(state: SolverState) -> HeuristicChoice:
    """Deterministic lowest-index branching; useful as a cheap tiebreak-free order."""
    candidates = state.unassigned_vars()
    if not candidates:
        raise HeuristicFault("no unassigned variables to branch on")
    return HeuristicChoice(candidates[0], True)


def script_heuristic(command: list[str], timeout: float = 30.0) -> Callable[[SolverState], HeuristicChoice]:
    """Adapt an external program to the heuristic interface.

    Per call, the program receives ``{"num_vars", "assignment", "clauses"}``
    on stdin and must print ``{"variable": int, "polarity": bool}``.
    """

    def choose(state: SolverState) -> HeuristicChoice:
        payload = json.dumps(state.as_json())
        try:
            proc = subprocess.run(
                command,
                input=payload,
                capture_output=True,
                text=True,
                timeout=timeout,
            )
        except (OSError, subprocess.TimeoutExpired) as exc:
            raise HeuristicFault(f"heuristic process failed: {exc}") from exc
        if proc.returncode != 0:
            raise HeuristicFault(
                f"heuristic process exited {proc.returncode}: {proc.stderr.strip()}"
            )
        try:
            reply = json.loads(proc.stdout.strip().splitlines()[-1])
            return HeuristicChoice(int(reply["variable"]), bool(reply["polarity"]))
        except (ValueError, KeyError, IndexError) as exc:
            raise HeuristicFault(f"malformed heuristic reply: {proc.stdout!r}") from exc

    return choose
