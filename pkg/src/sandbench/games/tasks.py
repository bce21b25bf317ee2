"""Game task configs: wire a candidate strategy against the built-in opponent."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from sandbench.games.catalog import (
    BLOTTO_BUDGET,
    BLOTTO_FIELDS,
    BLOTTO_ID,
    BOS_ID,
    PD_ID,
    VENUE_1,
    game_by_id,
)
from sandbench.games.match import DEFAULT_EPISODES, DEFAULT_ROUNDS, estimate_score
from sandbench.games.opponents import builtin_opponent
from sandbench.games.strategies import (
    MemoryOneStrategy,
    StrategyProgram,
    constant_strategy,
    script_strategy,
    tit_for_tat,
)


@dataclass(frozen=True)
class GameTaskConfig:
    game_id: str
    k: int = DEFAULT_ROUNDS
    episodes: int = DEFAULT_EPISODES
    opponent_id: str = "builtin"
    seed: int = 0

    @classmethod
    def load(cls, path: str | Path) -> "GameTaskConfig":
        payload = json.loads(Path(path).read_text())
        return cls(
            game_id=payload["game_id"],
            k=payload.get("k", DEFAULT_ROUNDS),
            episodes=payload.get("episodes", DEFAULT_EPISODES),
            opponent_id=payload.get("opponent_id", "builtin"),
            seed=payload.get("seed", 0),
        )

    def dump(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.__dict__, indent=2) + "\n")


def baseline_strategy(game_id: str) -> StrategyProgram:
    """The reference strategy whose score anchors feasibility for each game."""
    if game_id == PD_ID:
        return tit_for_tat(role=1)
    if game_id == BOS_ID:
        # Stubbornly propose the preferred venue and copy the opponent once
        # coordination is established.
        return MemoryOneStrategy(
            "bos-baseline", 1, {VENUE_1: 1.0}, lambda last: {last[1]: 1.0}
        )
    if game_id == BLOTTO_ID:
        even = _even_allocation(BLOTTO_FIELDS, BLOTTO_BUDGET)
        return constant_strategy("blotto-baseline", 1, even)
    raise ValueError(f"no baseline strategy for game id {game_id!r}")


def _even_allocation(fields: int, budget: int) -> tuple[int, ...]:
    base = budget // fields
    extra = budget % fields
    return tuple(base + (1 if i < extra else 0) for i in range(fields))


def run_game_task(config: GameTaskConfig,
                  candidate: StrategyProgram | None = None,
                  candidate_command: list[str] | None = None) -> float | None:
    """Score a candidate (in-process or external script) against the task opponent."""
    game = game_by_id(config.game_id)
    if config.opponent_id != "builtin":
        raise ValueError(f"unknown opponent id {config.opponent_id!r}")
    opponent = builtin_opponent(config.game_id, role=2)
    if candidate is None:
        if candidate_command is None:
            candidate = baseline_strategy(config.game_id)
        else:
            candidate = script_strategy(
                "submitted-strategy", 1, config.game_id, candidate_command
            )
    return estimate_score(
        candidate, opponent, game, k=config.k,
        episodes=config.episodes, seed=config.seed,
    )
