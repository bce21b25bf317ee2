"""Repeated-game matches and Monte-Carlo strategy scoring."""

from __future__ import annotations

import random
from dataclasses import dataclass

from sandbench.games.core import Action, ActionHistory, NormalFormGame
from sandbench.games.strategies import StrategyFault, StrategyProgram

DEFAULT_ROUNDS = 20
DEFAULT_EPISODES = 100


@dataclass
class MatchOutcome:
    history: ActionHistory
    total_payoff: tuple[float, float]
    average_payoff: tuple[float, float]
    rounds: int


def _stream(seed: int, label: str) -> random.Random:
    # String seeding is stable across processes and platforms.
    return random.Random(f"game:{label}:{seed}")


def _validate_action(game: NormalFormGame, role: int, action: Action,
                     strategy: StrategyProgram) -> Action:
    if isinstance(action, list):
        action = tuple(action)
    if action not in game.actions_for(role):
        raise StrategyFault(
            f"strategy {strategy.name!r} returned {action!r}, which is not a "
            f"legal action for player {role} in game {game.game_id!r}"
        )
    return action


def play_match(s1: StrategyProgram, s2: StrategyProgram, game: NormalFormGame,
               k: int = DEFAULT_ROUNDS, seed: int = 0) -> MatchOutcome:
    """Play k simultaneous rounds.

    Each strategy receives a private copy of the completed-round history,
    so neither can observe the current round's opposing action or corrupt
    the engine's record.  Randomness is split into one stream per player.
    """
    if s1.role != 1 or s2.role != 2:
        raise ValueError(
            f"role mismatch: got roles ({s1.role}, {s2.role}), expected (1, 2)"
        )
    if k < 1:
        raise ValueError("a match needs at least one round")
    rng1 = _stream(seed, f"{game.game_id}:p1")
    rng2 = _stream(seed, f"{game.game_id}:p2")
    history = ActionHistory()
    total1 = 0.0
    total2 = 0.0
    for _ in range(k):
        a1 = _validate_action(game, 1, s1.act(history.copy(), rng1), s1)
        a2 = _validate_action(game, 2, s2.act(history.copy(), rng2), s2)
        u1, u2 = game.utilities(a1, a2)
        total1 += u1
        total2 += u2
        history.rounds.append((a1, a2))
    return MatchOutcome(
        history=history,
        total_payoff=(total1, total2),
        average_payoff=(total1 / k, total2 / k),
        rounds=k,
    )


def estimate_score(candidate: StrategyProgram, opponent: StrategyProgram,
                   game: NormalFormGame, k: int = DEFAULT_ROUNDS,
                   episodes: int = DEFAULT_EPISODES, seed: int = 0) -> float | None:
    """Mean per-round payoff of player 1 over seeded episodes.

    This is the task score for a submitted strategy.  A strategy fault
    yields None, the invalid-score sentinel.
    """
    if episodes < 1:
        raise ValueError("episodes must be at least 1")
    try:
        total = 0.0
        for episode in range(episodes):
            # Per-episode streams derived by seed splitting.
            outcome = play_match(candidate, opponent, game, k,
                                 seed=seed * 1_000_003 + episode)
            total += outcome.average_payoff[0]
        return total / episodes
    except StrategyFault:
        return None
