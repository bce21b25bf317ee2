"""Exact best response against a memory-one opponent.

The search space is the deterministic memory-one class for player 1: a
first-round action plus one action per possible previous joint action.
For each candidate the expected total payoff is computed exactly by
propagating the joint-action distribution round by round, so the returned
value carries no sampling error.  The class is exhaustive, which bounds
the supported game size.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from sandbench.games.core import Action, NormalFormGame
from sandbench.games.strategies import MemoryOneStrategy

MAX_ACTIONS_PER_SIDE = 3
MAX_ROUNDS = 20


@dataclass
class BestResponse:
    strategy: MemoryOneStrategy
    value: float  # expected per-round payoff for player 1


def _exact_value(first: Action, policy: dict[tuple[Action, Action], Action],
                 opponent: MemoryOneStrategy, game: NormalFormGame, k: int) -> float:
    """Expected total payoff of a deterministic memory-one player 1 strategy."""
    dist: dict[tuple[Action, Action], float] = {}
    for a2, p in opponent.distribution_after(None).items():
        if p > 0.0:
            dist[(first, a2)] = dist.get((first, a2), 0.0) + p
    total = 0.0
    for round_index in range(k):
        total += sum(p * game.payoff[joint][0] for joint, p in dist.items())
        if round_index == k - 1:
            break
        nxt: dict[tuple[Action, Action], float] = {}
        for joint, p in dist.items():
            a1 = policy[joint]
            for a2, q in opponent.distribution_after(joint).items():
                if q > 0.0:
                    key = (a1, a2)
                    nxt[key] = nxt.get(key, 0.0) + p * q
        dist = nxt
    return total


def best_response_oracle(opponent: MemoryOneStrategy, game: NormalFormGame,
                         k: int = 20) -> BestResponse:
    """Exhaustive search over deterministic memory-one strategies for player 1."""
    if not isinstance(opponent, MemoryOneStrategy):
        raise TypeError(
            "the oracle needs a memory-one opponent with explicit distributions; "
            f"got {type(opponent).__name__}"
        )
    if opponent.role != 2:
        raise ValueError("opponent must play role 2")
    n1 = len(game.actions_p1)
    n2 = len(game.actions_p2)
    if n1 > MAX_ACTIONS_PER_SIDE or n2 > MAX_ACTIONS_PER_SIDE:
        raise ValueError(
            f"game {game.game_id!r} has {n1}x{n2} actions; the exhaustive oracle "
            f"supports at most {MAX_ACTIONS_PER_SIDE} per side"
        )
    if k > MAX_ROUNDS:
        raise ValueError(f"oracle supports at most {MAX_ROUNDS} rounds, got {k}")
    joints = [(a1, a2) for a1 in game.actions_p1 for a2 in game.actions_p2]
    best_value = None
    best_first = None
    best_policy = None
    for first in game.actions_p1:
        for responses in itertools.product(game.actions_p1, repeat=len(joints)):
            policy = dict(zip(joints, responses))
            value = _exact_value(first, policy, opponent, game, k)
            if best_value is None or value > best_value:
                best_value = value
                best_first = first
                best_policy = policy
    transitions = {joint: {action: 1.0} for joint, action in best_policy.items()}
    strategy = MemoryOneStrategy(
        f"best-response-to-{opponent.name}", 1, {best_first: 1.0}, transitions
    )
    return BestResponse(strategy=strategy, value=best_value / k)
