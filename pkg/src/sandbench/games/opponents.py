"""The built-in opponent bots, one per game.

Mixture weights are module constants so experiments can document the
exact opponent they ran against; the bots for the two named-action games
are memory-one and therefore exactly analyzable by the oracle.
"""

from __future__ import annotations

import random

from sandbench.games.catalog import (
    BLOTTO_BUDGET,
    BLOTTO_FIELDS,
    BLOTTO_ID,
    BOS_ID,
    COOPERATE,
    DEFECT,
    PD_ID,
    VENUE_1,
    VENUE_2,
)
from sandbench.games.core import Action, ActionHistory
from sandbench.games.strategies import (
    MemoryOneStrategy,
    StrategyProgram,
    function_strategy,
)

# Mixed-move bot for the cooperation game: one third cooperate, one third
# defect, one third repeat the opponent's previous move (uniform when
# there is no history yet).
PD_MIX = (1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0)

# Venue bot: half uniform over venues, half copy the opponent's last venue.
BOS_COPY_WEIGHT = 0.5


def pd_bot(role: int = 2) -> MemoryOneStrategy:
    opponent_idx = 0 if role == 2 else 1
    w_coop, w_defect, w_copy = PD_MIX
    base = {
        COOPERATE: w_coop + w_copy / 2.0,
        DEFECT: w_defect + w_copy / 2.0,
    }

    def transition(last):
        dist = {COOPERATE: w_coop, DEFECT: w_defect}
        dist[last[opponent_idx]] += w_copy
        return dist

    return MemoryOneStrategy("pd-bot", role, base, transition)


def bos_bot(role: int = 2) -> MemoryOneStrategy:
    opponent_idx = 0 if role == 2 else 1
    uniform = (1.0 - BOS_COPY_WEIGHT) / 2.0
    base = {VENUE_1: 0.5, VENUE_2: 0.5}

    def transition(last):
        dist = {VENUE_1: uniform, VENUE_2: uniform}
        dist[last[opponent_idx]] += BOS_COPY_WEIGHT
        return dist

    return MemoryOneStrategy("bos-bot", role, base, transition)


def random_allocation(rng: random.Random, fields: int = BLOTTO_FIELDS,
                      budget: int = BLOTTO_BUDGET) -> tuple[int, ...]:
    """Uniform field weights normalised to the budget, rounded by largest remainder."""
    weights = [rng.random() for _ in range(fields)]
    total = sum(weights)
    if total == 0.0:
        weights = [1.0] * fields
        total = float(fields)
    shares = [w / total * budget for w in weights]
    floors = [int(s) for s in shares]
    shortfall = budget - sum(floors)
    # Largest remainder first; equal remainders favour the lower field index.
    order = sorted(range(fields), key=lambda i: (-(shares[i] - floors[i]), i))
    for i in order[:shortfall]:
        floors[i] += 1
    return tuple(floors)


def blotto_bot(role: int = 2, fields: int = BLOTTO_FIELDS,
               budget: int = BLOTTO_BUDGET) -> StrategyProgram:
    def impl(history: ActionHistory, rng: random.Random) -> Action:
        return random_allocation(rng, fields, budget)

    return function_strategy("blotto-bot", role, impl)


def builtin_opponent(game_id: str, role: int = 2) -> StrategyProgram:
    """The documented opponent bot for a game id."""
    if game_id == PD_ID:
        return pd_bot(role)
    if game_id == BOS_ID:
        return bos_bot(role)
    if game_id == BLOTTO_ID:
        return blotto_bot(role)
    raise ValueError(f"no built-in opponent for game id {game_id!r}")
