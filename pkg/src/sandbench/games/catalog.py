"""The three built-in games with their canonical payoff matrices.

Payoffs follow the standard textbook values.  The resource game scores
each round as (fields won - fields lost) / number of fields, a zero-sum
margin in [-1, 1]; ties on a field count for neither player.
"""

from __future__ import annotations

import itertools

from sandbench.games.core import Action, NormalFormGame

COOPERATE = "cooperate"
DEFECT = "defect"
VENUE_1 = "venue1"
VENUE_2 = "venue2"

BLOTTO_FIELDS = 3
BLOTTO_BUDGET = 10

PD_ID = "pd"
BOS_ID = "bos"
BLOTTO_ID = "blotto"


def prisoners_dilemma() -> NormalFormGame:
    actions = (COOPERATE, DEFECT)
    payoff = {
        (COOPERATE, COOPERATE): (3.0, 3.0),
        (COOPERATE, DEFECT): (0.0, 5.0),
        (DEFECT, COOPERATE): (5.0, 0.0),
        (DEFECT, DEFECT): (1.0, 1.0),
    }
    return NormalFormGame(PD_ID, actions, actions, payoff)


def battle_of_sexes() -> NormalFormGame:
    actions = (VENUE_1, VENUE_2)
    payoff = {
        (VENUE_1, VENUE_1): (2.0, 1.0),
        (VENUE_1, VENUE_2): (0.0, 0.0),
        (VENUE_2, VENUE_1): (0.0, 0.0),
        (VENUE_2, VENUE_2): (1.0, 2.0),
    }
    return NormalFormGame(BOS_ID, actions, actions, payoff)


def blotto_allocations(fields: int = BLOTTO_FIELDS, budget: int = BLOTTO_BUDGET) -> tuple[Action, ...]:
    """All non-negative integer allocations of the budget over the fields."""
    allocations = []
    for split in itertools.combinations_with_replacement(range(budget + 1), fields - 1):
        bounds = (0,) + split + (budget,)
        # combinations_with_replacement yields sorted split points, so each
        # allocation appears exactly once.
        allocations.append(tuple(bounds[i + 1] - bounds[i] for i in range(fields)))
    return tuple(allocations)


def blotto_round_payoff(alloc1: tuple[int, ...], alloc2: tuple[int, ...]) -> tuple[float, float]:
    won = sum(1 for a, b in zip(alloc1, alloc2) if a > b)
    lost = sum(1 for a, b in zip(alloc1, alloc2) if a < b)
    margin = (won - lost) / len(alloc1)
    return margin, -margin


def blotto(fields: int = BLOTTO_FIELDS, budget: int = BLOTTO_BUDGET) -> NormalFormGame:
    actions = blotto_allocations(fields, budget)
    payoff = {
        (a1, a2): blotto_round_payoff(a1, a2)
        for a1 in actions
        for a2 in actions
    }
    return NormalFormGame(BLOTTO_ID, actions, actions, payoff)


_FACTORIES = {
    PD_ID: prisoners_dilemma,
    BOS_ID: battle_of_sexes,
    BLOTTO_ID: blotto,
}


def game_by_id(game_id: str) -> NormalFormGame:
    try:
        return _FACTORIES[game_id]()
    except KeyError:
        raise ValueError(
            f"unknown game id {game_id!r}; expected one of {sorted(_FACTORIES)}"
        ) from None
