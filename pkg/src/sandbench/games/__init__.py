"""Repeated two-player games: engines, opponents, scoring and a best-response oracle."""

from sandbench.games.core import (
    Action,
    ActionHistory,
    MixedProfile,
    NormalFormGame,
    expected_utility,
)
from sandbench.games.catalog import battle_of_sexes, blotto, game_by_id, prisoners_dilemma
from sandbench.games.strategies import (
    MemoryOneStrategy,
    StrategyFault,
    StrategyProgram,
    script_strategy,
)
from sandbench.games.opponents import builtin_opponent
from sandbench.games.match import MatchOutcome, estimate_score, play_match
from sandbench.games.oracle import best_response_oracle

__all__ = [
    "Action",
    "ActionHistory",
    "MixedProfile",
    "NormalFormGame",
    "expected_utility",
    "battle_of_sexes",
    "blotto",
    "game_by_id",
    "prisoners_dilemma",
    "MemoryOneStrategy",
    "StrategyFault",
    "StrategyProgram",
    "script_strategy",
    "builtin_opponent",
    "MatchOutcome",
    "estimate_score",
    "play_match",
    "best_response_oracle",
]
