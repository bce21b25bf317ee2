"""Normal-form games, mixed strategies and expected utility."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

# Pure actions are strings for named-action games and integer allocation
# vectors for resource games.
Action = Union[str, tuple[int, ...]]

PROBABILITY_TOLERANCE = 1e-12


@dataclass(frozen=True)
class NormalFormGame:
    """A finite two-player game with a total payoff map.

    ``payoff`` maps every (action_p1, action_p2) profile to the pair
    (u1, u2) of player utilities.
    """

    game_id: str
    actions_p1: tuple[Action, ...]
    actions_p2: tuple[Action, ...]
    payoff: dict[tuple[Action, Action], tuple[float, float]]

    def __post_init__(self) -> None:
        if not self.actions_p1 or not self.actions_p2:
            raise ValueError("both players need at least one action")
        for a1 in self.actions_p1:
            for a2 in self.actions_p2:
                if (a1, a2) not in self.payoff:
                    raise ValueError(f"payoff map is missing profile {(a1, a2)}")

    def utilities(self, a1: Action, a2: Action) -> tuple[float, float]:
        try:
            return self.payoff[(a1, a2)]
        except KeyError:
            raise ValueError(f"profile {(a1, a2)} is not part of game {self.game_id!r}") from None

    def actions_for(self, role: int) -> tuple[Action, ...]:
        if role == 1:
            return self.actions_p1
        if role == 2:
            return self.actions_p2
        raise ValueError(f"role must be 1 or 2, got {role}")


@dataclass(frozen=True)
class MixedProfile:
    """A pair of probability vectors over the two players' action sets."""

    sigma1: tuple[float, ...]
    sigma2: tuple[float, ...]

    def __post_init__(self) -> None:
        for name, sigma in (("sigma1", self.sigma1), ("sigma2", self.sigma2)):
            if any(p < 0 for p in sigma):
                raise ValueError(f"{name} has a negative probability")
            if abs(sum(sigma) - 1.0) > PROBABILITY_TOLERANCE:
                raise ValueError(f"{name} sums to {sum(sigma)!r}, not 1")

    @classmethod
    def pure(cls, i: int, j: int, game: NormalFormGame) -> "MixedProfile":
        s1 = tuple(1.0 if k == i else 0.0 for k in range(len(game.actions_p1)))
        s2 = tuple(1.0 if k == j else 0.0 for k in range(len(game.actions_p2)))
        return cls(s1, s2)


@dataclass
class ActionHistory:
    """Joint actions of the completed rounds, oldest first."""

    rounds: list[tuple[Action, Action]] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.rounds)

    def last(self) -> tuple[Action, Action] | None:
        return self.rounds[-1] if self.rounds else None

    def actions_of(self, role: int) -> list[Action]:
        idx = 0 if role == 1 else 1
        return [joint[idx] for joint in self.rounds]

    def copy(self) -> "ActionHistory":
        return ActionHistory(list(self.rounds))


def expected_utility(game: NormalFormGame, profile: MixedProfile) -> tuple[float, float]:
    """Expected utilities of both players under independent mixing.

    The value is the payoff of each profile weighted by the product of the
    players' action probabilities, summed over the full profile set.
    """
    if len(profile.sigma1) != len(game.actions_p1):
        raise ValueError(
            f"sigma1 has {len(profile.sigma1)} entries for {len(game.actions_p1)} actions"
        )
    if len(profile.sigma2) != len(game.actions_p2):
        raise ValueError(
            f"sigma2 has {len(profile.sigma2)} entries for {len(game.actions_p2)} actions"
        )
    u1 = 0.0
    u2 = 0.0
    for p1, a1 in zip(profile.sigma1, game.actions_p1):
        if p1 == 0.0:
            continue
        for p2, a2 in zip(profile.sigma2, game.actions_p2):
            if p2 == 0.0:
                continue
            v1, v2 = game.payoff[(a1, a2)]
            weight = p1 * p2
            u1 += weight * v1
            u2 += weight * v2
    return u1, u2
