"""Strategies for repeated games.

A strategy is a callable from (history, rng) to the next action, wrapped
with its role so matches can check that returned actions belong to the
right action set.  ``MemoryOneStrategy`` is the analytic subclass: its
behaviour depends only on the previous round's joint action, expressed as
explicit distributions, which lets the best-response oracle evaluate it
exactly instead of by sampling.
"""

from __future__ import annotations

import json
import random
import subprocess
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence, Union

from sandbench.games.core import Action, ActionHistory
from sandbench.games.catalog import COOPERATE, DEFECT


class StrategyFault(Exception):
    """A strategy returned an invalid action or crashed."""


StrategyFn = Callable[[ActionHistory, random.Random], Action]


@dataclass
class StrategyProgram:
    """An executable repeated-game strategy bound to one player role."""

    name: str
    role: int
    impl: StrategyFn

    def __post_init__(self) -> None:
        if self.role not in (1, 2):
            raise ValueError(f"role must be 1 or 2, got {self.role}")

    def act(self, history: ActionHistory, rng: random.Random) -> Action:
        try:
            return self.impl(history, rng)
        except StrategyFault:
            raise
        except Exception as exc:
            raise StrategyFault(f"strategy {self.name!r} raised: {exc}") from exc


Distribution = Mapping[Action, float]
TransitionSource = Union[
    Mapping[tuple[Action, Action], Distribution],
    Callable[[tuple[Action, Action]], Distribution],
]


class MemoryOneStrategy(StrategyProgram):
    """A strategy whose mixing depends only on the last joint action.

    ``first`` is the first-round action distribution; ``transitions``
    yields the next-round distribution for a previous joint action, given
    either as a mapping or as a function of the joint action.
    """

    def __init__(self, name: str, role: int, first: Distribution,
                 transitions: TransitionSource) -> None:
        super().__init__(name=name, role=role, impl=self._sample)
        self.first = dict(first)
        _check_distribution(name, self.first)
        self._transitions = transitions

    def distribution_after(self, last: tuple[Action, Action] | None) -> Distribution:
        if last is None:
            return self.first
        if callable(self._transitions):
            dist = self._transitions(last)
        else:
            try:
                dist = self._transitions[last]
            except KeyError:
                raise StrategyFault(
                    f"strategy {self.name!r} has no transition for joint action {last}"
                ) from None
        _check_distribution(f"{self.name}@{last}", dist)
        return dist

    def _sample(self, history: ActionHistory, rng: random.Random) -> Action:
        dist = self.distribution_after(history.last())
        actions = list(dist)
        if len(actions) == 1:
            return actions[0]
        weights = [dist[a] for a in actions]
        return rng.choices(actions, weights=weights, k=1)[0]


def _check_distribution(name: str, dist: Distribution) -> None:
    if not dist:
        raise ValueError(f"{name}: empty distribution")
    if any(p < 0 for p in dist.values()):
        raise ValueError(f"{name}: negative probability")
    total = sum(dist.values())
    if abs(total - 1.0) > 1e-9:
        raise ValueError(f"{name}: probabilities sum to {total!r}")


# -- common named strategies ----------------------------------------------

def constant_strategy(name: str, role: int, action: Action) -> MemoryOneStrategy:
    dist = {action: 1.0}
    return MemoryOneStrategy(name, role, dist, lambda last: dist)


def always_cooperate(role: int = 2) -> MemoryOneStrategy:
    return constant_strategy("always-cooperate", role, COOPERATE)


def always_defect(role: int = 1) -> MemoryOneStrategy:
    return constant_strategy("always-defect", role, DEFECT)


def tit_for_tat(role: int = 1) -> MemoryOneStrategy:
    """Start cooperating, then copy the opponent's previous action."""
    opponent_idx = 1 if role == 1 else 0
    return MemoryOneStrategy(
        "tit-for-tat",
        role,
        {COOPERATE: 1.0},
        lambda last: {last[opponent_idx]: 1.0},
    )


def function_strategy(name: str, role: int, fn: StrategyFn) -> StrategyProgram:
    return StrategyProgram(name=name, role=role, impl=fn)


# -- external strategy processes ------------------------------------------

def script_strategy(name: str, role: int, game_id: str, command: Sequence[str],
                    timeout: float = 30.0) -> StrategyProgram:
    """Run an external program once per round over the JSON wire protocol.

    Request (stdin): {"game_id", "role", "history": [[a1, a2], ...]}.
    Reply (stdout, last line): {"action": ...}; allocation-vector actions
    are JSON arrays of integers.
    """

    def impl(history: ActionHistory, rng: random.Random) -> Action:
        request = {
            "game_id": game_id,
            "role": role,
            "history": [[_wire(a1), _wire(a2)] for a1, a2 in history.rounds],
        }
        try:
            proc = subprocess.run(
                list(command),
                input=json.dumps(request),
                capture_output=True,
                text=True,
                timeout=timeout,
            )
        except (OSError, subprocess.TimeoutExpired) as exc:
            raise StrategyFault(f"strategy process {name!r} failed: {exc}") from exc
        if proc.returncode != 0:
            raise StrategyFault(
                f"strategy process {name!r} exited {proc.returncode}: {proc.stderr.strip()}"
            )
        try:
            reply = json.loads(proc.stdout.strip().splitlines()[-1])
            action = reply["action"]
        except (ValueError, KeyError, IndexError) as exc:
            raise StrategyFault(f"malformed reply from {name!r}: {proc.stdout!r}") from exc
        if isinstance(action, list):
            return tuple(int(x) for x in action)
        return action

    return StrategyProgram(name=name, role=role, impl=impl)


def _wire(action: Action):
    return list(action) if isinstance(action, tuple) else action
