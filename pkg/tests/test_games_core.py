from __future__ import annotations

import random

import pytest

from sandbench.games.catalog import (
    battle_of_sexes,
    blotto,
    blotto_allocations,
    game_by_id,
    prisoners_dilemma,
)
from sandbench.games.core import MixedProfile, NormalFormGame, expected_utility


def random_two_by_two(rng: random.Random) -> NormalFormGame:
    actions = ("x", "y")
    payoff = {
        (a1, a2): (rng.uniform(-5, 5), rng.uniform(-5, 5))
        for a1 in actions
        for a2 in actions
    }
    return NormalFormGame("rand", actions, actions, payoff)


def random_profile(rng: random.Random) -> MixedProfile:
    p = rng.random()
    q = rng.random()
    return MixedProfile((p, 1 - p), (q, 1 - q))


def test_pure_profile_returns_exact_payoff():
    pd = prisoners_dilemma()
    # player 1 defects, player 2 cooperates
    profile = MixedProfile.pure(1, 0, pd)
    assert expected_utility(pd, profile) == (5.0, 0.0)


def test_uniform_profile_is_mean_of_payoffs():
    pd = prisoners_dilemma()
    profile = MixedProfile((0.5, 0.5), (0.5, 0.5))
    u1, u2 = expected_utility(pd, profile)
    assert u1 == pytest.approx((3 + 0 + 5 + 1) / 4)
    assert u2 == pytest.approx((3 + 5 + 0 + 1) / 4)


def test_mixed_profile_against_four_term_enumeration():
    pd = prisoners_dilemma()
    sigma1, sigma2 = (0.25, 0.75), (0.5, 0.5)
    expected_u1 = sum(
        sigma1[i] * sigma2[j] * pd.payoff[(pd.actions_p1[i], pd.actions_p2[j])][0]
        for i in range(2)
        for j in range(2)
    )
    u1, _ = expected_utility(pd, MixedProfile(sigma1, sigma2))
    assert u1 == pytest.approx(expected_u1, abs=1e-15)
    assert u1 == pytest.approx(2.625)


def test_hundred_random_games_match_enumeration():
    rng = random.Random(17)
    for _ in range(100):
        game = random_two_by_two(rng)
        profile = random_profile(rng)
        want_u1 = sum(
            profile.sigma1[i] * profile.sigma2[j]
            * game.payoff[(game.actions_p1[i], game.actions_p2[j])][0]
            for i in range(2)
            for j in range(2)
        )
        want_u2 = sum(
            profile.sigma1[i] * profile.sigma2[j]
            * game.payoff[(game.actions_p1[i], game.actions_p2[j])][1]
            for i in range(2)
            for j in range(2)
        )
        u1, u2 = expected_utility(game, profile)
        assert u1 == pytest.approx(want_u1, abs=1e-12)
        assert u2 == pytest.approx(want_u2, abs=1e-12)


def test_bilinearity_in_both_arguments():
    rng = random.Random(23)
    for _ in range(50):
        game = random_two_by_two(rng)
        a = random_profile(rng)
        b = random_profile(rng)
        lam = rng.random()
        mixed_sigma1 = tuple(
            lam * x + (1 - lam) * y for x, y in zip(a.sigma1, b.sigma1)
        )
        lhs = expected_utility(game, MixedProfile(mixed_sigma1, a.sigma2))[0]
        rhs = (
            lam * expected_utility(game, MixedProfile(a.sigma1, a.sigma2))[0]
            + (1 - lam) * expected_utility(game, MixedProfile(b.sigma1, a.sigma2))[0]
        )
        assert lhs == pytest.approx(rhs, abs=1e-9)


def test_dimension_mismatch_rejected():
    pd = prisoners_dilemma()
    with pytest.raises(ValueError, match="entries"):
        expected_utility(pd, MixedProfile((1.0,), (0.5, 0.5)))


def test_profile_must_sum_to_one():
    with pytest.raises(ValueError, match="sums to"):
        MixedProfile((0.6, 0.5), (0.5, 0.5))
    with pytest.raises(ValueError, match="negative"):
        MixedProfile((-0.1, 1.1), (0.5, 0.5))


def test_payoff_map_must_be_total():
    with pytest.raises(ValueError, match="missing profile"):
        NormalFormGame("bad", ("a",), ("b", "c"), {("a", "b"): (0.0, 0.0)})


def test_blotto_action_space_and_zero_sum():
    game = blotto()
    allocations = blotto_allocations()
    assert len(allocations) == 66  # compositions of 10 into 3 parts
    assert all(sum(a) == 10 for a in allocations)
    for (a1, a2), (u1, u2) in list(game.payoff.items())[:500]:
        assert u1 == -u2
        assert -1.0 <= u1 <= 1.0


def test_blotto_round_payoff_examples():
    game = blotto()
    assert game.utilities((10, 0, 0), (0, 5, 5)) == (-1 / 3, 1 / 3)
    assert game.utilities((4, 3, 3), (4, 3, 3)) == (0.0, 0.0)
    assert game.utilities((5, 4, 1), (4, 3, 3)) == (1 / 3, -1 / 3)


def test_game_lookup_by_id():
    assert game_by_id("pd").game_id == "pd"
    assert game_by_id("bos").game_id == "bos"
    assert game_by_id("blotto").game_id == "blotto"
    with pytest.raises(ValueError, match="unknown game id"):
        game_by_id("chess")


def test_bos_payoffs_reward_coordination():
    bos = battle_of_sexes()
    assert bos.utilities("venue1", "venue1") == (2.0, 1.0)
    assert bos.utilities("venue2", "venue2") == (1.0, 2.0)
    assert bos.utilities("venue1", "venue2") == (0.0, 0.0)
