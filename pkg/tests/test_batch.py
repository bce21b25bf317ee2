from __future__ import annotations

import pytest

from sandbench.sat.batch import score_batch, time_batch
from sandbench.sat.dpll import HeuristicChoice, HeuristicFault
from sandbench.sat.generate import generate_instances
from sandbench.sat.heuristics import frequency_heuristic, random_heuristic


def test_empty_batch_totals_zero():
    timing = time_batch([], random_heuristic(0))
    assert timing.total_wall_time == 0.0
    assert timing.per_instance == []
    assert timing.total_decisions == 0


def test_total_equals_sum_of_parts():
    batch = generate_instances(10, (10, 20), 4.3, seed=12)
    timing = time_batch(batch, random_heuristic(1))
    assert timing.total_wall_time == pytest.approx(
        sum(s.wall_time for s in timing.per_instance)
    )
    assert len(timing.per_instance) == 10


def test_heuristic_fault_aborts_batch():
    batch = generate_instances(3, (10, 12), 4.3, seed=12)

    def faulty(state):
        return HeuristicChoice(10**6, True)

    with pytest.raises(HeuristicFault):
        time_batch(batch, faulty)
    assert score_batch(batch, faulty) is None


def test_score_batch_returns_total():
    batch = generate_instances(4, (8, 10), 4.3, seed=2)
    score = score_batch(batch, frequency_heuristic)
    assert score is not None and score > 0.0


def test_frequency_beats_random_on_most_instances():
    batch = generate_instances(25, (20, 40), 4.3, seed=31)
    random_timing = time_batch(batch, random_heuristic(0))
    freq_timing = time_batch(batch, frequency_heuristic)
    fewer = sum(
        1
        for f, r in zip(freq_timing.per_instance, random_timing.per_instance)
        if f.decisions < r.decisions
    )
    assert fewer >= 0.6 * len(batch)
