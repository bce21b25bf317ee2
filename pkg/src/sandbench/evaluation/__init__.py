"""Score aggregation, performance profiles, AUP and Borda rank tables."""

from sandbench.evaluation.scores import (
    AggregateTable,
    Direction,
    ScoreTable,
    aggregate_at_k,
)
from sandbench.evaluation.profiles import (
    ProfileConfig,
    ProfileCurve,
    RatioMatrix,
    AUPReport,
    compute_aup,
    performance_ratios,
    profile_curve,
)
from sandbench.evaluation.borda import RankTable, borda_ranks

__all__ = [
    "AggregateTable",
    "Direction",
    "ScoreTable",
    "aggregate_at_k",
    "ProfileConfig",
    "ProfileCurve",
    "RatioMatrix",
    "AUPReport",
    "compute_aup",
    "performance_ratios",
    "profile_curve",
    "RankTable",
    "borda_ranks",
]
