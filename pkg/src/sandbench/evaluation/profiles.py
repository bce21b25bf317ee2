"""Performance ratios, profile curves and AUP scores.

For a task t and method m with score l(t, m), the performance ratio is

    r(t, m) = l(t, m) / min over feasible methods   (lower-is-better)
    r(t, m) = max over feasible methods / l(t, m)   (higher-is-better)

A method is feasible on a task when it produced a valid score that is at
least as good as the task baseline.  Infeasible methods are penalised at
(1 + epsilon) times the baseline's own ratio under the same formula.

A profile curve rho_m(tau) is the fraction of tasks whose transformed
ratio is <= tau; the AUP score is the exact area under that step function
from the domain start up to tau_max, the smallest threshold at which
every method's curve reaches 1.

Two threshold scales are supported: "log10" (transform = log10 r, domain
starts at 0) and "raw" (transform = r, domain starts at 1).  Published
aggregate scores for this family of benchmarks are reproduced by the
log10 scale with tau_max rounded up to one decimal and shared across the
attempt/submission pair, which is therefore the default configuration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping

from sandbench.evaluation.scores import AggregateTable, Direction, ScoreTableError

RAW_SCALE = "raw"
LOG10_SCALE = "log10"


@dataclass(frozen=True)
class ProfileConfig:
    """Threshold-scale configuration shared by all curves of a report."""

    scale: str = LOG10_SCALE
    # Round tau_max up to this many decimals (plot-axis convention); None keeps it exact.
    tau_ceil_decimals: int | None = 1
    epsilon: float = 0.05
    # A method exactly matching the baseline counts as feasible.
    feasible_on_tie: bool = True

    def __post_init__(self) -> None:
        if self.scale not in (RAW_SCALE, LOG10_SCALE):
            raise ValueError(f"unknown threshold scale {self.scale!r}")

    @property
    def domain_start(self) -> float:
        return 0.0 if self.scale == LOG10_SCALE else 1.0

    def transform(self, ratio: float) -> float:
        if self.scale == RAW_SCALE:
            return ratio
        if ratio <= 0:
            raise ScoreTableError(
                f"cannot take log10 of non-positive performance ratio {ratio}; "
                "use the raw threshold scale for metrics that cross zero"
            )
        return math.log10(ratio)


RAW_CONFIG = ProfileConfig(scale=RAW_SCALE, tau_ceil_decimals=None)
EXACT_LOG10_CONFIG = ProfileConfig(scale=LOG10_SCALE, tau_ceil_decimals=None)
DEFAULT_CONFIG = ProfileConfig()


@dataclass
class RatioMatrix:
    """Performance ratios plus feasibility flags for one aggregate table."""

    tasks: list[str]
    methods: list[str]
    ratios: dict[tuple[str, str], float]
    feasible: dict[tuple[str, str], bool]
    baseline_ratios: dict[str, float]
    mode: str

    def method_ratios(self, method: str) -> list[float]:
        return [self.ratios[(t, method)] for t in self.tasks]


def _is_feasible(score: float | None, baseline: float, direction: Direction,
                 on_tie: bool) -> bool:
    if score is None:
        return False
    if score == baseline:
        return on_tie
    return direction.better(score, baseline)


def performance_ratios(table: AggregateTable,
                       config: ProfileConfig = DEFAULT_CONFIG) -> RatioMatrix:
    """Compute the per-(task, method) ratio matrix from aggregated scores."""
    ratios: dict[tuple[str, str], float] = {}
    feasible: dict[tuple[str, str], bool] = {}
    baseline_ratios: dict[str, float] = {}
    for t in table.tasks:
        direction = table.directions[t]
        baseline = table.baselines[t]
        feas = {
            m: s for m in table.methods
            if _is_feasible(s := table.value(t, m), baseline, direction, config.feasible_on_tie)
        }
        if not feas and baseline is None:
            raise ScoreTableError(f"task {t!r}: no feasible method and no baseline score")
        # Reference score: best feasible entry, falling back to the baseline
        # when nothing beats it.
        reference = direction.best(feas.values()) if feas else baseline
        if direction is Direction.LOWER:
            baseline_ratio = baseline / reference
        else:
            baseline_ratio = reference / baseline
        baseline_ratios[t] = baseline_ratio
        penalty = (1.0 + config.epsilon) * baseline_ratio
        for m in table.methods:
            if m in feas:
                s = feas[m]
                ratios[(t, m)] = s / reference if direction is Direction.LOWER else reference / s
                feasible[(t, m)] = True
            else:
                ratios[(t, m)] = penalty
                feasible[(t, m)] = False
    return RatioMatrix(
        tasks=list(table.tasks),
        methods=list(table.methods),
        ratios=ratios,
        feasible=feasible,
        baseline_ratios=baseline_ratios,
        mode=table.mode,
    )


@dataclass
class ProfileCurve:
    """Right-continuous step curve rho_m(tau), stored as (tau, rho) breakpoints."""

    method: str
    breakpoints: list[tuple[float, float]]
    tau_max: float

    def value_at(self, tau: float) -> float:
        rho = 0.0
        for x, y in self.breakpoints:
            if x <= tau:
                rho = y
            else:
                break
        return rho


def profile_curve(matrix: RatioMatrix, method: str,
                  config: ProfileConfig = DEFAULT_CONFIG) -> ProfileCurve:
    """Build the profile step curve of one method from its transformed ratios."""
    if method not in matrix.methods:
        raise ScoreTableError(f"unknown method {method!r}")
    xs = sorted(config.transform(r) for r in matrix.method_ratios(method))
    n = len(xs)
    breakpoints: list[tuple[float, float]] = []
    count = 0
    for x in xs:
        count += 1
        if breakpoints and breakpoints[-1][0] == x:
            breakpoints[-1] = (x, count / n)
        else:
            breakpoints.append((x, count / n))
    return ProfileCurve(method=method, breakpoints=breakpoints, tau_max=xs[-1])


@dataclass
class AUPReport:
    """AUP scores for every method of one aggregation mode."""

    mode: str
    scale: str
    tau_max: float
    per_method: dict[str, float]
    curves: dict[str, ProfileCurve] = field(default_factory=dict)

    def ordering(self) -> list[str]:
        """Methods sorted by descending AUP; exact ties keep later names first."""
        return sorted(
            self.per_method,
            key=lambda m: (-self.per_method[m], tuple(-ord(c) for c in m)),
        )


def _integrate(xs: list[float], start: float, stop: float) -> float:
    # Exact area under the step function: each transformed ratio x contributes
    # the length of [max(x, start), stop] scaled by 1/n.
    total = sum(max(0.0, stop - max(x, start)) for x in xs)
    return total / len(xs)


def compute_aup(matrices: Mapping[str, RatioMatrix],
                config: ProfileConfig = DEFAULT_CONFIG) -> dict[str, AUPReport]:
    """Compute AUP reports for one or more ratio matrices with a shared tau_max.

    When both aggregation modes are reported together, their curves share a
    single threshold axis; tau_max is the smallest threshold covering every
    method of every supplied matrix (optionally rounded up per the config).
    """
    if not matrices:
        raise ScoreTableError("no ratio matrices supplied")
    all_curves: dict[str, dict[str, ProfileCurve]] = {}
    tau_max = -math.inf
    for mode, matrix in matrices.items():
        curves = {m: profile_curve(matrix, m, config) for m in matrix.methods}
        all_curves[mode] = curves
        tau_max = max(tau_max, max(c.tau_max for c in curves.values()))
    if config.tau_ceil_decimals is not None:
        factor = 10 ** config.tau_ceil_decimals
        tau_max = math.ceil(tau_max * factor) / factor
    if tau_max < config.domain_start:
        raise ScoreTableError(
            f"tau_max {tau_max:.6g} lies below the domain start "
            f"{config.domain_start:.6g} under the {config.scale!r} scale; "
            "every method is already optimal at the first threshold and the "
            "integral degenerates"
        )
    reports: dict[str, AUPReport] = {}
    for mode, matrix in matrices.items():
        per_method = {
            m: _integrate(
                [config.transform(r) for r in matrix.method_ratios(m)],
                config.domain_start,
                tau_max,
            )
            for m in matrix.methods
        }
        reports[mode] = AUPReport(
            mode=mode,
            scale=config.scale,
            tau_max=tau_max,
            per_method=per_method,
            curves=all_curves[mode],
        )
    return reports
