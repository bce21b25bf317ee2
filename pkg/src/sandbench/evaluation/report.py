"""Assemble full evaluation reports: aggregation -> ratios -> AUP -> Borda.

The report computes AUP scores under several threshold-scale readings so
that published aggregate numbers can be compared against each reading;
the reading whose values all fall within a tolerance of the supplied
reference values is flagged as calibrated.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from sandbench.evaluation.borda import BASELINE_LABEL, borda_ranks
from sandbench.evaluation.profiles import (
    EXACT_LOG10_CONFIG,
    DEFAULT_CONFIG,
    RAW_CONFIG,
    ProfileConfig,
    compute_aup,
    performance_ratios,
)
from sandbench.evaluation.scores import ScoreTable, aggregate_at_k

CALIBRATION_TOLERANCE = 0.02

READINGS: dict[str, ProfileConfig] = {
    "log10": DEFAULT_CONFIG,
    "log10-exact": EXACT_LOG10_CONFIG,
    "raw": RAW_CONFIG,
}
DEFAULT_READING = "log10"


@dataclass
class ReportSpec:
    """Inputs for one evaluation report."""

    tables: dict[str, Path]                    # mode -> score CSV
    tasks: list[str] | None = None             # optional task restriction
    readings: dict[str, ProfileConfig] = field(default_factory=lambda: dict(READINGS))
    reference_path: Path | None = None         # published AUP values, JSON
    baseline_label: str = BASELINE_LABEL

    def __post_init__(self) -> None:
        for mode in self.tables:
            if mode not in ("attempt", "submission"):
                raise ValueError(f"unknown aggregation mode {mode!r}")


def _rounded(value: float | None, digits: int = 6) -> float | str:
    return "inf" if value is None else round(value, digits)


def build_report(spec: ReportSpec) -> dict:
    """Produce a JSON-serialisable report for the given score tables."""
    aggregates = {}
    for mode, path in spec.tables.items():
        table = ScoreTable.from_csv(path)
        if spec.tasks is not None:
            table = table.restrict_tasks(spec.tasks)
        aggregates[mode] = aggregate_at_k(table, mode)

    reference = None
    if spec.reference_path is not None:
        with open(spec.reference_path) as fh:
            reference = json.load(fh)

    modes = sorted(aggregates)
    any_table = aggregates[modes[0]]
    report: dict = {
        "modes": modes,
        "tasks": list(any_table.tasks),
        "methods": list(any_table.methods),
        "default_reading": DEFAULT_READING,
        "aggregate_scores": {
            mode: {
                t: {m: _rounded(agg.value(t, m)) for m in agg.methods}
                for t in agg.tasks
            }
            for mode, agg in aggregates.items()
        },
    }

    aup_section: dict = {}
    ratio_section: dict = {}
    for name, config in spec.readings.items():
        try:
            matrices = {mode: performance_ratios(agg, config) for mode, agg in aggregates.items()}
            reports = compute_aup(matrices, config)
        except Exception as exc:  # degenerate scale readings are reported, not fatal
            aup_section[name] = {"error": str(exc)}
            continue
        if name == DEFAULT_READING:
            ratio_section = {
                mode: {
                    t: {m: _rounded(matrix.ratios[(t, m)]) for m in matrix.methods}
                    for t in matrix.tasks
                }
                for mode, matrix in matrices.items()
            }
        entry: dict = {
            "scale": config.scale,
            "tau_max": _rounded(next(iter(reports.values())).tau_max),
            "values": {
                mode: {m: _rounded(v) for m, v in rep.per_method.items()}
                for mode, rep in reports.items()
            },
            "ordering": {mode: rep.ordering() for mode, rep in reports.items()},
        }
        if reference is not None:
            deviations = {}
            for mode, rep in reports.items():
                ref_mode = reference.get(mode, {})
                common = [m for m in rep.per_method if m in ref_mode]
                if common:
                    deviations[mode] = max(
                        abs(rep.per_method[m] - ref_mode[m]) for m in common
                    )
            if deviations:
                entry["max_abs_deviation"] = {
                    mode: _rounded(d) for mode, d in deviations.items()
                }
                entry["calibrated"] = all(
                    d <= CALIBRATION_TOLERANCE for d in deviations.values()
                )
        aup_section[name] = entry
    report["aup"] = aup_section
    report["ratios"] = ratio_section

    report["borda"] = {}
    for mode, agg in aggregates.items():
        ranks = borda_ranks(agg, spec.baseline_label)
        report["borda"][mode] = {
            "per_task": {t: ranks.per_task_ranks[t] for t in ranks.tasks},
            "aggregate": ranks.aggregate,
            "points": ranks.points,
        }
    return report


def render_text(report: dict) -> str:
    """Render the report as plain-text tables, mirroring the JSON content."""
    lines: list[str] = []
    methods = report["methods"]
    for mode in report["modes"]:
        lines.append(f"== AUP@k ({mode}) ==")
        header = ["method"] + list(report["aup"].keys())
        lines.append("  ".join(header))
        for m in methods:
            row = [m]
            for reading, entry in report["aup"].items():
                if "error" in entry:
                    row.append("n/a")
                else:
                    row.append(f"{entry['values'][mode][m]:.3f}")
            lines.append("  ".join(row))
        lines.append("")
        lines.append(f"== Rank table ({mode}) ==")
        borda = report["borda"][mode]
        for t in report["tasks"]:
            lines.append(f"{t}: " + " > ".join(borda["per_task"][t]))
        lines.append("BORDA: " + " > ".join(borda["aggregate"]))
        lines.append("")
    return "\n".join(lines)
