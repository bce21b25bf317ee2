"""Random 3-SAT instance generation.

The default generator produces fixed-width random 3-SAT: each clause draws
three distinct variables with random polarities, duplicate clauses are
rejected, and the clause count is the clause/variable ratio times n,
rounded to the nearest integer.  Ratios near 4.3 sit at the hard
satisfiability phase transition.

An alternative pair generator grows a formula one variable-width-randomised
clause at a time until it becomes unsatisfiable, then flips one literal of
the final clause to produce a satisfiable twin.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass
from pathlib import Path

from sandbench.sat.cnf import CNFInstance

FIXED_WIDTH = "fixed"
PAIR = "pair"


@dataclass(frozen=True)
class BatchManifest:
    """Parameters that fully determine a generated batch."""

    seed: int
    n_range: tuple[int, int]
    ratio: float
    count: int
    generator: str = FIXED_WIDTH

    def dump(self, path: str | Path) -> None:
        payload = {
            "seed": self.seed,
            "n_range": list(self.n_range),
            "ratio": self.ratio,
            "count": self.count,
            "generator": self.generator,
        }
        Path(path).write_text(json.dumps(payload, indent=2) + "\n")

    @classmethod
    def load(cls, path: str | Path) -> "BatchManifest":
        payload = json.loads(Path(path).read_text())
        return cls(
            seed=payload["seed"],
            n_range=tuple(payload["n_range"]),
            ratio=payload["ratio"],
            count=payload["count"],
            generator=payload.get("generator", FIXED_WIDTH),
        )


def _random_clause(rng: random.Random, n: int, width: int = 3) -> tuple[int, ...]:
    variables = rng.sample(range(1, n + 1), width)
    return tuple(v if rng.random() < 0.5 else -v for v in variables)


def _fixed_width_instance(rng: random.Random, n: int, ratio: float) -> CNFInstance:
    num_clauses = round(ratio * n)
    distinct_possible = 8 * math.comb(n, 3)
    if num_clauses > distinct_possible:
        raise ValueError(
            f"cannot draw {num_clauses} distinct 3-literal clauses over {n} variables "
            f"(only {distinct_possible} exist)"
        )
    clauses: list[tuple[int, ...]] = []
    seen: set[tuple[int, ...]] = set()
    while len(clauses) < num_clauses:
        clause = _random_clause(rng, n)
        key = tuple(sorted(clause))
        if key in seen:
            continue
        seen.add(key)
        clauses.append(clause)
    return CNFInstance.from_clauses(n, clauses)


def generate_instances(
    count: int = 100,
    n_range: tuple[int, int] = (50, 100),
    ratio: float = 4.3,
    seed: int = 0,
    generator: str = FIXED_WIDTH,
) -> list[CNFInstance]:
    """Generate a deterministic batch of 3-SAT instances.

    Each instance draws its variable count uniformly from ``n_range``
    (inclusive) and receives round(ratio * n) distinct clauses.
    """
    lo, hi = n_range
    if lo < 3:
        raise ValueError("n_range minimum must be at least 3")
    if lo > hi:
        raise ValueError(f"invalid n_range {n_range}")
    if count < 0:
        raise ValueError("count must be non-negative")
    if generator not in (FIXED_WIDTH, PAIR):
        raise ValueError(f"unknown generator {generator!r}")
    rng = random.Random(f"sat-batch:{seed}")
    instances: list[CNFInstance] = []
    while len(instances) < count:
        n = rng.randint(lo, hi)
        if generator == FIXED_WIDTH:
            instances.append(_fixed_width_instance(rng, n, ratio))
        else:
            unsat, sat = _grow_pair(rng, n)
            instances.append(unsat)
            if len(instances) < count:
                instances.append(sat)
    return instances


def generate_unsat_sat_pair(n: int, seed: int = 0) -> tuple[CNFInstance, CNFInstance]:
    """Generate an (unsatisfiable, satisfiable) twin pair of variable-width formulas."""
    if n < 2:
        raise ValueError("pair generation needs at least 2 variables")
    return _grow_pair(random.Random(f"sat-pair:{seed}"), n)


def _pair_clause(rng: random.Random, n: int) -> tuple[int, ...]:
    # Clause width 1 + Bernoulli(0.7) + Geometric(0.4), capped by n.
    width = 1 + (1 if rng.random() < 0.7 else 0)
    while rng.random() < 0.4:
        width += 1
    width = min(width, n)
    return _random_clause(rng, n, width)


def _grow_pair(rng: random.Random, n: int) -> tuple[CNFInstance, CNFInstance]:
    """Grow clauses until unsatisfiable; flip one literal for the SAT twin."""
    from sandbench.sat.dpll import dpll_solve
    from sandbench.sat.heuristics import first_unassigned_heuristic

    clauses: list[tuple[int, ...]] = []
    while True:
        clause = _pair_clause(rng, n)
        clauses.append(clause)
        candidate = CNFInstance.from_clauses(n, clauses)
        stats = dpll_solve(candidate, first_unassigned_heuristic)
        if not stats.satisfiable:
            break
    unsat = CNFInstance.from_clauses(n, clauses)
    # Negating one literal of the final clause almost always restores
    # satisfiability; fall back to dropping the clause when it does not.
    last = clauses[-1]
    for i in range(len(last)):
        flipped = last[:i] + (-last[i],) + last[i + 1:]
        twin = CNFInstance.from_clauses(n, clauses[:-1] + [flipped])
        if dpll_solve(twin, first_unassigned_heuristic).satisfiable:
            return unsat, twin
    return unsat, CNFInstance.from_clauses(n, clauses[:-1])
