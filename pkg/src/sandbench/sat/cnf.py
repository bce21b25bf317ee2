"""CNF formulas as integer-literal clause lists, with DIMACS round-trip."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path


@dataclass(frozen=True)
class CNFInstance:
    """A CNF formula over variables 1..num_vars.

    Clauses are tuples of nonzero integer literals; literal v means the
    variable v is true, -v means it is false.  A clause never contains a
    variable together with its own negation.
    """

    num_vars: int
    clauses: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.num_vars < 0:
            raise ValueError("num_vars must be non-negative")
        for clause in self.clauses:
            seen = set()
            for lit in clause:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise ValueError(f"literal {lit} out of range for {self.num_vars} variables")
                if -lit in seen:
                    raise ValueError(f"clause {clause} contains a variable and its negation")
                seen.add(lit)

    @classmethod
    def from_clauses(cls, num_vars: int, clauses) -> "CNFInstance":
        return cls(num_vars, tuple(tuple(c) for c in clauses))

    def satisfied_by(self, assignment: dict[int, bool]) -> bool:
        """Check an assignment against every clause; unassigned literals never satisfy."""
        return all(
            any(assignment.get(abs(lit)) == (lit > 0) for lit in clause)
            for clause in self.clauses
        )


def write_dimacs(instance: CNFInstance, path: str | Path) -> None:
    lines = [f"p cnf {instance.num_vars} {len(instance.clauses)}"]
    for clause in instance.clauses:
        lines.append(" ".join(str(lit) for lit in clause) + " 0")
    Path(path).write_text("\n".join(lines) + "\n")


def read_dimacs(path: str | Path) -> CNFInstance:
    num_vars = None
    declared = None
    clauses: list[tuple[int, ...]] = []
    pending: list[int] = []
    for raw in Path(path).read_text().splitlines():
        line = raw.strip()
        if not line or line.startswith(("c", "%")):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ValueError(f"malformed problem line: {raw!r}")
            num_vars, declared = int(parts[2]), int(parts[3])
            continue
        for token in line.split():
            lit = int(token)
            if lit == 0:
                clauses.append(tuple(pending))
                pending = []
            else:
                pending.append(lit)
    if pending:
        raise ValueError("last clause is not terminated by 0")
    if num_vars is None:
        raise ValueError("missing 'p cnf' problem line")
    if declared is not None and declared != len(clauses):
        raise ValueError(f"declared {declared} clauses, found {len(clauses)}")
    return CNFInstance.from_clauses(num_vars, clauses)
