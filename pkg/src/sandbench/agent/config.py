"""Model configuration: decoding parameters, pricing and limits."""

from __future__ import annotations

import json
from dataclasses import dataclass
from decimal import Decimal
from pathlib import Path


@dataclass(frozen=True)
class ModelConfig:
    """One backbone model as used by the agent.

    Prices are USD per million tokens, held as Decimal so cost accounting
    is exact at the configured precision.
    """

    name: str
    temperature: float = 0.0
    top_p: float = 0.95
    price_per_million_input: Decimal = Decimal("0")
    price_per_million_output: Decimal = Decimal("0")
    context_limit: int = 128_000
    cost_limit: Decimal = Decimal("Infinity")

    def __post_init__(self) -> None:
        if not (0.0 <= self.temperature <= 1.0):
            raise ValueError(f"temperature {self.temperature} outside [0, 1]")
        if not (0.0 <= self.top_p <= 1.0):
            raise ValueError(f"top_p {self.top_p} outside [0, 1]")
        for label, price in (
            ("input price", self.price_per_million_input),
            ("output price", self.price_per_million_output),
        ):
            if price < 0:
                raise ValueError(f"{label} must be non-negative")
        object.__setattr__(
            self, "price_per_million_input", Decimal(str(self.price_per_million_input))
        )
        object.__setattr__(
            self, "price_per_million_output", Decimal(str(self.price_per_million_output))
        )
        object.__setattr__(self, "cost_limit", Decimal(str(self.cost_limit)))

    @classmethod
    def load(cls, path: str | Path) -> "ModelConfig":
        payload = json.loads(Path(path).read_text())
        return cls(
            name=payload["name"],
            temperature=payload.get("temperature", 0.0),
            top_p=payload.get("top_p", 0.95),
            price_per_million_input=Decimal(str(payload.get("price_per_million_input", 0))),
            price_per_million_output=Decimal(str(payload.get("price_per_million_output", 0))),
            context_limit=payload.get("context_limit", 128_000),
            cost_limit=Decimal(str(payload.get("cost_limit", "Infinity"))),
        )
