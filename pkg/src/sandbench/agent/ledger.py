"""Token and spend accounting for one episode."""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal

from sandbench.agent.config import ModelConfig

MILLION = Decimal(1_000_000)


class CostLimitExceeded(Exception):
    """Raised by charge() when the updated spend passes the configured limit."""

    def __init__(self, ledger: "CostLedger", limit: Decimal) -> None:
        super().__init__(f"spend {ledger.spend} exceeds the cost limit {limit}")
        self.ledger = ledger


@dataclass(frozen=True)
class CostLedger:
    input_tokens: int = 0
    output_tokens: int = 0
    spend: Decimal = Decimal("0")
    # True when any charge used estimated rather than provider-reported counts.
    approximate: bool = False


def charge(ledger: CostLedger, input_tokens: int, output_tokens: int,
           config: ModelConfig, approximate: bool = False) -> CostLedger:
    """Add one model call to the ledger.

    spend grows by in*price_in/1e6 + out*price_out/1e6, computed in
    Decimal.  The updated ledger always reflects the charge; if it pushes
    spend past the limit, CostLimitExceeded carries it to the caller.
    """
    if input_tokens < 0 or output_tokens < 0:
        raise ValueError("token counts must be non-negative")
    delta = (
        Decimal(input_tokens) * config.price_per_million_input / MILLION
        + Decimal(output_tokens) * config.price_per_million_output / MILLION
    )
    updated = CostLedger(
        input_tokens=ledger.input_tokens + input_tokens,
        output_tokens=ledger.output_tokens + output_tokens,
        spend=ledger.spend + delta,
        approximate=ledger.approximate or approximate,
    )
    if updated.spend > config.cost_limit:
        raise CostLimitExceeded(updated, config.cost_limit)
    return updated
