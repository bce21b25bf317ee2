"""Rolling interaction context.

All interactions are kept with their step indices, but only the most
recent ``keep_last`` render verbatim; older ones collapse to one-line
placeholders so the prompt stays bounded while step numbering stays
intact.
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Interaction:
    step_index: int
    action: str
    observation: str


@dataclass
class ConversationWindow:
    system_block: str
    pinned_task_block: str
    keep_last: int = 5
    interactions: list[Interaction] = field(default_factory=list)

    def add(self, step_index: int, action: str, observation: str) -> None:
        self.interactions.append(Interaction(step_index, action, observation))

    def render_history(self) -> str:
        if not self.interactions:
            return ""
        collapsed = self.interactions[:-self.keep_last] if self.keep_last else self.interactions
        verbatim = self.interactions[-self.keep_last:] if self.keep_last else []
        lines: list[str] = ["HISTORY:"]
        for interaction in collapsed:
            lines.append(f"[step {interaction.step_index}: output elided]")
        for interaction in verbatim:
            lines.append(f"(step {interaction.step_index})")
            lines.append(f"command:\n{interaction.action}")
            lines.append(f"observation:\n{interaction.observation}")
        return "\n".join(lines)
