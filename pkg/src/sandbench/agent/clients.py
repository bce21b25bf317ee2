"""Model clients: live HTTP, scripted actions, and recorded cassettes.

The scripted and cassette clients exist for determinism: replaying a
fixed action sequence or captured API responses exercises the whole
harness without a model in the loop.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Protocol, Sequence

from sandbench.agent.config import ModelConfig

API_KEY_ENV = "SANDBENCH_API_KEY"
API_URL_ENV = "SANDBENCH_API_URL"
API_TIMEOUT_ENV = "SANDBENCH_API_TIMEOUT"


class ScriptExhausted(Exception):
    """A replay client ran out of prepared responses."""


@dataclass(frozen=True)
class ModelResponse:
    text: str
    input_tokens: int | None = None
    output_tokens: int | None = None

    @property
    def has_usage(self) -> bool:
        return self.input_tokens is not None and self.output_tokens is not None


class ModelClient(Protocol):
    def complete(self, prompt: str) -> ModelResponse: ...


class ScriptedClient:
    """Plays back a fixed list of responses, ignoring the prompt."""

    def __init__(self, responses: Sequence[str]) -> None:
        self._responses = list(responses)
        self._cursor = 0

    @classmethod
    def from_commands(cls, commands: Sequence[str],
                      discussion: str = "scripted step") -> "ScriptedClient":
        responses = [
            f"DISCUSSION\n{discussion}\n```\n{command}\n```" for command in commands
        ]
        return cls(responses)

    @classmethod
    def from_file(cls, path: str | Path) -> "ScriptedClient":
        """One shell command per non-empty, non-comment line."""
        commands = [
            line.strip()
            for line in Path(path).read_text().splitlines()
            if line.strip() and not line.lstrip().startswith("#")
        ]
        return cls.from_commands(commands)

    def complete(self, prompt: str) -> ModelResponse:
        if self._cursor >= len(self._responses):
            raise ScriptExhausted(
                f"script provided {len(self._responses)} responses and all are consumed"
            )
        text = self._responses[self._cursor]
        self._cursor += 1
        return ModelResponse(text=text)


class CassetteClient:
    """Replays captured API responses, including their reported usage."""

    def __init__(self, records: Sequence[dict]) -> None:
        self._records = list(records)
        self._cursor = 0

    @classmethod
    def from_file(cls, path: str | Path) -> "CassetteClient":
        return cls(json.loads(Path(path).read_text()))

    def complete(self, prompt: str) -> ModelResponse:
        if self._cursor >= len(self._records):
            raise ScriptExhausted(
                f"cassette has {len(self._records)} responses and all are consumed"
            )
        record = self._records[self._cursor]
        self._cursor += 1
        return ModelResponse(
            text=record["text"],
            input_tokens=record.get("input_tokens"),
            output_tokens=record.get("output_tokens"),
        )


class HTTPClient:
    """Chat-completions-style HTTP client configured through the environment.

    SANDBENCH_API_URL points at the completions endpoint, SANDBENCH_API_KEY
    carries the bearer token, SANDBENCH_API_TIMEOUT overrides the request
    timeout in seconds.
    """

    def __init__(self, config: ModelConfig, endpoint: str | None = None,
                 api_key: str | None = None, timeout: float | None = None) -> None:
        self.config = config
        self.endpoint = endpoint or os.environ.get(API_URL_ENV, "")
        self.api_key = api_key or os.environ.get(API_KEY_ENV, "")
        self.timeout = timeout if timeout is not None else float(
            os.environ.get(API_TIMEOUT_ENV, "120")
        )
        if not self.endpoint:
            raise ValueError(f"no endpoint configured; set {API_URL_ENV}")

    def complete(self, prompt: str) -> ModelResponse:
        import requests

        response = requests.post(
            self.endpoint,
            headers={"Authorization": f"Bearer {self.api_key}"},
            json={
                "model": self.config.name,
                "temperature": self.config.temperature,
                "top_p": self.config.top_p,
                "messages": [{"role": "user", "content": prompt}],
            },
            timeout=self.timeout,
        )
        response.raise_for_status()
        payload = response.json()
        usage = payload.get("usage", {})
        return ModelResponse(
            text=payload["choices"][0]["message"]["content"],
            input_tokens=usage.get("prompt_tokens"),
            output_tokens=usage.get("completion_tokens"),
        )
