"""Tool specifications and the documentation block rendered into prompts.

Rendering is deterministic (registration order) and parseable: the
round-trip test recovers every tool's name and signature from the
rendered text, which guards against prompt drift.
"""

from __future__ import annotations

import re
from dataclasses import dataclass


@dataclass(frozen=True)
class ToolArgument:
    name: str
    required: bool
    description: str


@dataclass(frozen=True)
class ToolSpec:
    name: str
    signature: str
    docstring: str
    arguments: tuple[ToolArgument, ...] = ()


class ToolRegistry:
    def __init__(self) -> None:
        self._tools: dict[str, ToolSpec] = {}

    def register(self, spec: ToolSpec) -> None:
        if spec.name in self._tools:
            raise ValueError(f"tool {spec.name!r} is already registered")
        self._tools[spec.name] = spec

    def __contains__(self, name: str) -> bool:
        return name in self._tools

    def get(self, name: str) -> ToolSpec:
        return self._tools[name]

    def names(self) -> list[str]:
        return list(self._tools)

    def render_docs(self) -> str:
        blocks = []
        for spec in self._tools.values():
            lines = [
                f"{spec.name}:",
                f"  docstring: {spec.docstring}",
                f"  signature: {spec.signature}",
            ]
            if spec.arguments:
                lines.append("  arguments:")
                for arg in spec.arguments:
                    flag = "required" if arg.required else "optional"
                    lines.append(f"    - {arg.name} ({flag}): {arg.description}")
            blocks.append("\n".join(lines))
        return "\n\n".join(blocks)


_DOC_BLOCK_RE = re.compile(
    r"^(?P<name>[a-z_][a-z0-9_]*):\n  docstring: (?P<doc>.*)\n  signature: (?P<sig>.*)$",
    re.MULTILINE,
)


def parse_docs(rendered: str) -> list[tuple[str, str]]:
    """Recover (name, signature) pairs from rendered documentation."""
    return [(m.group("name"), m.group("sig")) for m in _DOC_BLOCK_RE.finditer(rendered)]


def default_registry() -> ToolRegistry:
    registry = ToolRegistry()
    for spec in _DEFAULT_TOOLS:
        registry.register(spec)
    return registry


_DEFAULT_TOOLS = (
    ToolSpec(
        "open",
        'open "<path>" [<line_number>]',
        "opens the file at the given path in the editor window, optionally jumping to a line",
        (
            ToolArgument("path", True, "the file to open"),
            ToolArgument("line_number", False, "line to move the window to (default: top of file)"),
        ),
    ),
    ToolSpec(
        "goto",
        "goto <line_number>",
        "moves the window of the open file to show the given line",
        (ToolArgument("line_number", True, "the line number to move the window to"),),
    ),
    ToolSpec(
        "scroll_down",
        "scroll_down",
        "moves the window down by one page, keeping a small overlap",
    ),
    ToolSpec(
        "scroll_up",
        "scroll_up",
        "moves the window up by one page, keeping a small overlap",
    ),
    ToolSpec(
        "create",
        "create <filename>",
        "creates and opens a new empty file",
        (ToolArgument("filename", True, "the file to create"),),
    ),
    ToolSpec(
        "edit",
        "edit <start_line>:<end_line>\n<replacement_text>\nend_of_edit",
        "replaces lines start through end (inclusive) of the open file with the given text; "
        "files with a registered syntax checker are checked and a failing edit is not applied",
        (
            ToolArgument("start_line", True, "first line to replace"),
            ToolArgument("end_line", True, "last line to replace (inclusive)"),
            ToolArgument("replacement_text", True, "text to replace the selected lines with"),
        ),
    ),
    ToolSpec(
        "insert",
        "insert <line_number>\n<text_to_add>\nend_of_insert",
        "inserts the given text after the specified line of the open file, with the same "
        "syntax gating as edit",
        (
            ToolArgument("line_number", True, "the line after which to insert"),
            ToolArgument("text_to_add", True, "the text to insert"),
        ),
    ),
    ToolSpec(
        "search_dir",
        "search_dir <search_term> [<dir>]",
        "searches for the term in all files under a directory (default: current directory)",
        (
            ToolArgument("search_term", True, "the term to look for"),
            ToolArgument("dir", False, "directory to search (default: current directory)"),
        ),
    ),
    ToolSpec(
        "search_file",
        "search_file <search_term> [<file>]",
        "searches for the term in one file (default: the open file)",
        (
            ToolArgument("search_term", True, "the term to look for"),
            ToolArgument("file", False, "file to search (default: the open file)"),
        ),
    ),
    ToolSpec(
        "find_file",
        "find_file <file_name> [<dir>]",
        "finds files with the given name under a directory (default: current directory)",
        (
            ToolArgument("file_name", True, "the file name to look for"),
            ToolArgument("dir", False, "directory to search (default: current directory)"),
        ),
    ),
    ToolSpec(
        "validate",
        "validate",
        "runs the task evaluation against the current workspace and reports the metrics; "
        "the session continues",
    ),
    ToolSpec(
        "submit",
        "submit",
        "runs the task evaluation one final time and ends the session",
    ),
    ToolSpec(
        "literature_search",
        "literature_search <query> [<num_results>]",
        "searches the configured paper index for open-access papers matching the query",
        (
            ToolArgument("query", True, "free-text search query"),
            ToolArgument("num_results", False, "maximum number of results (default 5)"),
        ),
    ),
    ToolSpec(
        "parse_pdf_url",
        "parse_pdf_url <url>",
        "downloads a PDF and returns its plain-text contents",
        (ToolArgument("url", True, "location of the PDF document"),),
    ),
    ToolSpec(
        "memory_write",
        "memory_write <content>",
        "saves important results, configurations or findings to persistent memory",
        (ToolArgument("content", True, "the text to remember"),),
    ),
    ToolSpec(
        "memory_read",
        "memory_read <query>",
        "retrieves the stored memory entries most similar to the query",
        (ToolArgument("query", True, "free-text retrieval query"),),
    ),
)
