from __future__ import annotations

import pytest

from sandbench.agent.parsing import AgentDecision, FormatError, parse_decision


def test_simple_decision():
    decision = parse_decision("DISCUSSION\nlook around\n```\nls\n```")
    assert decision == AgentDecision(discussion="look around", command="ls")


def test_language_tag_on_fence_is_tolerated():
    decision = parse_decision("DISCUSSION\nx\n```bash\nls -la\n```")
    assert decision.command == "ls -la"


def test_multiline_command_body_preserved():
    text = "DISCUSSION\nedit it\n```\nedit 1:2\n    indented line\nend_of_edit\n```"
    decision = parse_decision(text)
    assert decision.command == "edit 1:2\n    indented line\nend_of_edit"


def test_two_blocks_is_format_error():
    with pytest.raises(FormatError, match="2 command blocks"):
        parse_decision("DISCUSSION\nx\n```\nls\n```\nand\n```\npwd\n```")


def test_no_fence_is_format_error():
    with pytest.raises(FormatError, match="no command"):
        parse_decision("I think I should run ls")


def test_empty_command_is_format_error():
    with pytest.raises(FormatError, match="empty"):
        parse_decision("DISCUSSION\nx\n```\n\n```")


def test_discussion_without_header_kept():
    decision = parse_decision("just do it\n```\nls\n```")
    assert decision.discussion == "just do it"
    assert decision.command == "ls"
