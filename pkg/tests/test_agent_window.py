from __future__ import annotations

import pytest

from sandbench.agent.prompts import (
    ContextLengthExceeded,
    assemble_prompt,
    load_system_template,
    memory_state_line,
    step_banner,
)
from sandbench.agent.window import ConversationWindow
from sandbench.memory import MemoryStore

TEMPLATE = "SYSTEM\n{tool_docs}\nTASK:\n{task_description}\nMEMORY:\n{memory_state}\n{step_banner}"


def window(keep_last=5) -> ConversationWindow:
    return ConversationWindow(
        system_block=TEMPLATE, pinned_task_block="solve it", keep_last=keep_last
    )


def test_zero_interactions_renders_system_and_task_only():
    prompt = assemble_prompt(window(), "TOOLDOCS", "no memory", "(banner)")
    assert "TOOLDOCS" in prompt
    assert "solve it" in prompt
    assert "HISTORY" not in prompt


def test_seven_interactions_keep_five():
    w = window()
    for i in range(7):
        w.add(i, f"action-{i+1}", f"obs-{i+1}")
    prompt = assemble_prompt(w, "T", "M", "(banner)")
    # interactions 3..7 verbatim, 1..2 collapsed to placeholders
    for i in (3, 4, 5, 6, 7):
        assert f"action-{i}" in prompt
        assert f"obs-{i}" in prompt
    for i in (1, 2):
        assert f"obs-{i}" not in prompt
    assert "[step 0: output elided]" in prompt
    assert "[step 1: output elided]" in prompt


def test_collapsed_placeholders_preserve_step_indices():
    w = window(keep_last=2)
    for i in range(4):
        w.add(i, f"a{i}", f"o{i}")
    history = w.render_history()
    assert "[step 0: output elided]" in history
    assert "[step 1: output elided]" in history
    assert "(step 2)" in history and "(step 3)" in history


def test_rendering_is_deterministic():
    w = window()
    w.add(0, "ls", "files")
    first = assemble_prompt(w, "T", "M", "(banner)")
    second = assemble_prompt(w, "T", "M", "(banner)")
    assert first == second


def test_context_limit_raises():
    w = window()
    w.add(0, "ls", "word " * 5000)
    with pytest.raises(ContextLengthExceeded):
        assemble_prompt(w, "T", "M", "(banner)", context_limit=100)


def test_memory_banner_counts_and_tags(session):
    session.memory = MemoryStore()
    session.memory.write("learning rate 0.01 works best")
    session.memory.write("batch size 64 was stable")
    line = memory_state_line(session)
    assert line.startswith("2 record(s)")
    count, tags = session.memory.state_summary()
    for tag in tags:
        assert tag in line


def test_memory_banner_without_store(session):
    assert "not enabled" in memory_state_line(session)


def test_step_banner_contents(session):
    from sandbench.environment.session import execute_action

    execute_action(session, "true")
    banner = step_banner(session)
    assert "(Current Step: 1, Remaining Steps: 49)" in banner
    assert "(Open file: n/a)" in banner
    assert "(Current directory: workspace)" in banner


def test_default_template_has_all_slots():
    template = load_system_template()
    for slot in ("{tool_docs}", "{task_description}", "{memory_state}", "{step_banner}"):
        assert slot in template


def test_template_missing_slot_rejected(tmp_path):
    bad = tmp_path / "t.txt"
    bad.write_text("no slots here")
    with pytest.raises(ValueError, match="missing slots"):
        load_system_template(bad)
