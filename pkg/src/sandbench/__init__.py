"""Sandboxed shell harness for LLM research agents.

The package has three layers:

* an execution layer (``environment``, ``tools``, ``agent``, ``memory``)
  that runs one agent session at a time inside a permission-controlled
  workspace with a fixed command interface;
* native task packs (``games``, ``sat``) that score agent-produced
  strategies and branching heuristics without any external services;
* a scoring layer (``evaluation``, ``analysis``) that turns raw score
  tables into performance profiles, AUP scores, Borda rank tables and
  trajectory statistics.
"""

__version__ = "0.1.0"
