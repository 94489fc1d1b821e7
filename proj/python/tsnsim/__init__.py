"""Desk-scale model of a Kubernetes node's TSN egress path."""

from ._core import (
    Scenario,
    insert_proxy_plugin,
    load_scenario,
    parse_duration,
    parse_scenario,
    replay_check,
    run,
    run_csv,
)

__all__ = [
    "Scenario",
    "insert_proxy_plugin",
    "load_scenario",
    "parse_duration",
    "parse_scenario",
    "replay_check",
    "run",
    "run_csv",
]
