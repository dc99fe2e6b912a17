"""Worst-case NR radio-interface latency models."""

from ._core import (
    ConfigError,
    UsageError,
    check,
    cp_latency,
    oracle,
    profile_json,
    residuals,
    run_config,
    threshold_tag,
    up_latency,
)

__all__ = [
    "ConfigError",
    "UsageError",
    "check",
    "cp_latency",
    "oracle",
    "profile_json",
    "residuals",
    "run_config",
    "threshold_tag",
    "up_latency",
]
