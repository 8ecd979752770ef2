"""Sweep engine, figure presets, config loading and the CLI."""

from .config import ResolvedParams, load_config, load_fig_defaults
from .presets import PRESET_NAMES, preset
from .sweep import (
    AXIS_NAMES,
    SweepResult,
    SweepSpec,
    csv_bytes,
    emit_csv,
    load_sweep_spec,
    run_sweep,
)

__all__ = [
    "AXIS_NAMES",
    "PRESET_NAMES",
    "ResolvedParams",
    "SweepResult",
    "SweepSpec",
    "csv_bytes",
    "emit_csv",
    "load_config",
    "load_fig_defaults",
    "load_sweep_spec",
    "preset",
    "run_sweep",
]
