"""Deterministic link-budget and capacity simulator for non-terrestrial links.

Ground-to-satellite/HAP hops at sub-6 GHz and mmWave carriers, with a
staged loss model (free-space, atmospheric gas, scintillation, ground
clutter), a dB-domain SNR budget, Shannon capacity, relay composition
and a sweep harness for the built-in figure presets.
"""

from .channel import (
    AtmosphereTable,
    LossBreakdown,
    Scenario,
    ScenarioTable,
    default_atmosphere_fraction,
    excess_loss_db,
    fspl_db,
    gas_attenuation_db,
    load_atmosphere_table,
    load_scenario_table,
    scintillation_db,
    total_path_loss,
)
from .errors import (
    ChainError,
    ConfigError,
    DomainError,
    GeometryError,
    NtnSimError,
    PresetError,
    SpecError,
    TableDomainError,
    TableFormatError,
    UnclassifiableAltitude,
)
from .geometry import (
    LinkGeometry,
    StationClass,
    classify_station,
    differential_delay_ms,
    propagation_delay_ms,
    slant_range_km,
)
from .linkbudget import (
    LinkResult,
    RadioConfig,
    default_bandwidth,
    evaluate_link,
    shannon_capacity_bps,
    snr_db,
)
from .relay import (
    RelayChain,
    RelayHop,
    RelayMode,
    af_end_to_end_snr,
    df_end_to_end_capacity,
    evaluate_chain,
)

__version__ = "0.1.0"

__all__ = [
    "AtmosphereTable",
    "ChainError",
    "ConfigError",
    "DomainError",
    "GeometryError",
    "LinkGeometry",
    "LinkResult",
    "LossBreakdown",
    "NtnSimError",
    "PresetError",
    "RadioConfig",
    "RelayChain",
    "RelayHop",
    "RelayMode",
    "Scenario",
    "ScenarioTable",
    "SpecError",
    "StationClass",
    "TableDomainError",
    "TableFormatError",
    "UnclassifiableAltitude",
    "af_end_to_end_snr",
    "classify_station",
    "default_atmosphere_fraction",
    "default_bandwidth",
    "df_end_to_end_capacity",
    "differential_delay_ms",
    "evaluate_chain",
    "evaluate_link",
    "excess_loss_db",
    "fspl_db",
    "gas_attenuation_db",
    "load_atmosphere_table",
    "load_scenario_table",
    "propagation_delay_ms",
    "scintillation_db",
    "shannon_capacity_bps",
    "slant_range_km",
    "snr_db",
    "total_path_loss",
]
