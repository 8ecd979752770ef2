"""Multi-hop composition: amplify-and-forward and decode-and-forward.

A chain runs top-down towards the ground: hop i's lower endpoint is hop
i+1's upper endpoint and exactly the last hop reaches altitude zero.
The chain's scenario applies to that ground-terminated hop only; higher
hops see no ground clutter.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .channel import (
    AtmosphereTable,
    LossBreakdown,
    Scenario,
    ScenarioTable,
)
from .errors import ChainError, DomainError
from .geometry import LinkGeometry
from .linkbudget import LinkResult, RadioConfig, evaluate_link, shannon_capacity_bps


class RelayMode(enum.Enum):
    AMPLIFY_FORWARD = "af"
    DECODE_FORWARD = "df"


@dataclass(frozen=True)
class RelayHop:
    geometry: LinkGeometry
    radio: RadioConfig
    atmosphere_fraction: float | None = None  # None = default for the hop


@dataclass(frozen=True)
class RelayChain:
    hops: tuple[RelayHop, ...]
    mode: RelayMode = RelayMode.AMPLIFY_FORWARD
    scenario: Scenario = Scenario.DENSE_URBAN


def af_end_to_end_snr(snr_linear_1: float, snr_linear_2: float) -> float:
    """Cascade SNR of a transparent two-hop relay: g1*g2 / (g1 + g2 + 1)."""
    if snr_linear_1 < 0 or snr_linear_2 < 0:
        raise DomainError(
            f"linear SNRs must be >= 0, got ({snr_linear_1}, {snr_linear_2})"
        )
    return snr_linear_1 * snr_linear_2 / (snr_linear_1 + snr_linear_2 + 1.0)


def df_end_to_end_capacity(c1_bps: float, c2_bps: float) -> float:
    """Regenerative relay capacity: the weakest hop decides."""
    if c1_bps < 0 or c2_bps < 0:
        raise DomainError(f"capacities must be >= 0, got ({c1_bps}, {c2_bps})")
    return min(c1_bps, c2_bps)


def _validate_chain(chain: RelayChain) -> None:
    if not chain.hops:
        raise ChainError("chain must contain at least one hop")
    for i in range(len(chain.hops) - 1):
        low_i = chain.hops[i].geometry.low_altitude_km
        high_next = chain.hops[i + 1].geometry.high_altitude_km
        if low_i != high_next:
            raise ChainError(
                f"hop {i} ends at {low_i:g} km but hop {i + 1} starts at "
                f"{high_next:g} km"
            )
    for i, hop in enumerate(chain.hops[:-1]):
        if hop.geometry.low_altitude_km == 0.0:
            raise ChainError(f"hop {i} reaches the ground before the final hop")
    if chain.hops[-1].geometry.low_altitude_km != 0.0:
        raise ChainError(
            f"hop {len(chain.hops) - 1} must terminate at altitude 0, got "
            f"{chain.hops[-1].geometry.low_altitude_km:g} km"
        )


def _aggregate_breakdown(results: tuple[LinkResult, ...]) -> LossBreakdown:
    fspl = gas = scint = excess = 0.0
    for r in results:
        fspl += r.breakdown.fspl_db
        gas += r.breakdown.gas_db
        scint += r.breakdown.scintillation_db
        excess += r.breakdown.excess_db
    return LossBreakdown.from_stages(fspl, gas, scint, excess)


def evaluate_chain(
    chain: RelayChain,
    table: AtmosphereTable,
    scenario_table: ScenarioTable | None = None,
    *,
    sampled_seed: int | None = None,
) -> LinkResult:
    """Evaluate a relay chain; a single-hop chain reduces to evaluate_link.

    AF folds per-hop linear SNRs pairwise in hop order and uses the
    minimum hop bandwidth (a transparent repeater cannot widen the
    signal). DF reports the bottleneck hop's SNR, bandwidth and capacity.
    The aggregated breakdown sums each stage over the hops.
    """
    _validate_chain(chain)
    per_hop: list[LinkResult] = []
    for hop in chain.hops:
        on_ground = hop.geometry.low_altitude_km == 0.0
        per_hop.append(
            evaluate_link(
                hop.geometry,
                hop.radio,
                chain.scenario if on_ground else None,
                table,
                hop.atmosphere_fraction,
                scenario_table,
                sampled_seed=sampled_seed if on_ground else None,
            )
        )
    if len(per_hop) == 1:
        return per_hop[0]

    hops = tuple(per_hop)
    if chain.mode is RelayMode.AMPLIFY_FORWARD:
        gamma = 10.0 ** (hops[0].snr_db / 10.0)
        for r in hops[1:]:
            gamma = af_end_to_end_snr(gamma, 10.0 ** (r.snr_db / 10.0))
        bandwidth = min(r.bandwidth_hz for r in hops)
        snr = 10.0 * math.log10(gamma) if gamma > 0 else -math.inf
        capacity = shannon_capacity_bps(bandwidth, snr)
    else:
        bottleneck = min(hops, key=lambda r: r.capacity_bps)
        snr = bottleneck.snr_db
        bandwidth = bottleneck.bandwidth_hz
        capacity = bottleneck.capacity_bps
    return LinkResult(
        breakdown=_aggregate_breakdown(hops),
        snr_db=snr,
        capacity_bps=capacity,
        bandwidth_hz=bandwidth,
        geometry=hops[-1].geometry,
        label=f"{chain.mode.value}:{len(hops)}hop",
        hops=hops,
    )
