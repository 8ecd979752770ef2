"""Staged path-loss model: free-space, atmospheric gas, scintillation, clutter.

Gas absorption and scintillation come from shipped data tables rather
than from a re-implemented propagation recipe; the table files are the
verifiable contract and can be regenerated from any recipe without
touching this module. Gas attenuation uses a cosecant slant-path law on
the tabulated zenith value; scintillation scales a reference value
(given at 10 deg elevation) by a fixed monotone elevation profile.
Scenario excess loss (clutter/blockage near the ground terminal) is a
tabulated line-of-sight mixture per scenario and elevation.

Table file format (see data/FORMATS.md): line-oriented text, '#'
comments, mandatory "# version:" and "# checksum: sha256=..." headers,
whitespace-separated columns. The shipped tables are a calibration
fixture tuned so the case-study trends hold; they are not measurement
data.
"""

from __future__ import annotations

import enum
import hashlib
import math
import random
from bisect import bisect_right
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .errors import DomainError, TableDomainError, TableFormatError
from .geometry import LinkGeometry, MIN_ELEVATION_DEG, _check_elevation

# Fraction of the zenith gas/scintillation column that applies to a hop,
# keyed by the altitude of the hop's lower endpoint. Nearly all of the
# effect sits below the stratosphere, so hops that start at HAP altitude
# keep a small residual and hops that start above ~100 km keep none.
HAP_FLOOR_KM = 17.0
ATMOSPHERE_TOP_KM = 100.0

# Scintillation elevation profile exponent: s(a) = (sin 10deg / sin a)^1.2,
# normalised to 1 at the 10 deg reference and <= 0.25 at zenith.
_SCINT_PROFILE_EXPONENT = 1.2
_SIN_REF = math.sin(math.radians(MIN_ELEVATION_DEG))


class Scenario(enum.Enum):
    """Ground-terminal propagation environment."""

    DENSE_URBAN = "dense_urban"
    URBAN = "urban"
    SUBURBAN = "suburban"
    RURAL = "rural"

    @classmethod
    def from_name(cls, name: str) -> "Scenario":
        key = name.strip().lower().replace("-", "_").replace(" ", "_")
        for member in cls:
            if member.value == key:
                return member
        raise DomainError(
            f"unknown scenario {name!r}; expected one of "
            + ", ".join(m.value for m in cls)
        )


@dataclass(frozen=True)
class LossBreakdown:
    """Per-stage attenuation of one hop, in dB.

    total_db is always fspl + gas + scintillation + excess accumulated in
    that order; construction enforces the identity.
    """

    fspl_db: float
    gas_db: float
    scintillation_db: float
    excess_db: float
    total_db: float

    def __post_init__(self) -> None:
        stages = (self.fspl_db, self.gas_db, self.scintillation_db, self.excess_db)
        if not all(math.isfinite(v) for v in stages):
            raise DomainError(f"loss stages must be finite, got {stages}")
        if self.fspl_db <= 0:
            raise DomainError(f"fspl_db must be > 0, got {self.fspl_db}")
        if min(self.gas_db, self.scintillation_db, self.excess_db) < 0:
            raise DomainError(f"loss stages must be >= 0, got {stages}")
        expected = self.fspl_db + self.gas_db + self.scintillation_db + self.excess_db
        if self.total_db != expected:
            raise DomainError(
                f"total_db {self.total_db!r} != sum of stages {expected!r}"
            )

    @classmethod
    def from_stages(
        cls, fspl_db: float, gas_db: float, scintillation_db: float, excess_db: float
    ) -> "LossBreakdown":
        return cls(
            fspl_db=fspl_db,
            gas_db=gas_db,
            scintillation_db=scintillation_db,
            excess_db=excess_db,
            total_db=fspl_db + gas_db + scintillation_db + excess_db,
        )


def _interpolate(x: float, grid: tuple[float, ...], values: tuple[float, ...]) -> float:
    """Piecewise-linear interpolation; caller guarantees x within the grid."""
    i = bisect_right(grid, x)
    if i <= 0:
        return values[0]
    if i >= len(grid):
        return values[-1]
    x0, x1 = grid[i - 1], grid[i]
    t = (x - x0) / (x1 - x0)
    return values[i - 1] + t * (values[i] - values[i - 1])


@dataclass(frozen=True)
class AtmosphereTable:
    """Zenith gas attenuation and scintillation reference vs frequency.

    The frequency grid must be strictly ascending and cover [0.5, 100]
    GHz, and the zenith gas column must exhibit the oxygen absorption
    peak: some grid point in [55, 65] GHz strictly exceeds the values at
    50 and 70 GHz.
    """

    frequency_grid_ghz: tuple[float, ...]
    zenith_gas_db: tuple[float, ...]
    scintillation_ref_db: tuple[float, ...]
    version: str = "unversioned"

    def __post_init__(self) -> None:
        n = len(self.frequency_grid_ghz)
        if n < 2:
            raise TableFormatError("atmosphere table needs at least two rows")
        if len(self.zenith_gas_db) != n or len(self.scintillation_ref_db) != n:
            raise TableFormatError("atmosphere table columns differ in length")
        grid = self.frequency_grid_ghz
        if any(grid[i] >= grid[i + 1] for i in range(n - 1)):
            raise TableFormatError("frequency grid must be strictly ascending")
        if grid[0] > 0.5 or grid[-1] < 100.0:
            raise TableFormatError(
                f"frequency grid must cover [0.5, 100] GHz, got "
                f"[{grid[0]:g}, {grid[-1]:g}]"
            )
        for col in (self.zenith_gas_db, self.scintillation_ref_db):
            if any(not math.isfinite(v) or v < 0 for v in col):
                raise TableFormatError("table values must be finite and >= 0")
        peak = max(
            (g for f, g in zip(grid, self.zenith_gas_db) if 55.0 <= f <= 65.0),
            default=-1.0,
        )
        if not (peak > self.zenith_gas(50.0) and peak > self.zenith_gas(70.0)):
            raise TableFormatError(
                "zenith gas column lacks the oxygen absorption peak in [55, 65] GHz"
            )

    def _check_frequency(self, fc_ghz: float) -> None:
        grid = self.frequency_grid_ghz
        if not (grid[0] <= fc_ghz <= grid[-1]):
            raise TableDomainError(
                f"frequency {fc_ghz} GHz outside table grid "
                f"[{grid[0]:g}, {grid[-1]:g}] GHz"
            )

    def zenith_gas(self, fc_ghz: float) -> float:
        self._check_frequency(fc_ghz)
        return _interpolate(fc_ghz, self.frequency_grid_ghz, self.zenith_gas_db)

    def scintillation_ref(self, fc_ghz: float) -> float:
        self._check_frequency(fc_ghz)
        return _interpolate(fc_ghz, self.frequency_grid_ghz, self.scintillation_ref_db)


@dataclass(frozen=True)
class ScenarioRow:
    p_los: float
    clutter_los_db: float
    clutter_nlos_db: float
    shadow_sigma_db: float


@dataclass(frozen=True)
class ScenarioTable:
    """LOS probability and clutter loss per scenario over an elevation grid."""

    elevation_grid_deg: tuple[float, ...]
    rows: dict[Scenario, tuple[ScenarioRow, ...]]
    version: str = "unversioned"

    def __post_init__(self) -> None:
        grid = self.elevation_grid_deg
        if len(grid) < 2 or any(grid[i] >= grid[i + 1] for i in range(len(grid) - 1)):
            raise TableFormatError("elevation grid must be strictly ascending")
        if grid[0] > 10.0 or grid[-1] < 90.0:
            raise TableFormatError("elevation grid must cover [10, 90] deg")
        for scenario in Scenario:
            if scenario not in self.rows:
                raise TableFormatError(f"scenario table missing {scenario.value}")
            if len(self.rows[scenario]) != len(grid):
                raise TableFormatError(
                    f"scenario {scenario.value} has wrong number of rows"
                )
        for rows in self.rows.values():
            for r in rows:
                if not (0.0 <= r.p_los <= 1.0):
                    raise TableFormatError(f"p_los out of [0, 1]: {r.p_los}")
                if min(r.clutter_los_db, r.clutter_nlos_db, r.shadow_sigma_db) < 0:
                    raise TableFormatError("clutter and sigma values must be >= 0")

    def cell(self, scenario: Scenario, elevation_deg: float) -> ScenarioRow:
        """Row for one scenario at one elevation, interpolating each column."""
        _check_elevation(elevation_deg)
        rows = self.rows[scenario]
        grid = self.elevation_grid_deg
        return ScenarioRow(
            p_los=_interpolate(elevation_deg, grid, tuple(r.p_los for r in rows)),
            clutter_los_db=_interpolate(
                elevation_deg, grid, tuple(r.clutter_los_db for r in rows)
            ),
            clutter_nlos_db=_interpolate(
                elevation_deg, grid, tuple(r.clutter_nlos_db for r in rows)
            ),
            shadow_sigma_db=_interpolate(
                elevation_deg, grid, tuple(r.shadow_sigma_db for r in rows)
            ),
        )


# ---------------------------------------------------------------------------
# Table file parsing
# ---------------------------------------------------------------------------

def _read_table_lines(text: str, name: str) -> tuple[list[str], str]:
    """Split table text into data lines and metadata; verify the checksum.

    Returns (data_lines, version). The checksum header covers the data
    lines exactly as shipped (stripped of trailing whitespace, joined
    with single newlines).
    """
    version = None
    checksum = None
    data_lines: list[str] = []
    for raw in text.splitlines():
        line = raw.rstrip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.lower().startswith("version:"):
                version = body.split(":", 1)[1].strip()
            elif body.lower().startswith("checksum:"):
                checksum = body.split(":", 1)[1].strip()
            continue
        data_lines.append(line)
    if version is None:
        raise TableFormatError(f"{name}: missing '# version:' header")
    if checksum is None:
        raise TableFormatError(f"{name}: missing '# checksum:' header")
    if not checksum.startswith("sha256="):
        raise TableFormatError(f"{name}: checksum must be 'sha256=<hex>'")
    digest = hashlib.sha256("\n".join(data_lines).encode("utf-8")).hexdigest()
    if digest != checksum[len("sha256="):]:
        raise TableFormatError(
            f"{name}: checksum mismatch (file corrupted or edited without "
            f"updating the header); expected sha256={digest}"
        )
    return data_lines, version


def _parse_floats(fields: list[str], line: str, name: str) -> list[float]:
    try:
        return [float(f) for f in fields]
    except ValueError as exc:
        raise TableFormatError(f"{name}: bad numeric field in line {line!r}") from exc


def parse_atmosphere_table(text: str, name: str = "atmosphere table") -> AtmosphereTable:
    data_lines, version = _read_table_lines(text, name)
    freqs: list[float] = []
    gas: list[float] = []
    scint: list[float] = []
    for line in data_lines:
        fields = line.split()
        if len(fields) != 3:
            raise TableFormatError(
                f"{name}: expected 3 columns "
                f"(frequency_ghz zenith_gas_db scint_ref_db), got {line!r}"
            )
        f, g, s = _parse_floats(fields, line, name)
        freqs.append(f)
        gas.append(g)
        scint.append(s)
    return AtmosphereTable(
        frequency_grid_ghz=tuple(freqs),
        zenith_gas_db=tuple(gas),
        scintillation_ref_db=tuple(scint),
        version=version,
    )


def parse_scenario_table(text: str, name: str = "scenario table") -> ScenarioTable:
    data_lines, version = _read_table_lines(text, name)
    cells: dict[Scenario, dict[float, ScenarioRow]] = {s: {} for s in Scenario}
    for line in data_lines:
        fields = line.split()
        if len(fields) != 6:
            raise TableFormatError(
                f"{name}: expected 6 columns (scenario elevation_deg p_los "
                f"clutter_los_db clutter_nlos_db shadow_sigma_db), got {line!r}"
            )
        scenario = Scenario.from_name(fields[0])
        elev, p, los, nlos, sigma = _parse_floats(fields[1:], line, name)
        if elev in cells[scenario]:
            raise TableFormatError(
                f"{name}: duplicate row for {scenario.value} at {elev:g} deg"
            )
        cells[scenario][elev] = ScenarioRow(p, los, nlos, sigma)
    grids = {tuple(sorted(rows)) for rows in cells.values()}
    if len(grids) != 1:
        raise TableFormatError(f"{name}: scenarios use different elevation grids")
    grid = grids.pop()
    return ScenarioTable(
        elevation_grid_deg=grid,
        rows={s: tuple(cells[s][e] for e in grid) for s in Scenario},
        version=version,
    )


def _data_text(filename: str) -> str:
    return (resources.files("ntnsim") / "data" / filename).read_text(encoding="utf-8")


@lru_cache(maxsize=None)
def load_atmosphere_table(path: str | Path | None = None) -> AtmosphereTable:
    """Load an atmosphere table; None loads the packaged default."""
    if path is None:
        return parse_atmosphere_table(_data_text("atmosphere.tsv"), "atmosphere.tsv")
    p = Path(path)
    return parse_atmosphere_table(p.read_text(encoding="utf-8"), str(p))


@lru_cache(maxsize=None)
def load_scenario_table(path: str | Path | None = None) -> ScenarioTable:
    """Load a scenario table; None loads the packaged default."""
    if path is None:
        return parse_scenario_table(_data_text("scenario.tsv"), "scenario.tsv")
    p = Path(path)
    return parse_scenario_table(p.read_text(encoding="utf-8"), str(p))


# ---------------------------------------------------------------------------
# Loss stages
# ---------------------------------------------------------------------------

def fspl_db(slant_range_km: float, fc_ghz: float) -> float:
    """Free-space path loss: 92.45 + 20 log10(fc_GHz) + 20 log10(d_km)."""
    if slant_range_km <= 0 or fc_ghz <= 0:
        raise DomainError(
            f"slant range and frequency must be > 0, got "
            f"({slant_range_km}, {fc_ghz})"
        )
    return 92.45 + 20.0 * math.log10(fc_ghz) + 20.0 * math.log10(slant_range_km)


def gas_attenuation_db(
    fc_ghz: float, elevation_deg: float, table: AtmosphereTable
) -> float:
    """Slant-path gas absorption: zenith value scaled by csc(elevation)."""
    _check_elevation(elevation_deg)
    return table.zenith_gas(fc_ghz) / math.sin(math.radians(elevation_deg))


def scintillation_elevation_scale(elevation_deg: float) -> float:
    """Monotone profile s(a), 1 at 10 deg and about 0.12 at zenith."""
    _check_elevation(elevation_deg)
    return (_SIN_REF / math.sin(math.radians(elevation_deg))) ** _SCINT_PROFILE_EXPONENT


def scintillation_db(
    fc_ghz: float, elevation_deg: float, table: AtmosphereTable
) -> float:
    """Scintillation fade margin: 10-deg reference scaled down with elevation."""
    return table.scintillation_ref(fc_ghz) * scintillation_elevation_scale(elevation_deg)


def excess_loss_db(
    scenario: Scenario,
    fc_ghz: float,
    elevation_deg: float,
    table: ScenarioTable | None = None,
    *,
    sampled_seed: int | None = None,
) -> float:
    """Scenario-dependent clutter/blockage loss at the ground terminal.

    Expected mode (sampled_seed None) returns the LOS-probability mixture
    p*L_los + (1-p)*L_nlos. Sampled mode draws the LOS state and a
    shadowing term (normal in dB, clamped at zero total) from a generator
    seeded with sampled_seed, so equal seeds give equal values.

    The shipped table is frequency-flat; fc_ghz is part of the contract
    so frequency-dependent tables can be swapped in without changing
    call sites.
    """
    if not isinstance(scenario, Scenario):
        raise DomainError(f"unknown scenario: {scenario!r}")
    del fc_ghz  # shipped table carries no frequency axis
    if table is None:
        table = load_scenario_table()
    cell = table.cell(scenario, elevation_deg)
    if sampled_seed is None:
        return cell.p_los * cell.clutter_los_db + (1.0 - cell.p_los) * cell.clutter_nlos_db
    rng = random.Random(sampled_seed)
    is_los = rng.random() < cell.p_los
    clutter = cell.clutter_los_db if is_los else cell.clutter_nlos_db
    return max(0.0, clutter + rng.gauss(0.0, cell.shadow_sigma_db))


def default_atmosphere_fraction(low_altitude_km: float) -> float:
    """Default share of the atmospheric column for a hop's lower endpoint."""
    if low_altitude_km < HAP_FLOOR_KM:
        return 1.0
    if low_altitude_km < ATMOSPHERE_TOP_KM:
        return 0.1
    return 0.0


def total_path_loss(
    geometry: LinkGeometry,
    fc_ghz: float,
    scenario: Scenario | None,
    table: AtmosphereTable,
    atmosphere_fraction: float,
    scenario_table: ScenarioTable | None = None,
    *,
    sampled_seed: int | None = None,
) -> LossBreakdown:
    """Full staged breakdown for one hop.

    Gas and scintillation are scaled by atmosphere_fraction (in [0, 1])
    for hops that do not traverse the whole atmospheric column. A None
    scenario means no ground clutter applies (hops that never approach
    the ground); excess is then exactly zero.
    """
    if not (0.0 <= atmosphere_fraction <= 1.0):
        raise DomainError(
            f"atmosphere_fraction must be in [0, 1], got {atmosphere_fraction}"
        )
    fspl = fspl_db(geometry.slant_range_km, fc_ghz)
    gas = atmosphere_fraction * gas_attenuation_db(fc_ghz, geometry.elevation_deg, table)
    scint = atmosphere_fraction * scintillation_db(fc_ghz, geometry.elevation_deg, table)
    if scenario is None:
        excess = 0.0
    else:
        excess = excess_loss_db(
            scenario,
            fc_ghz,
            geometry.elevation_deg,
            scenario_table,
            sampled_seed=sampled_seed,
        )
    return LossBreakdown.from_stages(fspl, gas, scint, excess)
