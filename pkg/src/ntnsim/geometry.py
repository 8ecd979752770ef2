"""Hop geometry on a spherical Earth.

Slant range between two stations follows from the law of cosines applied
to the triangle (Earth centre, lower station, upper station), expressed
so that only the altitude difference enters:

    d = sqrt(R'^2 sin^2(a) + dh^2 + 2 dh R') - R' sin(a)

with R' the geocentric radius of the lower station, dh the altitude
difference and a the elevation angle measured at the lower station.
Elevation is restricted to [10, 90] degrees; lower angles are outside
the supported sweep range and are rejected rather than extrapolated.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .constants import EARTH_RADIUS_KM, SPEED_OF_LIGHT_KM_S
from .errors import DomainError, GeometryError, UnclassifiableAltitude

MIN_ELEVATION_DEG = 10.0
MAX_ELEVATION_DEG = 90.0


class StationClass(enum.Enum):
    """Station category by altitude band."""

    GROUND_TERMINAL = "ground_terminal"
    UAV = "uav"
    HAP = "hap"
    LEO = "leo"
    MEO = "meo"
    GEO = "geo"


# (class, low_km, high_km), both ends inclusive; listed in ascending order.
_ALTITUDE_BANDS = (
    (StationClass.GROUND_TERMINAL, 0.0, 0.0),
    (StationClass.UAV, 0.0, 10.0),  # lower end exclusive, see classify_station
    (StationClass.HAP, 17.0, 25.0),
    (StationClass.LEO, 200.0, 2000.0),
    (StationClass.MEO, 2000.0, 35000.0),  # lower end exclusive
    (StationClass.GEO, 35700.0, 35900.0),
)


def classify_station(altitude_km: float) -> StationClass:
    """Map an altitude to its station class.

    Boundary altitudes belong to the lower class (10 km is UAV, 2000 km
    is LEO, 25 km is HAP). Altitudes in the gaps between bands raise
    UnclassifiableAltitude naming the gap.
    """
    if not math.isfinite(altitude_km) or altitude_km < 0:
        raise DomainError(f"altitude must be finite and >= 0 km, got {altitude_km}")
    if altitude_km == 0.0:
        return StationClass.GROUND_TERMINAL
    if altitude_km <= 10.0:
        return StationClass.UAV
    if 17.0 <= altitude_km <= 25.0:
        return StationClass.HAP
    if 200.0 <= altitude_km <= 2000.0:
        return StationClass.LEO
    if 2000.0 < altitude_km <= 35000.0:
        return StationClass.MEO
    if 35700.0 <= altitude_km <= 35900.0:
        return StationClass.GEO
    if altitude_km < 17.0:
        gap = "(10, 17) km between UAV and HAP bands"
    elif altitude_km < 200.0:
        gap = "(25, 200) km between HAP and LEO bands"
    elif altitude_km < 35700.0:
        gap = "(35000, 35700) km between MEO and GEO bands"
    else:
        gap = "above the 35900 km GEO band"
    raise UnclassifiableAltitude(f"altitude {altitude_km} km lies in the gap {gap}")


def _check_elevation(elevation_deg: float) -> None:
    if not (MIN_ELEVATION_DEG <= elevation_deg <= MAX_ELEVATION_DEG):
        raise DomainError(
            f"elevation must be in [{MIN_ELEVATION_DEG:g}, {MAX_ELEVATION_DEG:g}] deg, "
            f"got {elevation_deg}"
        )


def slant_range_km(low_km: float, high_km: float, elevation_deg: float) -> float:
    """Straight-line distance between the hop endpoints.

    Parameters
    ----------
    low_km : float
        Altitude of the lower endpoint (km, >= 0).
    high_km : float
        Altitude of the upper endpoint (km, > low_km).
    elevation_deg : float
        Elevation angle at the lower endpoint, in [10, 90] degrees.

    Returns
    -------
    float
        Slant range in km. Equals high_km - low_km at zenith and grows
        monotonically as the elevation drops.
    """
    _check_elevation(elevation_deg)
    if low_km < 0:
        raise GeometryError(f"lower altitude must be >= 0 km, got {low_km}")
    if high_km <= low_km:
        raise GeometryError(
            f"upper altitude must exceed lower altitude ({high_km} <= {low_km})"
        )
    r_low = EARTH_RADIUS_KM + low_km
    dh = high_km - low_km
    sin_e = math.sin(math.radians(elevation_deg))
    return math.sqrt(r_low * r_low * sin_e * sin_e + dh * dh + 2.0 * dh * r_low) - r_low * sin_e


def propagation_delay_ms(slant_km: float) -> float:
    """One-way propagation delay in milliseconds for a given range in km."""
    if slant_km < 0:
        raise DomainError(f"slant range must be >= 0 km, got {slant_km}")
    return slant_km / SPEED_OF_LIGHT_KM_S * 1000.0


def differential_delay_ms(
    altitude_km: float, edge_elevation_deg: float, center_elevation_deg: float
) -> float:
    """Extra one-way delay seen at the footprint edge relative to its centre.

    Both slant ranges are taken from the ground; the edge is the lower
    elevation. Requires 10 <= edge < center <= 90.
    """
    if altitude_km <= 0:
        raise DomainError(f"altitude must be > 0 km, got {altitude_km}")
    _check_elevation(edge_elevation_deg)
    _check_elevation(center_elevation_deg)
    if edge_elevation_deg >= center_elevation_deg:
        raise DomainError(
            "edge elevation must be strictly below center elevation "
            f"({edge_elevation_deg} >= {center_elevation_deg})"
        )
    d_edge = slant_range_km(0.0, altitude_km, edge_elevation_deg)
    d_center = slant_range_km(0.0, altitude_km, center_elevation_deg)
    return (d_edge - d_center) / SPEED_OF_LIGHT_KM_S * 1000.0


@dataclass(frozen=True)
class LinkGeometry:
    """One hop: endpoint altitudes, elevation, and derived range/delay."""

    low_altitude_km: float
    high_altitude_km: float
    elevation_deg: float
    slant_range_km: float
    one_way_delay_ms: float
    earth_radius_km: float = EARTH_RADIUS_KM

    @classmethod
    def from_endpoints(
        cls, low_altitude_km: float, high_altitude_km: float, elevation_deg: float
    ) -> "LinkGeometry":
        """Build a hop, deriving slant range and one-way delay."""
        d = slant_range_km(low_altitude_km, high_altitude_km, elevation_deg)
        return cls(
            low_altitude_km=low_altitude_km,
            high_altitude_km=high_altitude_km,
            elevation_deg=elevation_deg,
            slant_range_km=d,
            one_way_delay_ms=propagation_delay_ms(d),
        )
