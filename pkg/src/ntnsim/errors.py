"""Exception hierarchy for the simulator.

Everything raised on purpose derives from NtnSimError so callers can
catch one base class at API boundaries (the CLI maps subclasses to
exit codes).
"""


class NtnSimError(Exception):
    """Base class for all simulator errors."""


class DomainError(NtnSimError, ValueError):
    """An argument is outside the supported domain of an operation."""


class GeometryError(DomainError):
    """Endpoint altitudes do not describe a valid hop."""


class UnclassifiableAltitude(DomainError):
    """Altitude falls in a gap between station classes."""


class TableDomainError(DomainError):
    """Lookup outside the range covered by a data table."""


class TableFormatError(NtnSimError):
    """A data table file is malformed, unversioned, or fails its checksum."""


class ConfigError(NtnSimError):
    """A configuration file or radio configuration is invalid."""


class ChainError(NtnSimError):
    """A relay chain violates its structural invariants."""


class SpecError(NtnSimError):
    """A sweep specification is invalid."""


class PresetError(NtnSimError):
    """Unknown figure preset name."""
