"""
Radar search solid angle and the volume lost to nulled sectors.

Solid angles use the flat approximation ``az_deg * el_deg / 57.296**2``;
nulled areas are carried in square degrees and subtracted before the
conversion to steradians.
"""

from dataclasses import dataclass, replace
import math

from scipy.optimize import brentq

from .errors import DomainError

__all__ = [
    "DEG_PER_RAD",
    "SearchExtent",
    "BsRegion",
    "SearchVolumeReport",
    "solid_angle",
    "nsp_solid_angle",
    "null_extent_from_geometry",
    "distance_sweep",
    "calibrate_region",
]

DEG_PER_RAD = 57.296


@dataclass(frozen=True)
class SearchExtent:
    """Total azimuth and elevation spans searched by the radar, in degrees."""

    az_extent: float
    el_extent: float

    def __post_init__(self):
        if not 0 < self.az_extent <= 360:
            raise DomainError(f"az_extent must be in (0, 360], got {self.az_extent}")
        if not 0 < self.el_extent <= 180:
            raise DomainError(f"el_extent must be in (0, 180], got {self.el_extent}")

    @property
    def area_deg2(self):
        return self.az_extent * self.el_extent


@dataclass(frozen=True)
class BsRegion:
    """Rectangle occupied by base stations, facing the radar.

    ``width_m`` is the horizontal extent centered on the radar bearing;
    heights are relative to the radar's horizontal plane.
    """

    width_m: float
    height_min_m: float
    height_max_m: float

    def __post_init__(self):
        if self.width_m < 0:
            raise DomainError("region width must be non-negative")
        if self.height_max_m < self.height_min_m:
            raise DomainError("region height_max_m must be >= height_min_m")


@dataclass(frozen=True)
class SearchVolumeReport:
    omega_sr: float
    omega_nsp_sr: float
    null_deg2: float
    percent_searchable: float


def solid_angle(extent: SearchExtent) -> float:
    """Search solid angle in steradians."""
    return extent.az_extent * extent.el_extent / DEG_PER_RAD**2


def nsp_solid_angle(extent: SearchExtent, null_deg2: float) -> SearchVolumeReport:
    """Search volume left after removing ``null_deg2`` square degrees."""
    total = extent.area_deg2
    if not 0 <= null_deg2 <= total:
        raise DomainError(
            f"null area {null_deg2} deg^2 outside [0, {total}] for this extent"
        )
    remaining = total - null_deg2
    return SearchVolumeReport(
        omega_sr=solid_angle(extent),
        omega_nsp_sr=remaining / DEG_PER_RAD**2,
        null_deg2=float(null_deg2),
        percent_searchable=100.0 * remaining / total,
    )


def null_extent_from_geometry(region: BsRegion, standoff_m: float) -> float:
    """Angular area (deg^2) the region subtends at range ``standoff_m``.

    Azimuth span is ``2 atan(width / 2d)``; elevation span is
    ``atan(h_max / d) - atan(h_min / d)``.
    """
    if not standoff_m > 0:
        raise DomainError(f"standoff distance must be positive, got {standoff_m}")
    d = standoff_m
    az_span = math.degrees(2.0 * math.atan(region.width_m / (2.0 * d)))
    el_span = math.degrees(
        math.atan(region.height_max_m / d) - math.atan(region.height_min_m / d)
    )
    return az_span * el_span


def distance_sweep(extent: SearchExtent, region: BsRegion, distances):
    """``(distance, percent_searchable)`` pairs for each standoff distance.

    The percentage grows with distance whenever ``d**2 >= h_min * h_max``,
    which covers every region that does not sit entirely above (or below)
    the radar at close range. Null areas larger than the search extent are
    capped at the extent.
    """
    out = []
    for d in distances:
        if not d > 0:
            raise DomainError(f"distances must be positive, got {d}")
        null = min(null_extent_from_geometry(region, d), extent.area_deg2)
        out.append((float(d), nsp_solid_angle(extent, null).percent_searchable))
    return out


def calibrate_region(
    extent: SearchExtent, region: BsRegion, distance_m: float, percent: float,
    field: str = "height_max_m",
) -> BsRegion:
    """Solve one region dimension so ``distance_m`` yields ``percent`` searchable.

    Parameters
    ----------
    field : {"height_max_m", "width_m"}
        The dimension to adjust; the others are held fixed.

    Raises
    ------
    DomainError
        If no value of ``field`` can reach the requested percentage.
    """
    if field not in ("height_max_m", "width_m"):
        raise DomainError(f"cannot calibrate field {field!r}")
    if not 0 < percent <= 100:
        raise DomainError(f"percent must be in (0, 100], got {percent}")
    target_null = extent.area_deg2 * (1.0 - percent / 100.0)

    def residual(value):
        trial = replace(region, **{field: value})
        return null_extent_from_geometry(trial, distance_m) - target_null

    lo = region.height_min_m if field == "height_max_m" else 0.0
    if residual(lo) > 0:
        raise DomainError("region already exceeds the requested null area")
    hi = max(1.0, abs(lo)) * 2.0
    for _ in range(200):
        if residual(hi) >= 0:
            break
        hi *= 2.0
    else:
        raise DomainError(f"no {field} reaches {percent}% at {distance_m} m")
    value = brentq(residual, lo, hi, xtol=1e-12, rtol=1e-14, maxiter=500)
    return replace(region, **{field: value})
