"""
Array descriptions, element indexing and steering vectors.

Angle convention: the phase progression across an array uses the cosine of
the angle, so 90 degrees is the zero-phase direction for both the azimuth
and the elevation axes. Element spacing is expressed in wavelengths.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError

__all__ = [
    "UraGeometry",
    "UlaGeometry",
    "AngleDeg",
    "SteeringVector",
    "linear_index",
    "ula_response",
    "steering_azimuth",
    "steering_elevation",
    "steering_joint",
]


@dataclass(frozen=True)
class UraGeometry:
    """Uniform rectangular array of the radar.

    Parameters
    ----------
    m_h : int
        Number of horizontal elements (elements per row).
    m_v : int
        Number of vertical elements (elements per column).
    spacing : float
        Inter-element spacing in wavelengths, identical along rows and columns.
    """

    m_h: int
    m_v: int
    spacing: float = 0.5

    def __post_init__(self):
        if int(self.m_h) != self.m_h or self.m_h < 1:
            raise DomainError(f"m_h must be a positive integer, got {self.m_h!r}")
        if int(self.m_v) != self.m_v or self.m_v < 1:
            raise DomainError(f"m_v must be a positive integer, got {self.m_v!r}")
        if not np.isfinite(self.spacing) or self.spacing <= 0:
            raise DomainError(f"spacing must be positive, got {self.spacing!r}")

    @property
    def m(self) -> int:
        """Total element count."""
        return self.m_h * self.m_v


@dataclass(frozen=True)
class UlaGeometry:
    """Uniform linear array of a base station (``n`` antennas)."""

    n: int
    spacing: float = 0.5

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise DomainError(f"n must be a positive integer, got {self.n!r}")
        if not np.isfinite(self.spacing) or self.spacing <= 0:
            raise DomainError(f"spacing must be positive, got {self.spacing!r}")


@dataclass(frozen=True)
class AngleDeg:
    """Azimuth/elevation pair in degrees."""

    azimuth: float
    elevation: float

    def __post_init__(self):
        if not (np.isfinite(self.azimuth) and np.isfinite(self.elevation)):
            raise DomainError("angles must be finite")
        if not -180.0 <= self.azimuth <= 180.0:
            raise DomainError(f"azimuth {self.azimuth} outside [-180, 180]")
        if not -90.0 <= self.elevation <= 90.0:
            raise DomainError(f"elevation {self.elevation} outside [-90, 90]")


@dataclass(frozen=True, eq=False)
class SteeringVector:
    """Unit-modulus array response with a tag naming its domain.

    Behaves like a 1-D complex array under numpy (``np.asarray(sv)``).
    """

    entries: np.ndarray
    domain: str

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self.entries
        return self.entries.astype(dtype)

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, item):
        return self.entries[item]


def linear_index(l: int, k: int, geometry: UraGeometry) -> int:
    """1-based element label of row ``l`` and column ``k``: ``(k-1)*m_v + l``."""
    if not 1 <= l <= geometry.m_v:
        raise IndexError(f"row index l={l} outside 1..{geometry.m_v}")
    if not 1 <= k <= geometry.m_h:
        raise IndexError(f"column index k={k} outside 1..{geometry.m_h}")
    return (k - 1) * geometry.m_v + l


def ula_response(angles_deg, n, spacing=0.5):
    """Phase response of an ``n``-element line array.

    Parameters
    ----------
    angles_deg : float or array_like
        Angle(s) in degrees.
    n : int
        Number of elements.
    spacing : float
        Element spacing in wavelengths.

    Returns
    -------
    numpy.ndarray
        Shape ``(n,)`` for a scalar angle, otherwise ``(n, len(angles))``;
        entry ``i`` is ``exp(-j 2 pi i spacing cos(angle))``.
    """
    angles = np.asarray(angles_deg, dtype=float)
    if not np.all(np.isfinite(angles)):
        raise DomainError("steering angles must be finite")
    phase_step = -2.0 * np.pi * spacing * np.cos(np.deg2rad(angles))
    idx = np.arange(n, dtype=float)
    if angles.ndim == 0:
        return np.exp(1j * idx * phase_step)
    return np.exp(1j * np.multiply.outer(idx, phase_step.ravel()))


def steering_azimuth(theta: float, geometry: UraGeometry) -> SteeringVector:
    """Azimuth steering vector of length ``m_h`` toward ``theta`` degrees."""
    return SteeringVector(
        ula_response(float(theta), geometry.m_h, geometry.spacing), "azimuth"
    )


def steering_elevation(phi: float, geometry: UraGeometry) -> SteeringVector:
    """Elevation steering vector of length ``m_v`` toward ``phi`` degrees."""
    return SteeringVector(
        ula_response(float(phi), geometry.m_v, geometry.spacing), "elevation"
    )


def steering_joint(theta: float, phi: float, geometry: UraGeometry) -> SteeringVector:
    """Full-array steering vector ``a_h(theta) kron a_v(phi)``.

    The ordering matches :func:`linear_index`: the elevation index varies
    fastest, so entry ``(k-1)*m_v + l`` is ``a_h[k] * a_v[l]``.
    """
    a_h = steering_azimuth(theta, geometry).entries
    a_v = steering_elevation(phi, geometry).entries
    return SteeringVector(np.kron(a_h, a_v), "joint")
