"""
Line-of-sight interference channel between the radar URA and base-station ULAs.

A single LoS link is rank one: every N x M_v block of the azimuth partition is
the first block times a pure phase, and likewise for the elevation partition.
Column offset ``+m_v`` (next column of the array, k -> k+1) carries the
azimuth phase ``cos(theta)``; offset ``+1`` inside a column carries the
elevation phase ``cos(phi)``.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, ShapeError
from .geometry import AngleDeg, UlaGeometry, UraGeometry, ula_response

__all__ = [
    "BsDescriptor",
    "NullSector",
    "ChannelMatrix",
    "build_base_submatrix",
    "build_channel",
    "assemble_azimuth_partition",
    "assemble_elevation_partition",
    "sector_samples",
    "sector_constraint_matrix",
    "bs_constraint_matrix",
    "stack_channels",
]

AZIMUTH = "azimuth"
ELEVATION = "elevation"


@dataclass(frozen=True)
class BsDescriptor:
    """A base station seen from the radar.

    Parameters
    ----------
    angle : AngleDeg
        Direction of the BS from the radar.
    array : UlaGeometry
        The BS antenna line.
    path_gain : complex
        Complex LoS gain of the link; must be non-zero.
    bs_side_angle : float
        Angle of the radar as seen from the BS array, degrees (90 = zero phase).
    """

    angle: AngleDeg
    array: UlaGeometry = field(default_factory=lambda: UlaGeometry(1))
    path_gain: complex = 1 + 0j
    bs_side_angle: float = 90.0

    def __post_init__(self):
        if not abs(self.path_gain) > 0:
            raise DomainError("path_gain must be non-zero")
        if not np.isfinite(self.bs_side_angle):
            raise DomainError("bs_side_angle must be finite")


@dataclass(frozen=True)
class NullSector:
    """Azimuth x elevation rectangle to be nulled, sampled every ``step`` degrees."""

    az_min: float
    az_max: float
    el_min: float
    el_max: float
    step: float = 1.0

    def __post_init__(self):
        if self.az_min > self.az_max:
            raise DomainError(f"az_min {self.az_min} > az_max {self.az_max}")
        if self.el_min > self.el_max:
            raise DomainError(f"el_min {self.el_min} > el_max {self.el_max}")
        if not self.step > 0:
            raise DomainError(f"sector step must be positive, got {self.step}")

    def contains(self, az, el, atol=1e-9):
        """Boolean mask of the (broadcast) points inside the closed rectangle."""
        az = np.asarray(az)
        el = np.asarray(el)
        return (
            (az >= self.az_min - atol)
            & (az <= self.az_max + atol)
            & (el >= self.el_min - atol)
            & (el <= self.el_max + atol)
        )


@dataclass(frozen=True, eq=False)
class ChannelMatrix:
    """Complex N x M channel with its block structure.

    ``ordering`` records which partition the columns follow: ``"azimuth"``
    means blocks of ``m_v`` columns indexed by array column k (elevation
    index fastest, matching :func:`~nspradar.geometry.linear_index`);
    ``"elevation"`` means blocks of ``m_h`` columns indexed by array row l.
    """

    entries: np.ndarray
    partition: tuple
    ordering: str = AZIMUTH

    def __post_init__(self):
        m_h, m_v = self.partition
        if self.entries.ndim != 2 or self.entries.shape[1] != m_h * m_v:
            raise ShapeError(
                f"channel has shape {self.entries.shape}, expected N x {m_h * m_v}"
            )
        if not np.all(np.isfinite(self.entries)):
            raise DomainError("channel entries must be finite")

    @property
    def shape(self):
        return self.entries.shape

    def block(self, index):
        """0-based column block: width ``m_v`` (azimuth) or ``m_h`` (elevation)."""
        m_h, m_v = self.partition
        width = m_v if self.ordering == AZIMUTH else m_h
        return self.entries[:, index * width:(index + 1) * width]


def build_base_submatrix(bs: BsDescriptor, radar: UraGeometry) -> np.ndarray:
    """First azimuth block ``H~_{k=1}`` (N x m_v) of a LoS link.

    The block is ``path_gain * c a_v(phi_B)^T`` with ``c`` the BS-side line
    array response at ``bs.bs_side_angle``.
    """
    c = ula_response(bs.bs_side_angle, bs.array.n, bs.array.spacing)
    a_v = ula_response(bs.angle.elevation, radar.m_v, radar.spacing)
    return complex(bs.path_gain) * np.outer(c, a_v)


def _elevation_base(bs: BsDescriptor, radar: UraGeometry) -> np.ndarray:
    # first elevation block H~_{l=1}, N x m_h
    c = ula_response(bs.bs_side_angle, bs.array.n, bs.array.spacing)
    a_h = ula_response(bs.angle.azimuth, radar.m_h, radar.spacing)
    return complex(bs.path_gain) * np.outer(c, a_h)


def _kron_blocks(row, base):
    # row-vector Kronecker product, one scaled copy of base per entry of row
    return np.hstack([factor * base for factor in row])


def assemble_azimuth_partition(base, theta_b, radar: UraGeometry) -> ChannelMatrix:
    """Stack ``m_h`` phase-shifted copies of ``base``: ``a_h(theta_b) kron base``."""
    base = np.asarray(base, dtype=complex)
    if base.ndim != 2 or base.shape[1] != radar.m_v:
        raise ShapeError(
            f"azimuth base block must be N x {radar.m_v}, got {base.shape}"
        )
    a_h = ula_response(float(theta_b), radar.m_h, radar.spacing)
    return ChannelMatrix(_kron_blocks(a_h, base), (radar.m_h, radar.m_v))


def assemble_elevation_partition(base, phi_b, radar: UraGeometry) -> ChannelMatrix:
    """Stack ``m_v`` phase-shifted copies of ``base``: ``a_v(phi_b) kron base``.

    ``base`` is N x m_h (the elevation blocks span one array row each).
    """
    base = np.asarray(base, dtype=complex)
    if base.ndim != 2 or base.shape[1] != radar.m_h:
        raise ShapeError(
            f"elevation base block must be N x {radar.m_h}, got {base.shape}"
        )
    a_v = ula_response(float(phi_b), radar.m_v, radar.spacing)
    return ChannelMatrix(_kron_blocks(a_v, base), (radar.m_h, radar.m_v), ELEVATION)


def build_channel(bs: BsDescriptor, radar: UraGeometry) -> ChannelMatrix:
    """Full N x M LoS channel of one BS in the azimuth-partitioned layout."""
    return assemble_azimuth_partition(
        build_base_submatrix(bs, radar), bs.angle.azimuth, radar
    )


def sector_samples(lo, hi, step):
    """Angles from ``lo`` to ``hi`` every ``step`` degrees, both endpoints included."""
    if hi - lo <= 0:
        return np.array([float(lo)])
    count = int(np.floor((hi - lo) / step + 1e-9))
    samples = lo + step * np.arange(count + 1, dtype=float)
    if hi - samples[-1] > 1e-9 * max(1.0, abs(hi)):
        samples = np.append(samples, float(hi))
    else:
        samples[-1] = float(hi)
    return samples


def sector_constraint_matrix(sector: NullSector, radar: UraGeometry, domain: str):
    """Rows ``a(angle_i)^H`` sampled over one axis of ``sector``.

    Parameters
    ----------
    sector : NullSector
    radar : UraGeometry
    domain : {"azimuth", "elevation"}

    Returns
    -------
    numpy.ndarray
        K x m_h (azimuth) or K x m_v (elevation) complex matrix.
    """
    if domain == AZIMUTH:
        angles = sector_samples(sector.az_min, sector.az_max, sector.step)
        n = radar.m_h
    elif domain == ELEVATION:
        angles = sector_samples(sector.el_min, sector.el_max, sector.step)
        n = radar.m_v
    else:
        raise DomainError(f"unknown domain {domain!r}")
    return ula_response(angles, n, radar.spacing).conj().T


def bs_constraint_matrix(bs: BsDescriptor, radar: UraGeometry, domain: str):
    """Factor-domain constraint rows contributed by an explicit BS.

    These are the conjugated first blocks of the elevation (for the azimuth
    domain) or azimuth (for the elevation domain) partition, so every row is a
    multiple of ``a(angle_B)^H`` and lines up with the sector constraints.
    """
    if domain == AZIMUTH:
        return _elevation_base(bs, radar).conj()
    if domain == ELEVATION:
        return build_base_submatrix(bs, radar).conj()
    raise DomainError(f"unknown domain {domain!r}")


def stack_channels(channels) -> ChannelMatrix:
    """Vertically concatenate channels sharing the same column layout."""
    channels = list(channels)
    if not channels:
        raise ShapeError("need at least one channel to stack")
    first = channels[0]
    for ch in channels[1:]:
        if ch.partition != first.partition or ch.ordering != first.ordering:
            raise ShapeError(
                f"cannot stack partition {ch.partition}/{ch.ordering} onto "
                f"{first.partition}/{first.ordering}"
            )
    return ChannelMatrix(
        np.vstack([ch.entries for ch in channels]), first.partition, first.ordering
    )
