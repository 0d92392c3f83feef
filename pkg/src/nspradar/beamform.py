"""
Transmit covariances, NSP cross-covariance and 3D beampattern evaluation.

The NSP cross matrix is M_h x M_v::

    R_nsp = P_h R_azm P_h^H a_h(t) a_v(t)^H R_elv
          + R_azm a_h(t) a_v(t)^H P_v R_elv P_v^H

and the beampattern is ``G(theta, phi) = |a_h(theta)^H R_nsp a_v(phi)|``.
With that pairing of conjugates the gain toward the target reduces to
products of real non-negative inner products, and every (theta, phi) whose
steering vectors were used as constraints is nulled.
"""

from dataclasses import dataclass

import numpy as np

from .channel import NullSector
from .errors import DomainError, ShapeError
from .geometry import AngleDeg, UraGeometry, ula_response
from .nsp import Projector, project_covariance

__all__ = [
    "CovariancePair",
    "NspCovariance",
    "BeampatternGrid",
    "SectorMetrics",
    "steered_covariance",
    "combine_nsp_covariance",
    "beampattern",
    "sector_metrics",
    "DEFAULT_FLOOR_DB",
]

DEFAULT_FLOOR_DB = -200.0


def _check_psd(name, r, size):
    if r.shape != (size, size):
        raise ShapeError(f"{name} must be {size}x{size}, got {r.shape}")
    scale = max(1.0, float(np.abs(r).max(initial=0.0)))
    if np.abs(r - r.conj().T).max(initial=0.0) > 1e-10 * scale:
        raise DomainError(f"{name} is not Hermitian")
    if np.linalg.eigvalsh(r).min() < -1e-10 * scale:
        raise DomainError(f"{name} is not positive semidefinite")


@dataclass(frozen=True, eq=False)
class CovariancePair:
    """Elevation (m_v x m_v) and azimuth (m_h x m_h) waveform covariances."""

    r_elv: np.ndarray
    r_azm: np.ndarray

    def __post_init__(self):
        _check_psd("r_elv", np.asarray(self.r_elv), np.shape(self.r_elv)[0])
        _check_psd("r_azm", np.asarray(self.r_azm), np.shape(self.r_azm)[0])

    @classmethod
    def steered(cls, target: AngleDeg, geometry: UraGeometry):
        """Rank-one covariances aimed at ``target`` in both domains."""
        return cls(
            r_elv=steered_covariance(target.elevation, geometry.m_v, geometry),
            r_azm=steered_covariance(target.azimuth, geometry.m_h, geometry),
        )


@dataclass(frozen=True, eq=False)
class NspCovariance:
    """M_h x M_v NSP cross matrix and the target angle it was steered to."""

    matrix: np.ndarray
    target: AngleDeg

    def __post_init__(self):
        if not np.all(np.isfinite(self.matrix)):
            raise DomainError("NSP covariance has non-finite entries")


@dataclass(frozen=True, eq=False)
class BeampatternGrid:
    """Sampled beampattern in dB.

    ``gain_db`` has shape ``(len(el_samples), len(az_samples))``.
    ``offset_db`` is the normalization added to ``20 log10 G`` before the
    floor clamp.
    """

    az_samples: np.ndarray
    el_samples: np.ndarray
    gain_db: np.ndarray
    peak_db: float
    peak_angle: AngleDeg
    floor_db: float = DEFAULT_FLOOR_DB
    offset_db: float = 0.0

    def value_at(self, az, el, atol=1e-9):
        """dB value at a grid point; raises ``KeyError`` if off-grid."""
        i = np.flatnonzero(np.abs(self.el_samples - el) <= atol)
        j = np.flatnonzero(np.abs(self.az_samples - az) <= atol)
        if not len(i) or not len(j):
            raise KeyError(f"({az}, {el}) is not a grid point")
        return float(self.gain_db[i[0], j[0]])


@dataclass(frozen=True)
class SectorMetrics:
    max_db: float
    mean_db: float
    peak_to_sector_db: float
    points: int


def steered_covariance(angle, m_d, geometry: UraGeometry) -> np.ndarray:
    """Rank-one covariance ``a a^H`` for the domain steering vector ``a``.

    The trace equals ``m_d`` because every steering entry has unit modulus.
    """
    a = ula_response(float(angle), int(m_d), geometry.spacing)
    return np.outer(a, a.conj())


def combine_nsp_covariance(
    cov: CovariancePair, p_h: Projector, p_v: Projector, target: AngleDeg,
    geometry: UraGeometry,
) -> NspCovariance:
    """Sum of the azimuth-projected and elevation-projected cross terms."""
    r_azm = np.asarray(cov.r_azm)
    r_elv = np.asarray(cov.r_elv)
    if p_h.dim != geometry.m_h or r_azm.shape[0] != geometry.m_h:
        raise ShapeError(
            f"azimuth projector/covariance must be {geometry.m_h}x{geometry.m_h}"
        )
    if p_v.dim != geometry.m_v or r_elv.shape[0] != geometry.m_v:
        raise ShapeError(
            f"elevation projector/covariance must be {geometry.m_v}x{geometry.m_v}"
        )
    a_h = ula_response(target.azimuth, geometry.m_h, geometry.spacing)
    a_v = ula_response(target.elevation, geometry.m_v, geometry.spacing)

    r_azm_null = project_covariance(p_h, r_azm)
    r_elv_null = project_covariance(p_v, r_elv)
    cross = np.outer(a_h, a_v.conj())
    r_v_nsp = r_azm_null @ cross @ r_elv
    r_h_nsp = r_azm @ cross @ r_elv_null
    return NspCovariance(r_v_nsp + r_h_nsp, target)


def _gain_magnitude(r, az, el, geometry):
    a_h = ula_response(az, geometry.m_h, geometry.spacing)  # m_h x n_az
    a_v = ula_response(el, geometry.m_v, geometry.spacing)  # m_v x n_el
    # einsum keeps each grid value's arithmetic independent of grid size/order
    left = np.einsum("ka,kv->av", a_h.conj(), r)
    return np.abs(np.einsum("av,ve->ea", left, a_v))


def beampattern(
    r: NspCovariance, az_samples, el_samples, geometry: UraGeometry,
    normalize_peak_db=None, floor_db: float = DEFAULT_FLOOR_DB,
) -> BeampatternGrid:
    """Evaluate the beampattern on an azimuth x elevation grid.

    Parameters
    ----------
    r : NspCovariance
    az_samples, el_samples : array_like
        Non-empty lists of angles in degrees.
    geometry : UraGeometry
    normalize_peak_db : float, optional
        If given, shift all dB values so the peak reads this level.
    floor_db : float
        Lower clamp applied after normalization.

    Returns
    -------
    BeampatternGrid
    """
    az = np.atleast_1d(np.asarray(az_samples, dtype=float))
    el = np.atleast_1d(np.asarray(el_samples, dtype=float))
    if az.size == 0 or el.size == 0:
        raise DomainError("beampattern grid needs at least one sample per axis")
    matrix = np.asarray(r.matrix)
    if matrix.shape != (geometry.m_h, geometry.m_v):
        raise ShapeError(
            f"NSP covariance is {matrix.shape}, expected ({geometry.m_h}, {geometry.m_v})"
        )
    g = _gain_magnitude(matrix, az, el, geometry)
    with np.errstate(divide="ignore"):
        raw_db = 20.0 * np.log10(g)
    flat = int(np.argmax(g))
    i, j = np.unravel_index(flat, g.shape)
    offset = 0.0
    if normalize_peak_db is not None and np.isfinite(raw_db[i, j]):
        offset = float(normalize_peak_db) - float(raw_db[i, j])
    gain_db = np.maximum(raw_db + offset, floor_db)
    gain_db.setflags(write=False)
    return BeampatternGrid(
        az_samples=az,
        el_samples=el,
        gain_db=gain_db,
        peak_db=float(gain_db[i, j]),
        peak_angle=AngleDeg(float(az[j]), float(el[i])),
        floor_db=float(floor_db),
        offset_db=offset,
    )


def sector_metrics(grid: BeampatternGrid, sector: NullSector) -> SectorMetrics:
    """Max/mean dB over grid points inside ``sector`` and the peak-to-sector range."""
    az, el = np.meshgrid(grid.az_samples, grid.el_samples)
    inside = sector.contains(az, el)
    if not inside.any():
        raise DomainError(
            f"null sector az [{sector.az_min}, {sector.az_max}] x "
            f"el [{sector.el_min}, {sector.el_max}] contains no grid points"
        )
    values = grid.gain_db[inside]
    max_db = float(values.max())
    return SectorMetrics(
        max_db=max_db,
        mean_db=float(values.mean()),
        peak_to_sector_db=grid.peak_db - max_db,
        points=int(inside.sum()),
    )
