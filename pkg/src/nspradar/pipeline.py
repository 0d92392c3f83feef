"""End-to-end simulation of a scenario (no file I/O)."""

from dataclasses import dataclass
import logging
import time

import numpy as np

from .beamform import (
    BeampatternGrid,
    CovariancePair,
    beampattern,
    combine_nsp_covariance,
    sector_metrics,
)
from .channel import AZIMUTH, ELEVATION, bs_constraint_matrix, sector_constraint_matrix
from .nsp import identity_projector, null_projector
from .scenario import Scenario
from .search import calibrate_region, nsp_solid_angle, null_extent_from_geometry, solid_angle

log = logging.getLogger(__name__)

__all__ = ["constraint_matrix", "build_projectors", "SimulationResult", "simulate"]


def constraint_matrix(radar, null_sectors, bs_list, domain):
    """All factor-domain constraint rows for one domain, stacked."""
    width = radar.m_h if domain == AZIMUTH else radar.m_v
    rows = [sector_constraint_matrix(s, radar, domain) for s in null_sectors]
    rows += [bs_constraint_matrix(b, radar, domain) for b in bs_list]
    if not rows:
        return np.zeros((0, width), dtype=complex)
    return np.vstack(rows)


def build_projectors(radar, null_sectors=(), bs_list=(), tol=1e-10):
    """Azimuth (m_h x m_h) and elevation (m_v x m_v) null-space projectors."""
    p_h = null_projector(constraint_matrix(radar, null_sectors, bs_list, AZIMUTH), tol)
    p_v = null_projector(constraint_matrix(radar, null_sectors, bs_list, ELEVATION), tol)
    return p_h, p_v


@dataclass
class SimulationResult:
    scenario: Scenario
    grid: BeampatternGrid
    projector_ranks: tuple
    sector_metrics: list
    search: dict
    nsp_enabled: bool
    wall_clock_s: float


def _search_report(spec):
    extent = spec.extent
    region = spec.region
    if spec.null_areas_deg2 is not None:
        areas = list(spec.null_areas_deg2)
    else:
        if spec.anchor_distance_m is not None:
            region = calibrate_region(extent, region, spec.anchor_distance_m, spec.anchor_percent)
        areas = [min(null_extent_from_geometry(region, d), extent.area_deg2)
                 for d in spec.distances]
    points = []
    for d, a in zip(spec.distances, areas):
        rep = nsp_solid_angle(extent, a)
        points.append({
            "distance_m": float(d),
            "null_deg2": rep.null_deg2,
            "omega_nsp_sr": rep.omega_nsp_sr,
            "percent_searchable": rep.percent_searchable,
        })
    out = {
        "az_extent_deg": extent.az_extent,
        "el_extent_deg": extent.el_extent,
        "omega_sr": solid_angle(extent),
        "points": points,
    }
    if region is not None:
        out["region"] = {
            "width_m": region.width_m,
            "height_min_m": region.height_min_m,
            "height_max_m": region.height_max_m,
        }
    return out


def simulate(scenario: Scenario, nsp: bool = True, tol=None) -> SimulationResult:
    """Run the channel -> projector -> beampattern -> search-volume chain.

    Parameters
    ----------
    scenario : Scenario
    nsp : bool
        When False, identity projectors are used (unprojected reference).
    tol : float, optional
        Overrides ``scenario.nsp_tolerance``.
    """
    start = time.perf_counter()
    radar = scenario.radar
    tol = scenario.nsp_tolerance if tol is None else tol
    if nsp:
        if not scenario.null_sectors and not scenario.bs_list:
            log.warning("NSP enabled but no null sectors or base stations given")
        p_h, p_v = build_projectors(radar, scenario.null_sectors, scenario.bs_list, tol)
    else:
        p_h, p_v = identity_projector(radar.m_h), identity_projector(radar.m_v)
    log.info("projector ranks: azimuth %d/%d, elevation %d/%d",
             p_h.rank, radar.m_h, p_v.rank, radar.m_v)

    cov = CovariancePair.steered(scenario.target, radar)
    r_nsp = combine_nsp_covariance(cov, p_h, p_v, scenario.target, radar)
    grid = beampattern(
        r_nsp, scenario.grid.az_samples(), scenario.grid.el_samples(), radar,
        normalize_peak_db=scenario.peak_normalization_db,
    )
    metrics = [sector_metrics(grid, s) for s in scenario.null_sectors]
    search = _search_report(scenario.search) if scenario.search is not None else None
    return SimulationResult(
        scenario=scenario,
        grid=grid,
        projector_ranks=(p_h.rank, p_v.rank),
        sector_metrics=metrics,
        search=search,
        nsp_enabled=nsp,
        wall_clock_s=time.perf_counter() - start,
    )
