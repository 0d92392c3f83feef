"""
Report figures: beampattern image, 3D beampattern surface and the
search-volume distance sweep.

Figures are drawn on standalone ``Figure`` objects (no pyplot state), so the
functions are safe to call from the CLI and from tests without a display.
"""

import numpy as np
from matplotlib.figure import Figure

__all__ = ["plot_beampattern_image", "plot_beampattern_surface", "plot_search_volume"]

RC = {
    "font.size": 10,
    "axes.labelsize": 11,
    "axes.titlesize": 11,
    "xtick.labelsize": 9,
    "ytick.labelsize": 9,
}

# PNG metadata without a timestamp keeps repeated renders identical
_SAVE_KW = {"dpi": 120, "format": "png", "metadata": {"Software": None}}


def _figure(width=6.4, height=4.2):
    import matplotlib as mpl

    with mpl.rc_context(RC):
        return Figure(figsize=(width, height))


def _display_floor(grid, span_db=120.0):
    # keep the colour scale readable: exact nulls sit at the hard floor
    return max(grid.floor_db, grid.peak_db - span_db)


def plot_beampattern_image(grid, path, sectors=(), title=None):
    """Top-down image of the beampattern (azimuth on x, elevation on y)."""
    fig = _figure()
    ax = fig.add_subplot(1, 1, 1)
    vmin = _display_floor(grid)
    az, el = grid.az_samples, grid.el_samples
    mesh = ax.pcolormesh(az, el, np.maximum(grid.gain_db, vmin), shading="nearest",
                         vmin=vmin, vmax=grid.peak_db, cmap="viridis")
    cbar = fig.colorbar(mesh, ax=ax)
    cbar.set_label("gain (dB)")
    for s in sectors:
        ax.add_patch(_sector_patch(s))
    ax.plot(grid.peak_angle.azimuth, grid.peak_angle.elevation, "r+", ms=10, mew=2)
    ax.set_xlabel("azimuth (deg)")
    ax.set_ylabel("elevation (deg)")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, **_SAVE_KW)
    return path


def _sector_patch(s):
    from matplotlib.patches import Rectangle

    return Rectangle((s.az_min, s.el_min), s.az_max - s.az_min, s.el_max - s.el_min,
                     fill=False, edgecolor="white", linestyle="--", linewidth=1.2)


def plot_beampattern_surface(grid, path, title=None):
    fig = _figure(7.0, 5.0)
    ax = fig.add_subplot(1, 1, 1, projection="3d")
    vmin = _display_floor(grid)
    az, el = np.meshgrid(grid.az_samples, grid.el_samples)
    z = np.maximum(grid.gain_db, vmin)
    ax.plot_surface(az, el, z, cmap="viridis", vmin=vmin, vmax=grid.peak_db,
                    linewidth=0, antialiased=False, rstride=1, cstride=1)
    ax.set_xlabel("azimuth (deg)")
    ax.set_ylabel("elevation (deg)")
    ax.set_zlabel("gain (dB)")
    ax.view_init(elev=25, azim=-60)
    if title:
        ax.set_title(title)
    fig.savefig(path, **_SAVE_KW)
    return path


def plot_search_volume(search, path):
    """Searchable percentage versus standoff distance, with the no-NSP reference."""
    pts = search["points"]
    d = np.array([p["distance_m"] for p in pts])
    pct = np.array([p["percent_searchable"] for p in pts])
    fig = _figure()
    ax = fig.add_subplot(1, 1, 1)
    ax.plot(d, np.full_like(d, 100.0), "k--", label="without NSP")
    ax.plot(d, pct, "o-", label="with NSP")
    for x, y in zip(d, pct):
        ax.annotate(f"{y:.1f}%", (x, y), textcoords="offset points", xytext=(4, -12),
                    fontsize=8)
    if len(d) > 1 and d.min() > 0 and d.max() / d.min() > 10:
        ax.set_xscale("log")
    ax.set_xlabel("distance from base stations (m)")
    ax.set_ylabel("searchable volume (%)")
    ax.legend(loc="lower right")
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, **_SAVE_KW)
    return path
