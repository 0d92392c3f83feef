"""
Command-line front end.

    nspradar --scenario scenario.txt --out-dir out [--no-nsp] [--tol 1e-10]
             [--figures] [--quiet]

Writes ``beampattern.csv`` (``az_deg,el_deg,gain_db``, azimuth-major),
``summary.json`` and, when the scenario has a ``search`` section,
``search.csv`` (``distance_m,percent_searchable``). ``--figures`` adds PNG
renders next to them. All files are written to temporaries and renamed into
place only after every artifact has been produced.

Exit codes: 0 success, 2 parse/validation error, 3 numerical failure,
4 I/O failure.
"""

import argparse
from dataclasses import dataclass, field
import json
import logging
import os
import sys
import tempfile

import numpy as np

from .errors import NspRadarError, NumericalError, ParseError
from .pipeline import simulate
from .scenario import parse_scenario

log = logging.getLogger("nspradar")

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_NUMERICAL = 3
EXIT_IO = 4


def fmt(x):
    """Fixed 9-significant-digit text used by every emitted number."""
    return f"{float(x):.9g}"


def _round(obj):
    if isinstance(obj, float):
        return float(fmt(obj))
    if isinstance(obj, dict):
        return {k: _round(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round(v) for v in obj]
    return obj


@dataclass
class RunSummary:
    peak_db: float
    peak_angle: tuple
    sectors: list
    projector_ranks: tuple
    nsp_enabled: bool
    search: dict = None
    wall_clock_s: float = 0.0
    files: list = field(default_factory=list)

    def to_dict(self):
        # wall-clock time stays out of the file so repeated runs are byte-identical
        out = {
            "nsp_enabled": self.nsp_enabled,
            "peak_db": self.peak_db,
            "peak_angle": {"az_deg": self.peak_angle[0], "el_deg": self.peak_angle[1]},
            "projector_rank": {"azimuth": self.projector_ranks[0],
                               "elevation": self.projector_ranks[1]},
            "sectors": self.sectors,
        }
        if self.search is not None:
            out["search"] = self.search
        return _round(out)


def beampattern_csv(grid):
    lines = ["az_deg,el_deg,gain_db"]
    for j, az in enumerate(grid.az_samples):
        col = grid.gain_db[:, j]
        for i, el in enumerate(grid.el_samples):
            lines.append(f"{fmt(az)},{fmt(el)},{fmt(col[i])}")
    return "\n".join(lines) + "\n"


def search_csv(search):
    lines = ["distance_m,percent_searchable"]
    for p in search["points"]:
        lines.append(f"{fmt(p['distance_m'])},{fmt(p['percent_searchable'])}")
    return "\n".join(lines) + "\n"


def summarize(result):
    sectors = []
    for s, m in zip(result.scenario.null_sectors, result.sector_metrics):
        sectors.append({
            "az_min": s.az_min, "az_max": s.az_max,
            "el_min": s.el_min, "el_max": s.el_max,
            "points": m.points,
            "max_db": m.max_db,
            "mean_db": m.mean_db,
            "peak_to_sector_db": m.peak_to_sector_db,
        })
    grid = result.grid
    return RunSummary(
        peak_db=float(fmt(grid.peak_db)),
        peak_angle=(grid.peak_angle.azimuth, grid.peak_angle.elevation),
        sectors=sectors,
        projector_ranks=result.projector_ranks,
        nsp_enabled=result.nsp_enabled,
        search=result.search,
        wall_clock_s=result.wall_clock_s,
    )


class _AtomicWriter:
    """Collects artifacts as temporaries; ``commit`` renames them into place."""

    def __init__(self, out_dir):
        self.out_dir = out_dir
        self.pending = []

    def temp_path(self, name):
        fd, tmp = tempfile.mkstemp(prefix=f".{name}.", suffix=".tmp", dir=self.out_dir)
        os.close(fd)
        self.pending.append((tmp, os.path.join(self.out_dir, name)))
        return tmp

    def write_text(self, name, text):
        tmp = self.temp_path(name)
        with open(tmp, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)

    def commit(self):
        umask = os.umask(0)
        os.umask(umask)
        done = []
        for tmp, final in self.pending:
            os.chmod(tmp, 0o666 & ~umask)
            os.replace(tmp, final)
            done.append(final)
        self.pending = []
        return done

    def discard(self):
        for tmp, _ in self.pending:
            try:
                os.remove(tmp)
            except OSError:
                pass
        self.pending = []


def run(scenario, out_dir, nsp=True, tol=None, figures=False):
    """Simulate ``scenario`` and write its artifacts into ``out_dir``."""
    result = simulate(scenario, nsp=nsp, tol=tol)
    summary = summarize(result)
    os.makedirs(out_dir, exist_ok=True)
    writer = _AtomicWriter(out_dir)
    try:
        writer.write_text("beampattern.csv", beampattern_csv(result.grid))
        if result.search is not None:
            writer.write_text("search.csv", search_csv(result.search))
        writer.write_text("summary.json",
                          json.dumps(summary.to_dict(), indent=2) + "\n")
        if figures:
            _render_figures(result, writer)
        summary.files = writer.commit()
    finally:
        writer.discard()
    return summary


def _render_figures(result, writer):
    from . import plotting

    label = "NSP" if result.nsp_enabled else "no NSP"
    plotting.plot_beampattern_image(
        result.grid, writer.temp_path("beampattern.png"),
        sectors=result.scenario.null_sectors, title=f"beampattern ({label})")
    plotting.plot_beampattern_surface(
        result.grid, writer.temp_path("beampattern_3d.png"),
        title=f"beampattern ({label})")
    if result.search is not None:
        plotting.plot_search_volume(result.search, writer.temp_path("search_volume.png"))


def build_parser():
    p = argparse.ArgumentParser(
        prog="nspradar",
        description="Simulate radar null-space projection toward cellular base stations.",
    )
    p.add_argument("--scenario", required=True, help="scenario file")
    p.add_argument("--out-dir", default="./out", help="output directory (default ./out)")
    p.add_argument("--no-nsp", action="store_true",
                   help="bypass projection (unprojected reference run)")
    p.add_argument("--tol", type=float, default=None,
                   help="relative singular-value threshold (overrides the scenario)")
    p.add_argument("--figures", action="store_true",
                   help="also render PNG figures into the output directory")
    p.add_argument("--quiet", action="store_true", help="suppress the stdout summary")
    return p


def _print_summary(summary):
    d = summary.to_dict()
    print(f"peak {fmt(d['peak_db'])} dB at az {fmt(d['peak_angle']['az_deg'])} deg, "
          f"el {fmt(d['peak_angle']['el_deg'])} deg")
    print(f"projector rank: azimuth {d['projector_rank']['azimuth']}, "
          f"elevation {d['projector_rank']['elevation']}")
    for i, s in enumerate(d["sectors"]):
        print(f"sector {i}: max {fmt(s['max_db'])} dB, "
              f"peak-to-sector {fmt(s['peak_to_sector_db'])} dB")
    if summary.search is not None:
        for p in d["search"]["points"]:
            print(f"search @ {fmt(p['distance_m'])} m: "
                  f"{p['percent_searchable']:.2f}% searchable")
    print(f"wall clock {summary.wall_clock_s:.3f} s")
    for f in summary.files:
        print(f"wrote {f}")


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.WARNING if args.quiet else logging.INFO,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        scenario = parse_scenario(args.scenario)
        if args.tol is not None and args.tol < 0:
            raise ParseError("tolerance must be non-negative", key="--tol")
        summary = run(scenario, args.out_dir, nsp=not args.no_nsp, tol=args.tol,
                      figures=args.figures)
    except ParseError as exc:
        print(f"nspradar: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (NumericalError, np.linalg.LinAlgError, FloatingPointError) as exc:
        print(f"nspradar: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as exc:
        print(f"nspradar: I/O failure: {exc}", file=sys.stderr)
        return EXIT_IO
    except (NspRadarError, ValueError) as exc:
        print(f"nspradar: invalid scenario: {exc}", file=sys.stderr)
        return EXIT_PARSE
    if not args.quiet:
        _print_summary(summary)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
