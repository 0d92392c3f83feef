"""
Scenario files: parsing, validation and canonical emission.

The format is a list of named sections, each a brace block of ``key = value``
entries separated by newlines or semicolons. ``#`` starts a comment. Lists
use brackets. Example::

    radar { m_h = 40; m_v = 25; spacing = 0.5 }
    target { az_deg = 0; el_deg = 50 }
    null_sector {
        az_min = -45
        az_max = -40
        el_min = 5
        el_max = 15
    }
    search { distances = [500, 2000, 8000] }

``null_sector`` and ``bs`` may repeat; every other section appears at most
once. Angles are degrees, lengths meters.
"""

from dataclasses import dataclass, field
import re

from .channel import BsDescriptor, NullSector, sector_samples
from .errors import NspRadarError, ParseError
from .geometry import AngleDeg, UlaGeometry, UraGeometry
from .search import BsRegion, SearchExtent

__all__ = [
    "GridSpec",
    "SearchSpec",
    "Scenario",
    "parse_scenario",
    "parse_scenario_text",
    "emit_scenario",
]


@dataclass(frozen=True)
class GridSpec:
    az_min: float = -90.0
    az_max: float = 90.0
    az_step: float = 1.0
    el_min: float = -20.0
    el_max: float = 90.0
    el_step: float = 1.0

    def az_samples(self):
        return sector_samples(self.az_min, self.az_max, self.az_step)

    def el_samples(self):
        return sector_samples(self.el_min, self.el_max, self.el_step)


@dataclass(frozen=True)
class SearchSpec:
    """Search-volume request.

    Either ``null_areas_deg2`` (one area per distance) or ``region`` drives
    the sweep. With an anchor, the region's ``height_max_m`` is solved so
    the anchor distance gives the anchor percentage.
    """

    extent: SearchExtent = field(default_factory=lambda: SearchExtent(180.0, 110.0))
    region: BsRegion = None
    distances: tuple = ()
    null_areas_deg2: tuple = None
    anchor_distance_m: float = None
    anchor_percent: float = None


@dataclass(frozen=True)
class Scenario:
    radar: UraGeometry
    target: AngleDeg
    bs_list: tuple = ()
    null_sectors: tuple = ()
    grid: GridSpec = field(default_factory=GridSpec)
    nsp_tolerance: float = 1e-10
    peak_normalization_db: float = None
    search: SearchSpec = None


# -- tokenizer ---------------------------------------------------------------

_TOKEN = re.compile(
    r"""
    (?P<comment>\#[^\n]*)
  | (?P<newline>\n)
  | (?P<space>[ \t\r]+)
  | (?P<list>\[[^\]]*\])
  | (?P<punct>[{}=;])
  | (?P<word>[^\s{}=;\#\[\]]+)
    """,
    re.VERBOSE,
)


def _tokenize(text):
    tokens = []
    line = 1
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line=line)
        kind = m.lastgroup
        value = m.group()
        if kind in ("punct", "word", "list"):
            tokens.append((value, line, kind))
        elif kind == "newline":
            tokens.append(("\n", line, "sep"))
        line += value.count("\n")
        pos = m.end()
    return tokens


def _parse_blocks(text):
    """Return ``[(section, line, {key: (raw, line)})]``."""
    tokens = _tokenize(text)
    blocks = []
    i = 0

    def skip_seps(i):
        while i < len(tokens) and tokens[i][0] in ("\n", ";"):
            i += 1
        return i

    while True:
        i = skip_seps(i)
        if i >= len(tokens):
            break
        name, line, kind = tokens[i]
        if kind != "word":
            raise ParseError(f"expected a section name, got {name!r}", line=line)
        i = skip_seps(i + 1)
        if i >= len(tokens) or tokens[i][0] != "{":
            raise ParseError("expected '{' after section name", key=name, line=line)
        i += 1
        entries = {}
        while True:
            i = skip_seps(i)
            if i >= len(tokens):
                raise ParseError("unterminated section", key=name, line=line)
            tok, tline, tkind = tokens[i]
            if tok == "}":
                i += 1
                break
            if tkind != "word":
                raise ParseError(f"expected a key, got {tok!r}", key=name, line=tline)
            if i + 2 >= len(tokens) or tokens[i + 1][0] != "=":
                raise ParseError("expected 'key = value'", key=tok, line=tline)
            vtok, _, vkind = tokens[i + 2]
            if vkind not in ("word", "list"):
                raise ParseError("missing value", key=tok, line=tline)
            if tok in entries:
                raise ParseError("duplicate key", key=tok, line=tline)
            entries[tok] = (vtok, tline)
            i += 3
            if i < len(tokens) and tokens[i][0] not in ("\n", ";", "}"):
                raise ParseError(
                    f"unexpected {tokens[i][0]!r} after value", key=tok, line=tline
                )
        blocks.append((name, line, entries))
    return blocks


# -- value conversion --------------------------------------------------------

def _float(entries, key, default=None, required=False):
    if key not in entries:
        if required:
            raise ParseError("missing required field", key=key)
        return default
    raw, line = entries[key]
    try:
        return float(raw)
    except ValueError:
        raise ParseError(f"expected a number, got {raw!r}", key=key, line=line) from None


def _int(entries, key, default=None, required=False):
    if key not in entries:
        if required:
            raise ParseError("missing required field", key=key)
        return default
    raw, line = entries[key]
    try:
        return int(raw)
    except ValueError:
        raise ParseError(f"expected an integer, got {raw!r}", key=key, line=line) from None


def _float_list(entries, key):
    if key not in entries:
        return None
    raw, line = entries[key]
    if not raw.startswith("["):
        raise ParseError("expected a bracketed list", key=key, line=line)
    items = [s for s in re.split(r"[,\s]+", raw[1:-1]) if s]
    try:
        return tuple(float(s) for s in items)
    except ValueError:
        raise ParseError(f"bad list {raw!r}", key=key, line=line) from None


def _line(entries, key, fallback):
    return entries[key][1] if key in entries else fallback


def _require(cond, message, entries, key, fallback):
    if not cond:
        raise ParseError(message, key=key, line=_line(entries, key, fallback))


_ALLOWED = {
    "radar": {"m_h", "m_v", "spacing"},
    "target": {"az_deg", "el_deg"},
    "null_sector": {"az_min", "az_max", "el_min", "el_max", "step"},
    "bs": {"az_deg", "el_deg", "n", "gain_re", "gain_im", "side_deg"},
    "grid": {"az_min", "az_max", "az_step", "el_min", "el_max", "el_step"},
    "nsp": {"tolerance", "peak_normalization_db"},
    "search": {
        "az_extent", "el_extent", "region_width_m", "region_hmin_m",
        "region_hmax_m", "distances", "null_areas_deg2", "anchor_distance_m",
        "anchor_percent",
    },
}
_REPEATABLE = {"null_sector", "bs"}


def _build_radar(e, line):
    m_h = _int(e, "m_h", required=True)
    m_v = _int(e, "m_v", required=True)
    spacing = _float(e, "spacing", 0.5)
    _require(m_h >= 1, "must be a positive integer", e, "m_h", line)
    _require(m_v >= 1, "must be a positive integer", e, "m_v", line)
    _require(spacing > 0, "must be positive", e, "spacing", line)
    return UraGeometry(m_h, m_v, spacing)


def _build_angle(e, line):
    az = _float(e, "az_deg", required=True)
    el = _float(e, "el_deg", required=True)
    _require(-180 <= az <= 180, "azimuth must lie in [-180, 180]", e, "az_deg", line)
    _require(-90 <= el <= 90, "elevation must lie in [-90, 90]", e, "el_deg", line)
    return AngleDeg(az, el)


def _build_sector(e, line):
    vals = {k: _float(e, k, required=True) for k in ("az_min", "az_max", "el_min", "el_max")}
    step = _float(e, "step", 1.0)
    _require(vals["az_min"] <= vals["az_max"], "az_min exceeds az_max", e, "az_max", line)
    _require(vals["el_min"] <= vals["el_max"], "el_min exceeds el_max", e, "el_max", line)
    _require(step > 0, "step must be positive", e, "step", line)
    return NullSector(step=step, **vals)


def _build_bs(e, line):
    angle = _build_angle(e, line)
    n = _int(e, "n", 1)
    _require(n >= 1, "must be a positive integer", e, "n", line)
    gain = complex(_float(e, "gain_re", 1.0), _float(e, "gain_im", 0.0))
    _require(abs(gain) > 0, "path gain must be non-zero", e, "gain_re", line)
    return BsDescriptor(angle, UlaGeometry(n), gain, _float(e, "side_deg", 90.0))


def _build_grid(e, line):
    g = GridSpec(**{k: _float(e, k, getattr(GridSpec, k)) for k in _ALLOWED["grid"]})
    _require(g.az_step > 0, "step must be positive", e, "az_step", line)
    _require(g.el_step > 0, "step must be positive", e, "el_step", line)
    _require(g.az_min <= g.az_max, "az_min exceeds az_max", e, "az_max", line)
    _require(g.el_min <= g.el_max, "el_min exceeds el_max", e, "el_max", line)
    return g


def _build_search(e, line):
    az_ext = _float(e, "az_extent", 180.0)
    el_ext = _float(e, "el_extent", 110.0)
    _require(0 < az_ext <= 360, "must lie in (0, 360]", e, "az_extent", line)
    _require(0 < el_ext <= 180, "must lie in (0, 180]", e, "el_extent", line)
    distances = _float_list(e, "distances")
    _require(distances, "at least one distance is required", e, "distances", line)
    _require(all(d > 0 for d in distances), "distances must be positive", e, "distances", line)
    areas = _float_list(e, "null_areas_deg2")
    region = None
    if areas is not None:
        _require(len(areas) == len(distances),
                 "needs one area per distance", e, "null_areas_deg2", line)
        _require(all(0 <= a <= az_ext * el_ext for a in areas),
                 "areas must lie within the search extent", e, "null_areas_deg2", line)
    else:
        width = _float(e, "region_width_m", required=True)
        hmin = _float(e, "region_hmin_m", 0.0)
        hmax = _float(e, "region_hmax_m", hmin)
        _require(width >= 0, "must be non-negative", e, "region_width_m", line)
        _require(hmax >= hmin, "must be >= region_hmin_m", e, "region_hmax_m", line)
        region = BsRegion(width, hmin, hmax)
    anchor_d = _float(e, "anchor_distance_m")
    anchor_p = _float(e, "anchor_percent")
    _require((anchor_d is None) == (anchor_p is None),
             "anchor_distance_m and anchor_percent go together",
             e, "anchor_percent" if anchor_p is None else "anchor_distance_m", line)
    if anchor_d is not None:
        _require(region is not None, "anchors need a region, not null areas",
                 e, "anchor_distance_m", line)
        _require(anchor_d > 0, "must be positive", e, "anchor_distance_m", line)
        _require(0 < anchor_p <= 100, "must lie in (0, 100]", e, "anchor_percent", line)
    return SearchSpec(SearchExtent(az_ext, el_ext), region, distances, areas,
                      anchor_d, anchor_p)


def parse_scenario_text(text: str) -> Scenario:
    """Parse scenario text; see the module docstring for the format."""
    sections = {}
    for name, line, entries in _parse_blocks(text):
        if name not in _ALLOWED:
            raise ParseError("unknown section", key=name, line=line)
        for key, (_, kline) in entries.items():
            if key not in _ALLOWED[name]:
                raise ParseError(f"unknown key in section '{name}'", key=key, line=kline)
        if name in sections and name not in _REPEATABLE:
            raise ParseError("section may appear only once", key=name, line=line)
        sections.setdefault(name, []).append((line, entries))

    for required in ("radar", "target"):
        if required not in sections:
            raise ParseError("missing required section", key=required)

    def one(name, builder, default=None):
        if name not in sections:
            return default
        line, entries = sections[name][0]
        return builder(entries, line)

    def many(name, builder):
        return tuple(builder(e, line) for line, e in sections.get(name, []))

    try:
        nsp = sections.get("nsp", [(0, {})])[0]
        tol = _float(nsp[1], "tolerance", 1e-10)
        _require(tol >= 0, "must be non-negative", nsp[1], "tolerance", nsp[0])
        return Scenario(
            radar=one("radar", _build_radar),
            target=one("target", _build_angle),
            bs_list=many("bs", _build_bs),
            null_sectors=many("null_sector", _build_sector),
            grid=one("grid", _build_grid, GridSpec()),
            nsp_tolerance=tol,
            peak_normalization_db=_float(nsp[1], "peak_normalization_db"),
            search=one("search", _build_search),
        )
    except ParseError:
        raise
    except NspRadarError as exc:
        raise ParseError(str(exc)) from exc


def parse_scenario(path) -> Scenario:
    """Read and validate a scenario file."""
    with open(path, encoding="utf-8") as fh:
        return parse_scenario_text(fh.read())


# -- emitter -----------------------------------------------------------------

def _num(x):
    return repr(float(x))


def _block(name, pairs):
    body = "\n".join(f"    {k} = {v}" for k, v in pairs)
    return f"{name} {{\n{body}\n}}\n"


def emit_scenario(s: Scenario) -> str:
    """Canonical text form; ``parse_scenario_text(emit_scenario(s)) == s``."""
    out = [
        _block("radar", [("m_h", s.radar.m_h), ("m_v", s.radar.m_v),
                         ("spacing", _num(s.radar.spacing))]),
        _block("target", [("az_deg", _num(s.target.azimuth)),
                          ("el_deg", _num(s.target.elevation))]),
    ]
    for sec in s.null_sectors:
        out.append(_block("null_sector", [
            ("az_min", _num(sec.az_min)), ("az_max", _num(sec.az_max)),
            ("el_min", _num(sec.el_min)), ("el_max", _num(sec.el_max)),
            ("step", _num(sec.step)),
        ]))
    for bs in s.bs_list:
        gain = complex(bs.path_gain)
        out.append(_block("bs", [
            ("az_deg", _num(bs.angle.azimuth)), ("el_deg", _num(bs.angle.elevation)),
            ("n", bs.array.n), ("gain_re", _num(gain.real)),
            ("gain_im", _num(gain.imag)), ("side_deg", _num(bs.bs_side_angle)),
        ]))
    g = s.grid
    out.append(_block("grid", [
        ("az_min", _num(g.az_min)), ("az_max", _num(g.az_max)), ("az_step", _num(g.az_step)),
        ("el_min", _num(g.el_min)), ("el_max", _num(g.el_max)), ("el_step", _num(g.el_step)),
    ]))
    nsp = [("tolerance", _num(s.nsp_tolerance))]
    if s.peak_normalization_db is not None:
        nsp.append(("peak_normalization_db", _num(s.peak_normalization_db)))
    out.append(_block("nsp", nsp))
    if s.search is not None:
        sp = s.search
        pairs = [("az_extent", _num(sp.extent.az_extent)),
                 ("el_extent", _num(sp.extent.el_extent)),
                 ("distances", "[" + ", ".join(_num(d) for d in sp.distances) + "]")]
        if sp.null_areas_deg2 is not None:
            pairs.append(("null_areas_deg2",
                          "[" + ", ".join(_num(a) for a in sp.null_areas_deg2) + "]"))
        if sp.region is not None:
            pairs += [("region_width_m", _num(sp.region.width_m)),
                      ("region_hmin_m", _num(sp.region.height_min_m)),
                      ("region_hmax_m", _num(sp.region.height_max_m))]
        if sp.anchor_distance_m is not None:
            pairs += [("anchor_distance_m", _num(sp.anchor_distance_m)),
                      ("anchor_percent", _num(sp.anchor_percent))]
        out.append(_block("search", pairs))
    return "\n".join(out)
