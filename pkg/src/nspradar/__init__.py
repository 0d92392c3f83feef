"""3D line-of-sight radar/base-station channel modeling with 2D null-space projection."""

from .beamform import (
    BeampatternGrid,
    CovariancePair,
    NspCovariance,
    beampattern,
    combine_nsp_covariance,
    sector_metrics,
    steered_covariance,
)
from .channel import (
    BsDescriptor,
    ChannelMatrix,
    NullSector,
    assemble_azimuth_partition,
    assemble_elevation_partition,
    build_base_submatrix,
    build_channel,
    sector_constraint_matrix,
    stack_channels,
)
from .errors import DomainError, NspRadarError, NumericalError, ParseError, ShapeError
from .geometry import (
    AngleDeg,
    SteeringVector,
    UlaGeometry,
    UraGeometry,
    linear_index,
    steering_azimuth,
    steering_elevation,
    steering_joint,
)
from .nsp import Projector, SvdResult, null_projector, project_covariance, select_null_mask, svd
from .pipeline import build_projectors, simulate
from .scenario import Scenario, emit_scenario, parse_scenario, parse_scenario_text
from .search import (
    BsRegion,
    SearchExtent,
    SearchVolumeReport,
    calibrate_region,
    distance_sweep,
    nsp_solid_angle,
    null_extent_from_geometry,
    solid_angle,
)

__version__ = "0.1.0"
