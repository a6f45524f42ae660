"""Distortion bounds for hyperbolic and harmonic level lines, channel
streamlines and flow around obstacles in a strip."""

from .certify import TurningReport, bounded_turning, certify_against_bound
from .conformal import AnalyticMap, identity, strip_to_disk, strip_to_half_plane, two_slit_map
from .errors import (
    BracketError,
    ConfigurationError,
    ConvergenceError,
    DomainError,
    ExtractionError,
    QuasilinesError,
    SingularError,
)
from .figures import fig1, fig2, fig3
from .flow import Channel, channel_bound, streamline
from .io import curve_from_csv, curve_to_csv, write_svg
from .motion import (
    Curve,
    StripMotion,
    motion_point,
    trace_harmonic_level,
    trace_hyperbolic_level,
    verify_level_distance,
    verify_motion_axioms,
)
from .obstacle import (
    GridSpec,
    MaskRegion,
    RealInterval,
    VerticalSegment,
    extract_streamline,
    find_matching_slit,
    obstacle_bound,
    ring_modulus,
    slit_modulus,
    solve_stream_function,
)
from .strip import (
    BoundReport,
    Theorem,
    distance_for_offset,
    harmonic_level_bound,
    level_line_bound,
    offset_for_distance,
    symmetric_level_bound,
)

__version__ = "0.1.0"
