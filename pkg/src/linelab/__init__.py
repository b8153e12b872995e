"""Line arrangements and the hypergraph of lines over pseudo-discs.

The pieces: geometric primitives with explicit margins (geom), a clipped
half-edge arrangement with zone walks (arrangement), hypergraphs with
Delaunay/VC machinery (hypergraph), seeded scene generators
(constructions), disc shrinking and wedge sweeps (tangent), measurement
runs (experiments), SVG/figure output (render), and a command line front
end (cli).
"""

from .arrangement import (
    Arrangement,
    ZoneReport,
    build_arrangement,
    cell_complexity,
    leq_t_zone,
    zone,
    zone_upper_bound,
)
from .constructions import (
    GeneratorSpec,
    gen_disjoint_disc_grid,
    gen_grid_lines,
    gen_incircle_scene,
    gen_random_discs,
    gen_random_lines,
    gen_random_scene_discs,
    generate,
    incircle_family,
)
from .errors import (
    CapExceeded,
    DegenerateContact,
    DegenerateTriangle,
    GeneralPositionViolation,
    GenerationRetriesExhausted,
    IntervalViolation,
    LineLabError,
    NearParallel,
    OrderInconsistency,
    ParameterMismatch,
    QueryDegenerate,
    TooFewLines,
    UnattributedEdge,
    UnknownVertex,
    ValidationFailed,
    WitnessLocalizationFailed,
)
from .experiments import (
    GrowthReport,
    fit_loglog,
    run_growth_experiment,
    verify_aronov_range,
    verify_leq_t_linearity,
    verify_sweep_scenes,
    verify_zone_envelope,
    zone_of_query,
)
from .geom import (
    DEFAULT_MARGINS,
    ConvexPolygon,
    Disc,
    Line,
    Margins,
    Point,
    Scene,
    boundary_crossings,
    incircle_of_triangle,
    line_intersects_disc,
    line_intersects_polygon,
    line_intersects_pseudo_disc,
    line_line_intersection,
    raw_intersection,
    signed_distance,
    validate_general_position,
    validate_pseudo_disc_family,
)
from .hypergraph import (
    CellPairGraph,
    DelaunayGraph,
    Hypergraph,
    VcReport,
    build_hypergraph,
    count_by_size,
    degree_count,
    delaunay_graph,
    induced_subhypergraph,
    link_of_line,
    planarity_check,
    three_hyperedge_cell_graph,
    vc_dimension,
)
from .io import load_scene, save_scene, scene_from_dict, scene_to_dict
from .render import growth_figure, render_svg, zone_figure
from .tangent import (
    AuditReport,
    ShrinkResult,
    SweepReport,
    TangentDisc,
    WedgeOrder,
    interval_property_check,
    shrink_disc,
    shrink_family,
    sweep_distinct_count,
    tangent_family,
    total_hyperedge_audit,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
