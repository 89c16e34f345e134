"""Connected straight-line matchings for planar point sets in general position."""
from .crossing import (
    CrossingInstance,
    edge_crosses_sigma,
    maximal_crossing_matching,
    maximum_crossing_matching,
)
from .errors import (
    ConnMatchError,
    InfeasibleError,
    NoIntersectionError,
    PreconditionError,
    RankError,
    ResolutionError,
    SizeLimitError,
)
from .geometry import (
    Orientation,
    PointSet,
    convex_hull,
    is_general_position,
    orientation,
    point_depth,
    segments_cross,
)
from .instances import (
    GenSpec,
    generate,
    random_balanced_coloring,
    random_general_position,
    windmill_bicolored,
    windmill_uncolored,
)
from .matching import (
    BoundReport,
    antipodal_connected_matching,
    connected_matching_across_segment,
    connected_matching_colored,
    connected_matching_uncolored,
    deep_point_matching,
    greedy_polychromatic_matching,
    m_bound,
)
from .oracle import oracle_max_connected_matching
from .raycast import last_ray_hull_intersection
from .selection import select_kth
from .separator import (
    Separator,
    TriangleSplitRequest,
    corollary_split_point,
    polychromatic_separating_path_c4,
    polychromatic_separator_3edges,
    separating_path,
    split_triangle,
)
from .verify import check_bound_report, check_separator, is_connected, is_matching, is_polychromatic

__all__ = [name for name in dir() if not name.startswith("_")]
