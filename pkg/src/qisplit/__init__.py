"""Vertex-split counterexamples to (1, C)-quasi-isometry under edge weightings."""

from .constructions import (
    Orientation,
    SplitResult,
    attach_pendant_paths,
    mycielski,
    orient,
    random_high_girth,
    subdivide,
    vertex_split,
)
from .graph_core import (
    EdgeWeighting,
    Graph,
    VertexMap,
    chromatic_number_exact,
    chromatic_upper_greedy,
    girth,
    hop_distances,
    is_geodesic,
    weighted_distances,
)
from .oriented_paths import PathPattern, find_for_witness, find_pattern, gallai_roy_directed
from .qi_verify import check_quasi_isometry, exists_qi_map_bruteforce, minimal_additive
from .weight_solver import solve_bruteforce, solve_lp, verify_weighting
from .witness import RefutationCertificate, refute_weighting, verify_certificate

__version__ = "0.1.0"
