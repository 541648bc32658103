"""Quantitative comparison of network coding against optimal routing for
a single multicast source feeding five sinks in the plane.

The regular layout puts the sinks at the corners of a regular pentagon
with the source at the center.  Two displaced families are studied: the
source moves (class I) or one sink moves (class II).  For each layout
the package computes the cost of the best routing tree (a Euclidean
Steiner minimal tree), the cost of the coding construction that relays
through fixed anchor points, and their ratio, the cost advantage.

Entry points: single evaluations (``nc_cost_class_i``,
``closed_form_class_i``, ``esmt_oracle``), grid sweeps and region
statistics (``sweep_class_i``, ``extract_region``), the slope checks
behind the monotonicity claims (``monotonicity_report``), and the
``sifca`` command line tool built on all of them.
"""

from .analysis import (
    AllInfeasibleError,
    CAField,
    MonotonicityReport,
    RegionSummary,
    SweepSpec,
    cost_advantage,
    extract_region,
    max_ca,
    monotonicity_report,
    sweep_class_i,
    sweep_class_ii,
)
from .coding_cost import (
    FeasibilityVerdict,
    nc_cost_class_i,
    nc_cost_class_i_anchor_sum,
    nc_cost_class_ii,
    nc_feasible_class_i,
    nc_feasible_class_ii,
    relay_anchor_points,
)
from .geometry import MODEL, Point, distance, fermat_point, polar_to_point
from .model import (
    CANONICAL_SECTOR_I_DEG,
    CLASS_II_ALPHA_LIMIT_DEG,
    NodeClassIConfig,
    NodeClassIIConfig,
    REGULAR_SINKS,
    SINK_LABELS,
    canonicalize_class_i,
    terminals_class_i,
    terminals_class_ii,
)
from .routing_cost import (
    CaseCostsClassI,
    ConcatenationPlan,
    ConvergenceError,
    DuplicatePointError,
    FullTopology,
    NearDuplicatePointError,
    NonCanonicalAngleError,
    SteinerTree,
    closed_form_class_i,
    enumerate_concatenations,
    enumerate_full_topologies,
    esmt_class_ii,
    esmt_cost,
    esmt_oracle,
    mst,
    optimize_fst,
    published_case_values,
)

__version__ = "0.1.0"

__all__ = [
    "AllInfeasibleError",
    "CAField",
    "CANONICAL_SECTOR_I_DEG",
    "CLASS_II_ALPHA_LIMIT_DEG",
    "CaseCostsClassI",
    "ConcatenationPlan",
    "ConvergenceError",
    "DuplicatePointError",
    "FeasibilityVerdict",
    "FullTopology",
    "MODEL",
    "MonotonicityReport",
    "NearDuplicatePointError",
    "NodeClassIConfig",
    "NodeClassIIConfig",
    "NonCanonicalAngleError",
    "Point",
    "REGULAR_SINKS",
    "RegionSummary",
    "SINK_LABELS",
    "SteinerTree",
    "SweepSpec",
    "canonicalize_class_i",
    "closed_form_class_i",
    "cost_advantage",
    "distance",
    "enumerate_concatenations",
    "enumerate_full_topologies",
    "esmt_class_ii",
    "esmt_cost",
    "esmt_oracle",
    "extract_region",
    "fermat_point",
    "max_ca",
    "monotonicity_report",
    "mst",
    "nc_cost_class_i",
    "nc_cost_class_i_anchor_sum",
    "nc_cost_class_ii",
    "nc_feasible_class_i",
    "nc_feasible_class_ii",
    "optimize_fst",
    "polar_to_point",
    "published_case_values",
    "relay_anchor_points",
    "sweep_class_i",
    "sweep_class_ii",
    "terminals_class_i",
    "terminals_class_ii",
    "__version__",
]
