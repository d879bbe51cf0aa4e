"""Finite-scale dimension analysis of compact subsets of [0,1]^d.

Sets are represented as tidy b-adic coded trees; on top of that the
package provides window estimators for box, Assouad and lower dimensions,
local-to-global largeness extraction, generators for self-similar sets
and dimension-spectrum constructions, and searches for extremal-dimension
zoom-in (miniset/microset) candidates.
"""

from .errors import MicroscopeError
from .ratios import LogRatio, PowerRatio
from .trees import (
    CodedTree,
    TreeParams,
    TreeSequenceLimit,
    descendant_counts,
    full_tree,
    subtree,
    tree_from_levels,
    tree_limit,
    truncate,
)
from .marking import tree_from_boxes, tree_from_point_set
from .metric import (
    hausdorff_distance_at_resolution,
    hausdorff_distance_sq_at_resolution,
)
from .serialize import (
    tree_dumps,
    tree_from_bytes,
    tree_from_json,
    tree_loads,
    tree_to_bytes,
    tree_to_json,
)
from .largeness import (
    ExtractedSubtree,
    LargenessReport,
    extract_large_subtree,
    is_globally_large,
    is_globally_small,
    is_locally_large,
    is_locally_small,
    local_large_exponent,
)
from .dimension import (
    DimensionEstimate,
    assouad_window_estimate,
    box_estimate,
    lower_window_estimate,
    similarity_dimension,
)
from .constructions import (
    ApproximantSpec,
    HomothetySystem,
    SpectrumSpec,
    attractor_tree,
    build_approximant,
    build_spectrum_set,
    canonical_set,
    miniset_tree,
)
from .gallery import (
    MicrosetCandidate,
    PairBranchingReport,
    check_pair_branching,
    dimension_spectrum,
    enumerate_minisets,
    max_microset_search,
    min_microset_search,
    singleton_microset_detect,
)

__version__ = "0.1.0"

__all__ = [
    "MicroscopeError",
    "LogRatio",
    "PowerRatio",
    "CodedTree",
    "TreeParams",
    "TreeSequenceLimit",
    "descendant_counts",
    "full_tree",
    "subtree",
    "tree_from_levels",
    "tree_limit",
    "truncate",
    "tree_from_boxes",
    "tree_from_point_set",
    "hausdorff_distance_at_resolution",
    "hausdorff_distance_sq_at_resolution",
    "tree_dumps",
    "tree_from_bytes",
    "tree_from_json",
    "tree_loads",
    "tree_to_bytes",
    "tree_to_json",
    "ExtractedSubtree",
    "LargenessReport",
    "extract_large_subtree",
    "is_globally_large",
    "is_globally_small",
    "is_locally_large",
    "is_locally_small",
    "local_large_exponent",
    "DimensionEstimate",
    "assouad_window_estimate",
    "box_estimate",
    "lower_window_estimate",
    "similarity_dimension",
    "ApproximantSpec",
    "HomothetySystem",
    "SpectrumSpec",
    "attractor_tree",
    "build_approximant",
    "build_spectrum_set",
    "canonical_set",
    "miniset_tree",
    "MicrosetCandidate",
    "PairBranchingReport",
    "check_pair_branching",
    "dimension_spectrum",
    "enumerate_minisets",
    "max_microset_search",
    "min_microset_search",
    "singleton_microset_detect",
]
