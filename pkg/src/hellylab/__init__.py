"""hellylab: a desk-scale verification lab for Helly-type properties of
monotone hypergraph chains, with exact geometric instances from convex bodies
and a counterexample-search harness for the open 2d-target questions."""

from .builders import (
    MonteCarloBackend,
    QuantitativeChainSpec,
    SyntheticChainSpec,
    bounded_size_chain,
    explicit_chain,
    nerve_chain,
    quantitative_chain,
    random_chain,
    subsampled_chain,
)
from .certificates import Certificate, revalidate
from .chains import HypergraphChain, validate_chain
from .engine import (
    ExtractionOutcome,
    MissingEdgeFamily,
    NeighborhoodFamily,
    StabilityReport,
    extension_vertices,
    extract_large_edge,
    guaranteed_fraction,
    max_disjoint_missing,
    missing_bound_cross_arity,
    missing_bound_same_arity,
    refine_family,
    refinement_map,
    stability_check,
    stability_delta,
)
from .errors import ChainRejectedError, ExtractionFailedError, InputError
from .geometry import (
    Box,
    ConvexPolygon,
    HalfspaceBody,
    box,
    box_volume,
    intersect_boxes,
    intersect_polygons,
    polygon,
    polygon_area,
    random_boxes,
    random_polygons,
)
from .hypergraphs import (
    ColorClasses,
    ExplicitHypergraph,
    GroundSet,
    colorful_selections,
    k_subsets,
)
from .montecarlo import VolumeEstimate, mc_volume
from .search import SearchSpec, search_counterexample
from .verify import (
    ColorfulCheck,
    FractionalProfile,
    colorful_helly_holds,
    fractional_profile,
    helly_holds,
    largest_edge_within,
    min_helly_number,
    omega,
)

__version__ = "0.1.0"
