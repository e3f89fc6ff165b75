"""Jigsaw percolation on multi-coloured uniform hypergraphs.

Library surface: combinatorial indexing, hypergraph containers and
j-connectivity, the percolation engine, traversability and blueprint
enumeration, seeded samplers, dimension reductions, and the Monte Carlo
sweep harness. The percolation round loop runs on a compiled core when the
extension built (see jigsawhg._kernel.IMPLEMENTATION); set JIGSAWHG_PURE=1
to force the numpy fallback.
"""

from ._kernel import IMPLEMENTATION as KERNEL_IMPLEMENTATION
from .combinatorics import (
    iter_jsets,
    rank_jset,
    rank_space,
    subsets_of,
    unrank_jset,
)
from .engine import (
    PercolationResult,
    Triple,
    bottleneck_witness,
    build_aux_graph,
    internally_spanned,
    percolate,
)
from .errors import ValidationError
from .experiments import (
    CrossingResult,
    SweepConfig,
    SweepRow,
    estimate_crossing,
    evaluate_point,
    mix_seed,
    probabilities_for_c,
    run_sweep,
    wilson_interval,
)
from .hypergraph import (
    JPartition,
    MultiHypergraph,
    connectivity_threshold,
    is_j_connected,
    j_components,
)
from .io import (
    SWEEP_CSV_HEADER,
    decode_hypergraph,
    encode_hypergraph,
    load_sweep_config,
    sweep_rows_to_csv,
)
from .reductions import (
    VertexClassification,
    bipartition_projection,
    classify_good_vertices,
    link_double_hypergraph,
    link_vertex_map,
)
from .sampling import (
    MODEL_LINE,
    MODEL_MULTI,
    SampleSpec,
    sample,
    sample_line_double_graph,
    sample_multi_hypergraph,
    two_round_split,
)
from .traversability import (
    Blueprint,
    BlueprintMatrix,
    blueprint,
    census_triples,
    enumerate_Q,
    enumerate_blueprint_matrices,
    is_edge_minimal_triple,
    is_traversable_family,
    is_traversable_triple,
    matrix_weights,
    wrb_generate,
)

__version__ = "0.1.0"
