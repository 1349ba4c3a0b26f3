"""Bipartite graph spectra, quotient-matrix bounds, vertex splits, and
expander codes over GF(2)."""

from .bigraph import (
    BipartiteGraph,
    DegreeProfile,
    build,
    complete_bipartite,
    edge_connectivity,
    is_minimally_connected,
    path_graph,
    random_tree,
    read_edge_list,
    write_edge_list,
)
from .eccode import (
    DistanceReport,
    LinearCode,
    bit_flip_decode,
    codewords,
    construct_expander_code,
    distance_bounds,
    gf2_nullspace,
    gf2_rank,
    min_distance,
    parity_check_from_graph,
    read_alist,
    read_pchk,
    write_alist,
    write_pchk,
)
from .expansion import (
    ExpansionReport,
    LosslessParams,
    corollary_r5_gamma,
    lossless_parameters,
    ndc_expander_check,
    spectral_expansion,
    theorem_r4_report,
    vertex_expansion,
)
from .spectra import (
    BoundReport,
    InterlacingReport,
    Quotient2x2,
    SpectrumReport,
    SymmetricMatrix,
    adjacency_matrix,
    bipartite_quotient,
    bound_suite,
    interlacing_check,
    laplacian_matrix,
    lifted_matrix_spectrum,
    signless_laplacian_matrix,
    symmetric_eigenvalues,
)
from .vsplit import (
    ConnectivityCriterionReport,
    VertexSplitResult,
    split_sidecar,
    theorem_r1_check,
    theorem_r2_check,
    vertex_split,
)

__version__ = "0.1.0"
