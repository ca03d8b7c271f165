"""Vertex and edge invariants distinguishing strongly regular graphs.

The invariants are traces or sorted diagonals of powers of the adjacency
matrix restricted to vertex neighborhoods, and of the directed-edge
matrix with entry A_ab * A_ac * A_bd. An escalation ladder applies them
in order of cost until a pair of graphs is separated.
"""

from .graph import (
    Graph,
    GraphFormatError,
    InfeasibleParametersError,
    SrgParams,
    check_srg,
    detect_format,
    parse_adjacency_rows,
    parse_graph6,
    parse_graphs,
    srg_diagnosis,
    srg_eigenvalues,
    trace_power_signature,
    write_graph6,
)
from .matpow import DEFAULT_MODULUS, MatrixOverflowError
from .vertexinv import (
    GraphSignature,
    InvariantMode,
    OutblockSignature,
    VertexPartition,
    VertexSignature,
    graph_signature,
    nbhd_power_diag,
    outblock_signature,
    partition_vertices,
    vertex_signatures,
)
from .edgeinv import (
    BarMatrix,
    DirectedEdgeIndex,
    EdgePartition,
    bar_power_diag,
    build_bar_matrix,
    edge_partition,
)
from .isomorphism import (
    IsoResult,
    apply_permutation,
    are_isomorphic,
    count_closed_walks,
    random_relabel,
)
from .pipeline import (
    DatasetError,
    DatasetReport,
    DistinguishReport,
    LadderConfig,
    LadderStage,
    PairVerdict,
    StageKind,
    compare_pair,
    dataset_report,
    default_ladder,
    distinguish_family,
    group_families,
    load_dataset,
)

__version__ = "0.1.0"
