"""Coloring graphs through their edge-disjoint biclique partitions.

A graph that splits into m edge-disjoint complete bipartite subgraphs
admits a proper coloring with far fewer than 2^m colors; this package
makes that pipeline executable: partition model and validation, the
recursive pivot-based coloring with its auxiliary digraph, exact integer
recurrence tables with rigorous exponent checks, exact small-instance
oracles for chi and for the minimum biclique partition size, instance
generators, and an exhaustive small-graph sweep of chi <= bp + 1.
"""

__version__ = "0.1.0"

from .errors import (
    CapacityError,
    EdgeCollisionError,
    InvalidPartitionError,
    OracleLimitError,
)
from .graphs import (
    Coloring,
    DEFAULT_CHI_LIMIT,
    Graph,
    chromatic_number_exact,
    combine_colorings,
    greedy_clique,
    greedy_coloring,
    induced_subgraph,
    is_proper,
)
from .bicliques import (
    BITVECTOR_MAX,
    Biclique,
    BicliquePartition,
    DEFAULT_BP_EDGE_LIMIT,
    DEFAULT_BP_VERTEX_LIMIT,
    EDGE_COLLISION,
    EMPTY_PART,
    NON_EDGE_COVERED,
    OVERLAPPING_PARTS,
    UNCOVERED_EDGE,
    ValidationReport,
    Violation,
    bitvector_coloring,
    bp_exact,
    product_coloring,
    restrict,
    union_graph,
    validate,
)
from .recursion import (
    AuxiliaryDigraph,
    PivotChoice,
    RecursionTrace,
    STRATEGIES,
    TraceRow,
    asz_color,
    build_auxiliary_digraph,
    choose_pivot,
    internal_edge_side,
)
from .bounds import (
    BoundTable,
    DEFAULT_CHECK_K,
    ExponentReport,
    ExponentRow,
    build_table,
    closed_form_exponent,
    closed_form_holds,
    compare_mubayi_vishwanathan,
    exponent_ratio,
    log2_bracket,
    mv_exponent,
    verify_bound_chain,
)
from .generators import (
    SplitMix64,
    SweepReport,
    conjecture_sweep,
    disjoint_union,
    gen_matching,
    gen_random_partition,
    gen_star_partition,
)
