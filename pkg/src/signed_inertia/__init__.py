"""Exact inertia sets of signed multigraphs.

Quick tour::

    from signed_inertia import parse, formula_minimal
    G = parse("n 3\\ne 1 2 o\\ne 2 3 o\\n")
    frontier, tree = formula_minimal(G)     # {(1,1)}
"""

from .corpus import FIXTURES, EXAMPLE_MATRIX, fixture, load_corpus
from .decomposition import (
    BudgetExhausted,
    EquivalenceReport,
    OracleReport,
    SeparationTree,
    clear_cache,
    formula_minimal,
    formula_terms,
    minimum_rank,
    oracle_inertia,
    verify_equivalence,
    witness_for_pair,
)
from .exact_matrix import (
    H,
    InertiaPair,
    Matrix,
    MatrixError,
    SymMat,
    charpoly_inertia,
    congruence,
    direct_sum,
    membership,
    pin,
    principal_delete,
    sample,
    subdirect_sum,
)
from .inertia_sets import PairSet, cong, leq, minimal, minkowski_add, staircase, truncate_n, union
from .signed_graph import (
    EdgeProfile,
    GraphFormatError,
    Parity,
    Separation,
    SignedGraph,
    find_1_separations,
    parse,
    select_separation,
)
from .transforms import (
    ArrowWitness,
    CongruenceError,
    adjoin,
    alternative_decide,
    check_lemmas,
    compose_term,
    hyperbolic_reduce,
    one_sum_decide,
    split_1sep,
    subdirect_arrow,
    vertex_delete_arrow,
    vertex_embed_arrow,
)

__version__ = "0.1.0"
