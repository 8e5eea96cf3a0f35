"""Ordered Ramsey numbers of path powers: finders, extractors, exact search and bounds."""

from .core import (
    BLUE,
    RED,
    ChainLink,
    ChainParams,
    ChainWitness,
    Clique,
    EdgeColoring,
    FormatError,
    InvalidWitnessError,
    MonotonePath,
    OrderedGraph,
    PathPower,
    Pattern,
    QGraph,
    Witness,
    build_q_graph,
    color_class,
    complement,
    parse_pattern,
    validate_chain,
    validate_witness,
)
from .finders import (
    BudgetExhausted,
    SearchBudget,
    count_cliques,
    find_chain,
    find_clique,
    find_clique_pair_bipartite,
    find_ordered_embedding,
    longest_path_power,
)

__version__ = "0.1.0"
