"""Lagrangians of uniform hypergraphs and verification of the clique
threshold lambda(G) < lambda([l-1]^(3)) over left-compressed candidates."""

from .certify import BudgetExceeded, grid_certify
from .hypergraph import (
    Link,
    UniformHypergraph,
    colex_first_m,
    colex_less,
    complement,
    contains_complete_subgraph,
    diff_link,
    equivalent_classes,
    is_left_compressed,
    left_compress,
    link,
    max_clique_order,
    pair_link,
)
from .lagrangian import (
    LagrangianResult,
    SolverConfig,
    check_monotone_weighting,
    complete_lagrangian,
    compression_identity_residual,
    evaluate,
    kkt_residual,
    maximize,
    partial_gradient,
)
from .poset import (
    TriplePoset,
    enumerate_candidates,
    enumerate_up_closed,
    forced_seed,
    is_ancestor,
    is_direct_ancestor,
)
from .verifier import (
    CandidateReport,
    VerificationSummary,
    conjecture13_spotcheck,
    eq9_check,
    lemma41_predicate,
    thm111_predicate,
    verify,
)

__version__ = "0.1.0"
