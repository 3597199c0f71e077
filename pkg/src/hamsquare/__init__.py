"""Hamiltonian cycles in graph squares.

Deciding whether the square of a connected graph (in a block-structure
class) is hamiltonian, constructing explicit cycles, and independently
verifying every claim against the graph definition and an exact search.
"""

from .graph import (
    IN_G,
    SQUARE_ONLY,
    Graph,
    HamCycle,
    HamSquareError,
    connect,
    distance,
    induced,
    is_isomorphic_small,
    square,
)
from .blocks import (
    BlockDecomposition,
    BlockInfo,
    ClassCheck,
    branches,
    check_main_preconditions,
    decompose,
    is_subdivided_star,
    t_count,
)
from .search import BudgetExceeded, CycleConstraint, Rule, find_ham_cycle_constrained
from .engine import (
    Certificate,
    VertexType,
    acceptable_cycle,
    classify_vertex_type,
    compose_I,
    compose_II,
    compose_III,
    decide_and_construct,
    fleischner_cycle,
    lemma1_cycle,
    schaar_cycle,
    theorem7_construct,
    thomassen_path_cycle,
)
from .certify import (
    VerificationReport,
    check_sk13_claim,
    verify_decision,
    verify_edge_conditions,
    verify_ham_cycle_in_square,
)

__all__ = [
    "IN_G",
    "SQUARE_ONLY",
    "Graph",
    "HamCycle",
    "HamSquareError",
    "connect",
    "distance",
    "induced",
    "is_isomorphic_small",
    "square",
    "BlockDecomposition",
    "BlockInfo",
    "ClassCheck",
    "branches",
    "check_main_preconditions",
    "decompose",
    "is_subdivided_star",
    "t_count",
    "BudgetExceeded",
    "CycleConstraint",
    "Rule",
    "find_ham_cycle_constrained",
    "Certificate",
    "VertexType",
    "acceptable_cycle",
    "classify_vertex_type",
    "compose_I",
    "compose_II",
    "compose_III",
    "decide_and_construct",
    "fleischner_cycle",
    "lemma1_cycle",
    "schaar_cycle",
    "theorem7_construct",
    "thomassen_path_cycle",
    "VerificationReport",
    "check_sk13_claim",
    "verify_decision",
    "verify_edge_conditions",
    "verify_ham_cycle_in_square",
]
