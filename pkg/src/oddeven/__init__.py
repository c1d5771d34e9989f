"""Tope graphs of hyperplane arrangements, their odd-even invariant and
Hamiltonian circuits, with exact rational geometry throughout."""

from .geometry import (
    Arrangement,
    ArrangementError,
    Hyperplane,
    are_adjacent,
    classify_bounded,
    delete,
    dehomogenize,
    direction_arrangement,
    direction_topes,
    enumerate_topes,
    enumerate_topes_bruteforce,
    feasible_tope,
    homogenize,
    intersection_points,
    is_centrally_simple,
    is_simple,
    restrict,
)
from .graph import (
    Circuit,
    SearchBudget,
    SearchResult,
    TopeGraph,
    build_graph,
    find_hamiltonian,
    has_perfect_matching,
    max_matching,
    oe_invariant,
    signed_oe,
    verify_circuit,
)

__version__ = "0.1.0"
