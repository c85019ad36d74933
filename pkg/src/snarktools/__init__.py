"""Tools for snarks: cubic graphs, multipoles, colourings, matching-based
measures of uncolourability, structural invariants and a verified dataset
of 31 snarks of order 44."""

from .budget import Budget, BudgetExhausted
from .graph import CubicGraph, GraphFormatError, from_graph6, parse_adjacency_list, to_adjacency_list, to_graph6
from .multipole import Multipole, complete_junction, dipole_junction, join, partial_junction, subdivide_and_attach

__version__ = "0.1.0"

__all__ = [
    "Budget",
    "BudgetExhausted",
    "CubicGraph",
    "GraphFormatError",
    "Multipole",
    "complete_junction",
    "dipole_junction",
    "from_graph6",
    "join",
    "parse_adjacency_list",
    "partial_junction",
    "subdivide_and_attach",
    "to_adjacency_list",
    "to_graph6",
]
