"""Leaper graphs on rectangular boards: descent tree, lifting, lineages and minimal-board bases."""

from .board import Board, standard_board
from .graph import LeaperGraph, complete_graph, components, is_directionally_rigid
from .leaper import CAMEL, KNIGHT, WAZIR, Leaper, classify, descent, ecf, tails
from .properties import brute_force_basis, property_for, theorem_basis

__all__ = [
    "Board",
    "standard_board",
    "LeaperGraph",
    "complete_graph",
    "components",
    "is_directionally_rigid",
    "CAMEL",
    "KNIGHT",
    "WAZIR",
    "Leaper",
    "classify",
    "descent",
    "ecf",
    "tails",
    "brute_force_basis",
    "property_for",
    "theorem_basis",
]
__version__ = "0.1.0"
