"""Steiner minimum cuts of a multigraph: flesh, skeleton, projection and queries."""

from .carcass import Carcass, build_carcass
from .errors import CarcassError, DomainError, GraphFormatError, InvariantBreach
from .graphcore import MultiGraph, SteinerContext, load_graph, read_graph_file

__version__ = "0.1.0"

__all__ = [
    "Carcass",
    "build_carcass",
    "CarcassError",
    "DomainError",
    "GraphFormatError",
    "InvariantBreach",
    "MultiGraph",
    "SteinerContext",
    "load_graph",
    "read_graph_file",
]
