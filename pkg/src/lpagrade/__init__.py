"""Strong Z-grading of graph algebras: decision procedures, certificates,
exact Leavitt path algebra arithmetic and finite-dimensional core analysis."""

from .errors import LpaError
from .graph import Graph, LadderGraph, Path, validate_graph, ladder_instantiate
from .algebra import LpaElement

__all__ = [
    "Graph",
    "LadderGraph",
    "LpaElement",
    "LpaError",
    "Path",
    "ladder_instantiate",
    "validate_graph",
]

__version__ = "0.1.0"
