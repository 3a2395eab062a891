"""Exact bounds on the minimum average Hamming distance beta(n, M) of binary codes."""

__version__ = "0.1.0"

from .bounds import best_lower, best_upper, bracket
from .codes import Code, average_distance, distance_distribution, parse_code
from .krawtchouk import KrawPoly, kraw_value
from .result import BoundResult, Direction
from .search import beta

__all__ = [
    "BoundResult",
    "Code",
    "Direction",
    "KrawPoly",
    "average_distance",
    "best_lower",
    "best_upper",
    "beta",
    "bracket",
    "distance_distribution",
    "kraw_value",
    "parse_code",
]
