"""Exact finite constructions of metrics: finite topologies, Urysohn
separating functions, iterated-cover addressing into rational intervals,
a Cantor ternary reference and a small exact counting toolkit."""

from .errors import InvariantError, ValidationError
from .intervals import IntervalDistance, RationalInterval, interval_distance

__version__ = "0.1.0"

__all__ = [
    "IntervalDistance",
    "InvariantError",
    "RationalInterval",
    "ValidationError",
    "interval_distance",
]
