"""Exact finders for ordinary lines, conics, circles and planes of finite point sets."""

from .circle import GeneralizedCircle, find_ordinary_circle, invert
from .conic import find_ordinary_conic, lift, reduce_to_plane
from .errors import (
    CoconicInputError,
    CollinearInputError,
    ConcyclicInputError,
    CoplanarInputError,
    DegenerateInputError,
    DegenerateReductionError,
    InvariantViolation,
)
from .line import find_ordinary_line
from .planar import Conic, Line2, Point2, point2
from .spatial import Plane3, Point3, find_ordinary_plane, point3

__all__ = [
    "CoconicInputError",
    "CollinearInputError",
    "ConcyclicInputError",
    "Conic",
    "CoplanarInputError",
    "DegenerateInputError",
    "DegenerateReductionError",
    "GeneralizedCircle",
    "InvariantViolation",
    "Line2",
    "Plane3",
    "Point2",
    "Point3",
    "find_ordinary_circle",
    "find_ordinary_conic",
    "find_ordinary_line",
    "find_ordinary_plane",
    "invert",
    "lift",
    "point2",
    "point3",
    "reduce_to_plane",
]
