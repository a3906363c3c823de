"""Ordinary circles through a chosen point, found by inversion about that point."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import ConcyclicInputError, InvariantViolation
from .line import find_ordinary_line
from .linalg import nullspace
from .planar import (
    Conic,
    Line2,
    Point2,
    are_collinear_all,
    as_point_set,
    incidence_count_conic,
    incidence_count_line,
    line_through,
    orientation,
    point2,
)


def invert(center, q) -> Point2:
    """Image of ``q`` under inversion in the unit circle about ``center``."""
    dx, dy = Fraction(q[0]) - center[0], Fraction(q[1]) - center[1]
    r2 = dx * dx + dy * dy
    if r2 == 0:
        raise ValueError("cannot invert the center of inversion")
    return point2(center[0] + dx / r2, center[1] + dy / r2)


def circle_through(p, q, r) -> Conic:
    """``A(x^2 + y^2) + D x + E y + F = 0`` through three non-collinear points."""
    if orientation(p, q, r) == 0:
        raise ValueError("circle_through needs non-collinear points")
    rows = [[x[0] * x[0] + x[1] * x[1], x[0], x[1], 1] for x in (p, q, r)]
    a, d, e, f = nullspace(rows)[0]
    return Conic.from_coeffs(a, a, 0, d, e, f)


@dataclass(frozen=True)
class GeneralizedCircle:
    """A circle, or the line it degenerates to when the three points are collinear."""

    kind: str
    curve: Conic | Line2

    def __post_init__(self):
        if self.kind == "circle":
            c = self.curve
            if not (isinstance(c, Conic) and c.a == c.b != 0 and c.c == 0):
                raise ValueError("not a circle equation")
            # r^2 = (d^2 + e^2 - 4 a f) / (4 a^2)
            if c.d * c.d + c.e * c.e - 4 * c.a * c.f <= 0:
                raise ValueError("circle with nonpositive squared radius")
        elif self.kind == "line":
            if not isinstance(self.curve, Line2):
                raise ValueError("line kind needs a Line2")
        else:
            raise ValueError(f"unknown kind {self.kind!r}")

    @property
    def degenerate(self) -> bool:
        return self.kind == "line"

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.curve.coeffs

    def contains(self, x) -> bool:
        return self.curve.contains(x)

    @classmethod
    def through(cls, p, q, r) -> GeneralizedCircle:
        if orientation(p, q, r) == 0:
            return cls("line", line_through(p, q))
        return cls("circle", circle_through(p, q, r))


def incidence_count_circle(s: Sequence, c: GeneralizedCircle):
    if c.kind == "line":
        return incidence_count_line(s, c.curve)
    return incidence_count_conic(s, c.curve)


@dataclass(frozen=True)
class OrdinaryCircleResult:
    circle: GeneralizedCircle
    witnesses: tuple


def find_ordinary_circle(s: Sequence, p, engine: str = "fast") -> OrdinaryCircleResult:
    """A circle (or line) through ``p`` and exactly two other points of ``s``.

    Raises :class:`ConcyclicInputError` when every point lies on one circle or
    line through ``p``.
    """
    s = as_point_set(s)
    p = p if isinstance(p, Point2) else point2(*p)
    if p not in s:
        raise ValueError(f"{p} is not a point of the set")
    if len(s) < 3:
        raise ValueError("need at least three points")
    preimage = {invert(p, q): q for q in s if q != p}
    images = list(preimage)
    if len(images) >= 3 and are_collinear_all(images):
        raise ConcyclicInputError(f"all points lie on one circle or line through {p}")
    hit = find_ordinary_line(images, engine)
    a, b = (preimage[w] for w in hit.witnesses)
    circle = GeneralizedCircle.through(p, a, b)
    on = incidence_count_circle(s, circle)
    if on.count != 3:
        raise InvariantViolation(f"{circle} meets the set in {on.count} points, expected 3")
    return OrdinaryCircleResult(circle, tuple(on.points))
