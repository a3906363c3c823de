"""Points, lines and conics in the plane with exact incidence predicates."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from .linalg import det, nullspace, primitive_integers, rank, scalar


class Point2(NamedTuple):
    x: Fraction
    y: Fraction

    def __str__(self):
        return f"({self.x}, {self.y})"


def point2(x, y) -> Point2:
    return Point2(scalar(x), scalar(y))


def as_point_set(points: Iterable) -> tuple[Point2, ...]:
    """Coerce to a tuple of distinct :class:`Point2`, keeping input order."""
    out = tuple(p if isinstance(p, Point2) else point2(*p) for p in points)
    if len(set(out)) != len(out):
        seen = set()
        dup = next(p for p in out if p in seen or seen.add(p))
        raise ValueError(f"duplicate point {dup}")
    return out


@dataclass(frozen=True)
class Line2:
    """The line ``a x + b y + c = 0`` with coprime integer coefficients."""

    a: int
    b: int
    c: int

    def __post_init__(self):
        if self.a == 0 and self.b == 0:
            raise ValueError("a line needs (a, b) != (0, 0)")

    @classmethod
    def from_coeffs(cls, a, b, c) -> Line2:
        return cls(*primitive_integers((a, b, c)))

    @property
    def coeffs(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)

    def value(self, p) -> Fraction:
        return self.a * p[0] + self.b * p[1] + self.c

    def contains(self, p) -> bool:
        return self.value(p) == 0


@dataclass(frozen=True)
class Conic:
    """The conic ``a x^2 + b y^2 + c xy + d x + e y + f = 0``, normalized like :class:`Line2`.

    Degenerate conics (line pairs, double lines) are legitimate values; see
    :attr:`is_degenerate`.
    """

    a: int
    b: int
    c: int
    d: int
    e: int
    f: int

    def __post_init__(self):
        if not any(self.coeffs):
            raise ValueError("all conic coefficients are zero")

    @classmethod
    def from_coeffs(cls, *coeffs) -> Conic:
        return cls(*primitive_integers(coeffs))

    @property
    def coeffs(self) -> tuple[int, ...]:
        return (self.a, self.b, self.c, self.d, self.e, self.f)

    def value(self, p) -> Fraction:
        x, y = p
        return self.a * x * x + self.b * y * y + self.c * x * y + self.d * x + self.e * y + self.f

    def contains(self, p) -> bool:
        return self.value(p) == 0

    @property
    def is_degenerate(self) -> bool:
        """True when the symmetric 3x3 form is singular (a line pair or worse)."""
        a, b, c, d, e, f = (Fraction(k) for k in self.coeffs)
        return det([[a, c / 2, d / 2], [c / 2, b, e / 2], [d / 2, e / 2, f]]) == 0


class Incidence(NamedTuple):
    count: int
    points: list


def orientation(p, q, r) -> int:
    """Sign of twice the signed area of ``pqr``: +1 counterclockwise, 0 collinear."""
    d = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
    return (d > 0) - (d < 0)


def line_through(p, q) -> Line2:
    if p == q:
        raise ValueError(f"line_through needs distinct points, got {p} twice")
    a = q[1] - p[1]
    b = p[0] - q[0]
    return Line2.from_coeffs(a, b, -(a * p[0] + b * p[1]))


def incidence_count_line(s: Sequence, line: Line2) -> Incidence:
    on = [p for p in s if line.contains(p)]
    return Incidence(len(on), on)


def incidence_count_conic(s: Sequence, conic: Conic) -> Incidence:
    on = [p for p in s if conic.contains(p)]
    return Incidence(len(on), on)


def point_on_conic(conic: Conic, p) -> bool:
    return conic.contains(p)


def lifted_row(p) -> tuple:
    """Homogeneous lifted coordinates ``(x^2, y^2, xy, x, y, 1)`` of a point."""
    x, y = p
    return (x * x, y * y, x * y, x, y, Fraction(1))


def conic_through_five(p1, p2, p3, p4, p5) -> Conic | None:
    """The conic through five distinct points, or None when they only fix a pencil."""
    pts = (p1, p2, p3, p4, p5)
    if len(set(pts)) != 5:
        raise ValueError("conic_through_five needs five distinct points")
    basis = nullspace([lifted_row(p) for p in pts])
    if len(basis) != 1:
        return None
    return Conic.from_coeffs(*basis[0])


def are_collinear_all(s: Sequence) -> bool:
    if len(s) <= 2:
        return True
    p = s[0]
    q = next((x for x in s[1:] if x != p), None)
    if q is None:
        return True
    return all(orientation(p, q, r) == 0 for r in s)


def are_coconic_all(s: Sequence) -> bool:
    if len(s) <= 5:
        return True
    return rank([lifted_row(p) for p in s]) <= 5
