"""Ordinary conics through three prescribed points, via the space of conics.

A point ``(x, y)`` lifts to ``(x^2, y^2, xy, x, y)`` in 5-space, where every
conic becomes a hyperplane.  Conics through ``p, q, r`` are the hyperplanes
containing the plane ``B`` spanned by the three lifted points.  Projecting
each remaining lifted point from ``B`` onto an auxiliary 2-flat ``C`` turns
"hyperplane through B and exactly two more lifted points" into "line
through exactly two projected points", so the planar ordinary-line finder
does the search and the result is lifted back and recounted exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import count
from typing import NamedTuple, Sequence

from .errors import CoconicInputError, DegenerateReductionError, InvariantViolation
from .line import find_ordinary_line
from .linalg import add, nullspace, primitive_integers, rank, scale, solve, solve_consistent, sub
from .planar import (
    Conic,
    Point2,
    are_collinear_all,
    as_point_set,
    conic_through_five,
    incidence_count_conic,
    orientation,
    point2,
)


class LiftedPoint(NamedTuple):
    u: Fraction
    v: Fraction
    w: Fraction
    x: Fraction
    y: Fraction

    def on_surface(self) -> bool:
        """True when the point is the lift of some planar point."""
        return self.u == self.x * self.x and self.v == self.y * self.y and self.w == self.x * self.y


def lift(p) -> LiftedPoint:
    x, y = Fraction(p[0]), Fraction(p[1])
    return LiftedPoint(x * x, y * y, x * y, x, y)


@dataclass(frozen=True)
class Flat5:
    """Affine subspace of 5-space: a base point plus independent directions."""

    base: tuple
    directions: tuple = ()

    def __post_init__(self):
        if self.directions and rank(self.directions) != len(self.directions):
            raise ValueError("flat directions must be linearly independent")

    @property
    def dim(self) -> int:
        return len(self.directions)

    def point_at(self, coords) -> tuple:
        out = tuple(self.base)
        for c, d in zip(coords, self.directions):
            out = add(out, scale(c, d))
        return out

    def coordinates(self, q) -> tuple | None:
        """Affine coordinates of ``q`` in this flat's frame, None if ``q`` is off the flat."""
        offset = sub(q, self.base)
        if not self.directions:
            return () if not any(offset) else None
        cols = [list(row) for row in zip(*self.directions)]
        coords = solve_consistent(cols, offset)
        if coords is None or self.point_at(coords) != tuple(q):
            return None
        return coords

    def contains(self, q) -> bool:
        return self.coordinates(q) is not None


def affine_hull(points: Sequence) -> Flat5:
    if not points:
        raise ValueError("affine hull of nothing")
    base = tuple(Fraction(c) for c in points[0])
    directions: list[tuple] = []
    for q in points[1:]:
        d = sub(q, base)
        if rank(directions + [d]) > len(directions):
            directions.append(d)
    return Flat5(base, tuple(directions))


def flat_join(f: Flat5, q) -> Flat5:
    if f.contains(q):
        return f
    return Flat5(f.base, f.directions + (sub(q, f.base),))


def _intersection_params(f1: Flat5, f2: Flat5):
    if f1.dim + f2.dim != len(f1.base):
        return None
    cols = list(f1.directions) + [scale(-1, d) for d in f2.directions]
    x = solve([list(row) for row in zip(*cols)], sub(f2.base, f1.base))
    if x is None:
        return None
    return x[: f1.dim], x[f1.dim :]


def flat_intersect_point(f1: Flat5, f2: Flat5) -> tuple | None:
    """The unique common point of two flats with supplementary directions, else None."""
    params = _intersection_params(f1, f2)
    if params is None:
        return None
    return f1.point_at(params[0])


@dataclass(frozen=True)
class Hyperplane5:
    """``a u + b v + c w + d x + e y + f = 0``; shares its coefficients with a :class:`Conic`."""

    a: int
    b: int
    c: int
    d: int
    e: int
    f: int

    def __post_init__(self):
        if not any(self.coeffs[:5]):
            raise ValueError("hyperplane needs a nonzero normal")

    @classmethod
    def from_coeffs(cls, *coeffs) -> Hyperplane5:
        return cls(*primitive_integers(coeffs))

    @classmethod
    def from_conic(cls, conic: Conic) -> Hyperplane5:
        return cls(*conic.coeffs)

    def to_conic(self) -> Conic:
        return Conic(*self.coeffs)

    @property
    def coeffs(self) -> tuple[int, ...]:
        return (self.a, self.b, self.c, self.d, self.e, self.f)

    def value(self, q) -> Fraction:
        return sum((k * x for k, x in zip(self.coeffs[:5], q)), Fraction(self.f))

    def contains(self, q) -> bool:
        return self.value(q) == 0


def hyperplane_through(points: Sequence) -> Hyperplane5 | None:
    """The hyperplane through five affinely independent points of 5-space."""
    basis = nullspace([list(q) + [Fraction(1)] for q in points])
    if len(basis) != 1:
        return None
    return Hyperplane5.from_coeffs(*basis[0])


def _no_three_collinear(points) -> bool:
    n = len(points)
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                if orientation(points[i], points[j], points[k]) == 0:
                    return False
    return True


def _grid_candidates():
    yield point2(0, 0)
    for radius in count(1):
        ring = [
            (x, y)
            for x in range(-radius, radius + 1)
            for y in range(-radius, radius + 1)
            if max(abs(x), abs(y)) == radius
        ]
        for x, y in sorted(ring):
            yield point2(x, y)


def choose_aux_points(s: Sequence, p, q, r) -> tuple[Point2, Point2]:
    """Two small integer points outside ``s`` with no three of ``p, q, r, s', t'`` collinear."""
    members = set(s)
    s_aux = next(
        c for c in _grid_candidates() if c not in members and _no_three_collinear((p, q, r, c))
    )
    t_aux = next(
        c
        for c in _grid_candidates()
        if c not in members and c != s_aux and _no_three_collinear((p, q, r, s_aux, c))
    )
    return s_aux, t_aux


def select_theta0(s: Sequence, p, q, r, s_aux, t_aux) -> tuple[Fraction, Conic]:
    """Smallest integer shift of ``t_aux`` along x giving a conic that meets ``s`` only in p, q, r.

    Each other point of ``s`` lies on at most two members of the family, and
    the shifted point can create at most ten coincidences or collinearities,
    so the scan stops within ``2 n + 10`` steps.
    """
    rest = [x for x in s if x not in (p, q, r)]
    limit = 2 * len(rest) + 10
    for theta in range(limit + 1):
        t = point2(t_aux[0] + theta, t_aux[1])
        five = (p, q, r, s_aux, t)
        if len(set(five)) < 5 or not _no_three_collinear(five):
            continue
        conic = conic_through_five(*five)
        if conic is None:
            continue
        if not any(conic.contains(x) for x in rest):
            return Fraction(theta), conic
    raise InvariantViolation(f"no admissible shift among the first {limit + 1} values")


@dataclass(frozen=True)
class ReducedInstance:
    """The planar image of ``s`` minus ``p, q, r`` inside the 2-flat ``C``.

    ``projected`` holds ``(coords, source)`` pairs; coords are affine
    coordinates in the frame ``(origin; axis1, axis2)``.  Distinct sources may
    share coords.
    """

    origin: tuple
    axis1: tuple
    axis2: tuple
    projected: list
    base_flat: Flat5
    theta0: Fraction
    aux_points: tuple
    base_conic: Conic
    triple: tuple = field(default=())

    @property
    def frame(self) -> Flat5:
        return Flat5(self.origin, (self.axis1, self.axis2))

    def to_space(self, coords) -> tuple:
        return self.frame.point_at(coords)


def _check_triple(s, p, q, r):
    for x in (p, q, r):
        if x not in s:
            raise ValueError(f"{x} is not a point of the set")
    if orientation(p, q, r) == 0:
        raise ValueError("the prescribed triple is collinear")


def reduce_to_plane(s: Sequence, p, q, r) -> ReducedInstance:
    s = as_point_set(s)
    p, q, r = (x if isinstance(x, Point2) else point2(*x) for x in (p, q, r))
    _check_triple(s, p, q, r)
    s_aux, t_aux = choose_aux_points(s, p, q, r)
    theta0, base_conic = select_theta0(s, p, q, r, s_aux, t_aux)
    t_shifted = point2(t_aux[0] + theta0, t_aux[1])

    p_star = tuple(lift(p))
    base_flat = affine_hull([p_star, tuple(lift(q)), tuple(lift(r))])
    axis1 = sub(lift(s_aux), p_star)
    axis2 = sub(lift(t_shifted), p_star)
    normal = Hyperplane5.from_conic(base_conic).coeffs[:5]
    # p* lies on the hyperplane, so stepping along a coordinate axis with a
    # nonzero normal component leaves it
    k = next(i for i, c in enumerate(normal) if c != 0)
    origin = tuple(c + (1 if i == k else 0) for i, c in enumerate(p_star))
    frame = Flat5(origin, (axis1, axis2))

    projected = []
    for rho in s:
        if rho in (p, q, r):
            continue
        params = _intersection_params(flat_join(base_flat, tuple(lift(rho))), frame)
        if params is None:
            raise InvariantViolation(f"B + lift({rho}) and C are not supplementary")
        projected.append((params[1], rho))
    return ReducedInstance(
        origin, axis1, axis2, projected, base_flat, theta0, (s_aux, t_shifted), base_conic, (p, q, r)
    )


@dataclass(frozen=True)
class OrdinaryConicResult:
    conic: Conic
    witnesses: tuple

    @property
    def degenerate(self) -> bool:
        return self.conic.is_degenerate


def _conic_for_frame_line(red: ReducedInstance, c1, c2) -> Conic | None:
    """Conic of the hyperplane spanned by ``B`` and the line through frame points c1, c2."""
    p, q, r = red.triple
    h = hyperplane_through(
        [tuple(lift(p)), tuple(lift(q)), tuple(lift(r)), red.to_space(c1), red.to_space(c2)]
    )
    return None if h is None else h.to_conic()


def _line_avoiding(center, others):
    """A second frame point making a line through ``center`` that misses all of ``others``."""
    for a in count(1):
        for b in range(-a, a + 1):
            for d in ((a, b), (b, -a)):
                c2 = (center[0] + d[0], center[1] + d[1])
                if all(orientation(center, c2, o) != 0 for o in others):
                    return c2


def _frame_candidates(red: ReducedInstance, engine: str):
    """Pairs of frame points spanning candidate lines, most promising first."""
    sources: dict[tuple, list] = {}
    for coords, rho in red.projected:
        sources.setdefault(tuple(coords), []).append(rho)
    locations = list(sources)
    if len(locations) >= 3 and not are_collinear_all(locations):
        hit = find_ordinary_line(locations, engine)
        yield tuple(hit.witnesses)
    doubles = [loc for loc, src in sources.items() if len(src) == 2]
    for loc in doubles:
        yield loc, _line_avoiding(loc, [o for o in locations if o != loc])
    for i, a in enumerate(locations):
        for b in locations[i + 1 :]:
            yield a, b


def find_ordinary_conic(s: Sequence, p, q, r, engine: str = "fast") -> OrdinaryConicResult:
    """A conic through ``p, q, r`` and exactly two more points of ``s``.

    Raises :class:`CoconicInputError` when all of ``s`` lies on one conic, and
    :class:`DegenerateReductionError` when coincident projections leave no
    ordinary conic through this triple.
    """
    s = as_point_set(s)
    p, q, r = (x if isinstance(x, Point2) else point2(*x) for x in (p, q, r))
    _check_triple(s, p, q, r)
    if len(s) <= 5:
        raise CoconicInputError("five or fewer points always lie on a conic")
    red = reduce_to_plane(s, p, q, r)
    if are_collinear_all([coords for coords, _ in red.projected]):
        raise CoconicInputError("the projected points are collinear, so the set is co-conic")

    has_duplicates = len({tuple(c) for c, _ in red.projected}) < len(red.projected)
    tried = set()
    for c1, c2 in _frame_candidates(red, engine):
        conic = _conic_for_frame_line(red, c1, c2)
        if conic is None or conic in tried:
            continue
        tried.add(conic)
        on = incidence_count_conic(s, conic)
        if on.count == 5:
            return OrdinaryConicResult(conic, tuple(on.points))
    if has_duplicates:
        raise DegenerateReductionError(
            f"no conic through {p}, {q}, {r} meets the set in exactly five points"
        )
    raise InvariantViolation("no ordinary conic found although the projection is injective")
