"""Ordinary lines: a connecting line through exactly two points of a planar set.

Both search routines look along a ray ``p0 + lam * v`` that leaves one point
``p0`` of the set and return the connecting line (not through ``p0``) hit
first.  That line, or a line joining ``p0`` to one of its points, is
ordinary.

The fast routine uses point/line duality about ``p0``: the first line hit
is the arrangement vertex maximising a linear functional, and such a vertex
is always formed by two lines of cyclically adjacent slope, each extreme
among the lines parallel to it (Atallah).  In primal terms: sort the other
points by the direction of ``a - p0`` modulo pi, and only join the
nearest/farthest members of adjacent direction classes, including the pair
(last class, first class).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import groupby
from typing import NamedTuple, Sequence

from .errors import CollinearInputError, InvariantViolation
from .linalg import primitive_integers
from .planar import (
    Line2,
    Point2,
    are_collinear_all,
    as_point_set,
    incidence_count_line,
    line_through,
)


@dataclass(frozen=True)
class BaseRay:
    p0: Point2
    v: tuple


class RayHit(NamedTuple):
    line: Line2
    lam: Fraction
    witnesses: tuple


@dataclass(frozen=True)
class OrdinaryLineResult:
    line: Line2
    witnesses: tuple


def _cross(u, v):
    return u[0] * v[1] - u[1] * v[0]


def _crossing(a, b, v) -> Fraction | None:
    """Ray parameter where line ``ab`` meets ``lam * v`` (coordinates relative to p0)."""
    den = _cross((b[0] - a[0], b[1] - a[1]), v)
    if den == 0:
        return None
    return Fraction(_cross(b, a)) / den


def _coprime_pairs():
    total = 2
    while True:
        for i in range(1, total):
            j = total - i
            if Fraction(i, j).denominator == j:
                yield i, j
        total += 1


def _half_plane_key(u):
    # p0 is the lexicographic minimum, so every u has x > 0 or (x == 0, y > 0)
    return (0, Fraction(u[1]) / u[0]) if u[0] > 0 else (1, Fraction(0))


def choose_base_and_direction(s: Sequence) -> BaseRay:
    """Lexicographically smallest point and a direction pointing into the set.

    The direction is a positive integer combination of the directions to the
    angularly first and last points, so it lies strictly inside the wedge they
    span and the connecting line between those two points is crossed at a
    positive parameter.
    """
    s = as_point_set(s)
    if len(s) < 3 or are_collinear_all(s):
        raise CollinearInputError("points are collinear; no ordinary line exists")
    p0 = min(s)
    rel = [(a.x - p0.x, a.y - p0.y) for a in s if a != p0]
    lo = min(rel, key=_half_plane_key)
    hi = max(rel, key=_half_plane_key)
    for i, j in _coprime_pairs():
        v = primitive_integers((i * lo[0] + j * hi[0], i * lo[1] + j * hi[1]))
        keys = [_cross(a, v) for a in rel]
        # key 0: the ray's line meets another point; equal keys: some
        # connecting line is parallel to v
        if 0 not in keys and len(set(keys)) == len(keys):
            return BaseRay(p0, v)
    raise AssertionError("unreachable: the direction search is unbounded")


def is_valid_base_ray(s: Sequence, ray: BaseRay) -> bool:
    """Check every BaseRay invariant by direct enumeration (quadratic)."""
    if ray.p0 not in s or tuple(ray.v) == (0, 0):
        return False
    rel = [(a[0] - ray.p0[0], a[1] - ray.p0[1]) for a in s if a != ray.p0]
    keys = [_cross(a, ray.v) for a in rel]
    if 0 in keys or len(set(keys)) != len(keys):
        return False
    for i, a in enumerate(rel):
        for b in rel[i + 1 :]:
            if _cross(a, b) != 0:
                lam = _crossing(a, b, ray.v)
                if lam is not None and lam > 0:
                    return True
    return False


def min_lambda_line_bruteforce(s: Sequence, ray: BaseRay) -> RayHit:
    """Quadratic reference: scan every pair of points other than p0."""
    p0, v = ray.p0, ray.v
    others = [(k, (a[0] - p0[0], a[1] - p0[1])) for k, a in enumerate(s) if a != p0]
    best = None
    for n, (i, a) in enumerate(others):
        for j, b in others[n + 1 :]:
            if _cross(a, b) == 0:
                continue  # the line contains p0
            lam = _crossing(a, b, v)
            if lam is None or lam <= 0:
                continue
            if best is None or (lam, i, j) < best:
                best = (lam, i, j)
    if best is None:
        raise ValueError("no connecting line crosses the ray at a positive parameter")
    lam, i, j = best
    return RayHit(line_through(s[i], s[j]), lam, (s[i], s[j]))


def _direction_classes(p0, points):
    """Group points by the direction of ``a - p0`` modulo pi, sorted by angle.

    Each class keeps only its members with smallest and largest ``1/t``,
    where ``a - p0 = t * r`` for the class's primitive direction ``r``: the
    two extreme parallel lines of the dual arrangement.
    """
    tagged = []
    for k, a in enumerate(points):
        if a == p0:
            continue
        u = (a[0] - p0[0], a[1] - p0[1])
        r = primitive_integers(u)
        if r[1] < 0 or (r[1] == 0 and r[0] < 0):
            r = (-r[0], -r[1])
        angle = (0, Fraction(0)) if r[1] == 0 else (1, Fraction(-r[0], r[1]))
        t = Fraction(u[0] * r[0] + u[1] * r[1], r[0] * r[0] + r[1] * r[1])
        tagged.append((angle, 1 / t, k, u))
    tagged.sort(key=lambda item: (item[0], item[1], item[2]))
    classes = []
    for _, group in groupby(tagged, key=lambda item: item[0]):
        group = list(group)
        ends = [group[0]] if len(group) == 1 else [group[0], group[-1]]
        classes.append([(k, u) for _, _, k, u in ends])
    return classes


def min_lambda_line_fast(s: Sequence, ray: BaseRay) -> RayHit:
    """Same contract as :func:`min_lambda_line_bruteforce` in O(n log n)."""
    classes = _direction_classes(ray.p0, s)
    k = len(classes)
    if k < 2:
        raise ValueError("no connecting line crosses the ray at a positive parameter")
    best = None
    for c in range(k if k > 2 else 1):
        for i, a in classes[c]:
            for j, b in classes[(c + 1) % k]:
                lam = _crossing(a, b, ray.v)
                if lam is None or lam <= 0:
                    continue
                key = (lam, min(i, j), max(i, j))
                if best is None or key < best:
                    best = key
    if best is None:
        raise ValueError("no connecting line crosses the ray at a positive parameter")
    lam, i, j = best
    return RayHit(line_through(s[i], s[j]), lam, (s[i], s[j]))


ENGINES = {"fast": min_lambda_line_fast, "brute": min_lambda_line_bruteforce}


def find_ordinary_line(s: Sequence, engine: str = "fast") -> OrdinaryLineResult:
    """Return a line through exactly two points of ``s``.

    Raises :class:`CollinearInputError` when all points are collinear.
    """
    s = as_point_set(s)
    if len(s) < 2:
        raise ValueError("need at least two points")
    if len(s) == 2:
        return OrdinaryLineResult(line_through(*s), s)
    ray = choose_base_and_direction(s)
    hit = ENGINES[engine](s, ray)
    on_hit = incidence_count_line(s, hit.line)
    if on_hit.count == 2:
        return OrdinaryLineResult(hit.line, tuple(on_hit.points))
    for u in on_hit.points:
        line = line_through(ray.p0, u)
        on = incidence_count_line(s, line)
        if on.count == 2:
            return OrdinaryLineResult(line, tuple(on.points))
    raise InvariantViolation(
        f"neither {hit.line} nor any line joining {ray.p0} to its points is ordinary"
    )
