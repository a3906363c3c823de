"""Ordinary planes of a non-coplanar point set in 3-space.

A connecting plane is spanned by three non-collinear points of the set; it
is ordinary when all of its points but one (the apex) are collinear.  The
finder walks a ray out of one point ``p0``, takes the first connecting plane
it meets, and either returns it or derives an ordinary plane through ``p0``
from four of its points.

Search routines scale coordinates to integers by a common denominator;
every predicate here is invariant under that scaling.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, count, groupby, islice
from math import gcd
from typing import NamedTuple, Sequence

from .errors import CoplanarInputError, InvariantViolation
from .linalg import common_denominator, cross3, dot, primitive_integers, scalar, sub


class Point3(NamedTuple):
    x: Fraction
    y: Fraction
    z: Fraction

    def __str__(self):
        return f"({self.x}, {self.y}, {self.z})"


def point3(x, y, z) -> Point3:
    return Point3(scalar(x), scalar(y), scalar(z))


def as_point3_set(points) -> tuple[Point3, ...]:
    out = tuple(p if isinstance(p, Point3) else point3(*p) for p in points)
    if len(set(out)) != len(out):
        raise ValueError("duplicate points in 3D input")
    return out


@dataclass(frozen=True)
class Plane3:
    """``a x + b y + c z + d = 0`` with coprime integers, first nonzero positive."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a == self.b == self.c == 0:
            raise ValueError("plane needs a nonzero normal")

    @classmethod
    def from_coeffs(cls, a, b, c, d) -> Plane3:
        return cls(*primitive_integers((a, b, c, d)))

    @property
    def coeffs(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    @property
    def normal(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)

    def value(self, p) -> Fraction:
        return self.a * p[0] + self.b * p[1] + self.c * p[2] + self.d

    def contains(self, p) -> bool:
        return self.value(p) == 0


@dataclass(frozen=True)
class Line3:
    point: Point3
    direction: tuple

    @classmethod
    def through(cls, p, q) -> Line3:
        return cls(p, primitive_integers(sub(q, p)))

    def contains(self, q) -> bool:
        return cross3(sub(q, self.point), self.direction) == (0, 0, 0)


@dataclass(frozen=True)
class Ray3:
    p0: Point3
    w: tuple


class PlaneHit(NamedTuple):
    plane: Plane3
    lam: Fraction
    witnesses: tuple


@dataclass(frozen=True)
class OrdinaryPlaneResult:
    plane: Plane3
    incident: tuple
    apex: Point3
    axis: Line3
    # which step produced the plane: "first-plane", "construction",
    # "fallback-pencil" or "fallback-exhaustive"
    method: str = "first-plane"


def collinear3(p, q, r) -> bool:
    return cross3(sub(q, p), sub(r, p)) == (0, 0, 0)


def plane_through(p, q, r) -> Plane3:
    n = cross3(sub(q, p), sub(r, p))
    if n == (0, 0, 0):
        raise ValueError(f"{p}, {q}, {r} are collinear and span no plane")
    return Plane3.from_coeffs(*n, -dot(n, p))


def _all_collinear(points) -> bool:
    if len(points) <= 2:
        return True
    p, q = points[0], points[1]
    return all(collinear3(p, q, r) for r in points[2:])


def are_coplanar_all(s: Sequence) -> bool:
    s = list(s)
    for i in range(2, len(s)):
        if not collinear3(s[0], s[1], s[i]):
            plane = plane_through(s[0], s[1], s[i])
            return all(plane.contains(x) for x in s)
    return True


def ordinary_apex(s: Sequence, h: Plane3) -> tuple[Point3, Line3] | None:
    """``(apex, axis)`` when ``h`` is an ordinary plane of ``s``, else None."""
    on = [x for x in s if h.contains(x)]
    if len(on) < 3 or _all_collinear(on):
        return None
    for k, z in enumerate(on):
        rest = on[:k] + on[k + 1 :]
        if _all_collinear(rest):
            return z, Line3.through(rest[0], rest[1])
    return None


def is_ordinary_plane(s: Sequence, h: Plane3) -> bool:
    return ordinary_apex(s, h) is not None


def _scaled(s, ray):
    """Integer coordinates of ``s - p0`` and of ``w`` with ray parameters preserved up to ``factor``."""
    d = common_denominator(c for p in s for c in p)
    dw = common_denominator(ray.w)
    rel = [
        (k, tuple(int((c - c0) * d) for c, c0 in zip(p, ray.p0)))
        for k, p in enumerate(s)
        if p != ray.p0
    ]
    w = tuple(int(c * dw) for c in ray.w)
    # true lambda = scaled lambda * dw / d
    return rel, w, Fraction(dw, d)


def _ray_crossing(a, b, c, w):
    """``(num, den)`` with den > 0 for the plane abc along ``lam * w``; None if unusable."""
    n = cross3(sub(b, a), sub(c, a))
    if n == (0, 0, 0):
        return None
    num = dot(n, a)
    den = dot(n, w)
    if num == 0 or den == 0:
        return None
    return (num, den) if den > 0 else (-num, -den)


def _sign_normalized(v):
    g = 0
    for c in v:
        g = gcd(g, c)
    v = tuple(c // g for c in v)
    return v if next(c for c in v if c != 0) > 0 else tuple(-c for c in v)


def _parallel_to_some_plane(rel, w) -> bool:
    """True when ``w`` is parallel to a plane spanned by three points of ``rel``."""
    for i, a in enumerate(rel):
        groups: dict[tuple, set] = {}
        for b in rel[i + 1 :]:
            ab = sub(b, a)
            key = cross3(ab, w)
            if key == (0, 0, 0):
                # ab is parallel to w; any point off line ab then spans a bad plane
                return True
            groups.setdefault(_sign_normalized(key), set()).add(_sign_normalized(ab))
        if any(len(dirs) > 1 for dirs in groups.values()):
            return True
    return False


# small combinations keep coordinates short; past this many the guaranteed choice is used
SMALL_DIRECTION_TRIES = 40


def _positive_triples():
    for total in count(3):
        for i in range(1, total - 1):
            for j in range(1, total - i):
                yield i, j, total - i - j


def choose_base_ray(s: Sequence) -> Ray3:
    """Lexicographically smallest point and an integer direction into the set.

    The direction is a positive combination of the directions to three
    points that are not coplanar with ``p0``, so the plane of those three is
    crossed at a positive parameter.
    """
    s = as_point3_set(s)
    if len(s) < 4 or are_coplanar_all(s):
        raise CoplanarInputError("points are coplanar; no connecting plane separates them")
    p0 = min(s)
    rel, _, _ = _scaled(s, Ray3(p0, (1, 0, 0)))
    vecs = [v for _, v in rel]
    a = vecs[0]
    b = next(v for v in vecs if cross3(a, v) != (0, 0, 0))
    c = next(v for v in vecs if dot(cross3(a, b), v) != 0)
    for i, j, k in islice(_positive_triples(), SMALL_DIRECTION_TRIES):
        w = primitive_integers(tuple(i * x + j * y + k * z for x, y, z in zip(a, b, c)))
        if any(cross3(v, w) == (0, 0, 0) for v in vecs):
            continue
        if _parallel_to_some_plane(vecs, w):
            continue
        return Ray3(p0, w)
    return Ray3(p0, _generic_direction(vecs, a, b, c))


def _generic_direction(vecs, a, b, c) -> tuple[int, ...]:
    """``a + t b + t^2 c`` for a ``t`` past every root of the bad-direction polynomials.

    ``R`` bounds the coordinates of ``vecs``, so a spanned normal ``n`` has
    entries at most ``8 R^2``.  ``n . w(t)`` is a nonzero quadratic in ``t``
    since ``a, b, c`` are independent, with coefficients at most ``24 R^3``,
    so it has no integer root beyond that.  The same bound covers ``w`` parallel to some
    ``v`` in ``vecs``, whose cross products have entries at most ``2 R^2``.
    """
    r = max(abs(x) for v in vecs for x in v)
    t = 24 * r**3 + 2
    return primitive_integers(tuple(x + t * y + t * t * z for x, y, z in zip(a, b, c)))


def is_valid_ray(s: Sequence, ray: Ray3) -> bool:
    """Exhaustive check of the Ray3 invariants (cubic; for tests)."""
    if ray.p0 not in s:
        return False
    rel, w, _ = _scaled(s, ray)
    vecs = [v for _, v in rel]
    if any(cross3(v, w) == (0, 0, 0) for v in vecs):
        return False
    positive = False
    for a, b, c in combinations(vecs, 3):
        n = cross3(sub(b, a), sub(c, a))
        if n == (0, 0, 0):
            continue
        if dot(n, w) == 0:
            return False
        hit = _ray_crossing(a, b, c, w)
        positive = positive or (hit is not None and hit[0] > 0)
    return positive


def _hit(s, best, factor) -> PlaneHit:
    num, den, i, j, k = best
    return PlaneHit(plane_through(s[i], s[j], s[k]), Fraction(num, den) * factor, (s[i], s[j], s[k]))


def first_plane_bruteforce(s: Sequence, ray: Ray3) -> PlaneHit:
    """Cubic reference: the connecting plane of ``s - p0`` met first along the ray."""
    rel, w, factor = _scaled(s, ray)
    best = None
    for (i, a), (j, b), (k, c) in combinations(rel, 3):
        hit = _ray_crossing(a, b, c, w)
        if hit is None or hit[0] <= 0:
            continue
        num, den = hit
        if best is None or num * best[1] < best[0] * den:
            best = (num, den, i, j, k)
    if best is None:
        raise ValueError("no connecting plane crosses the ray at a positive parameter")
    return _hit(s, best, factor)


def first_plane_fast(s: Sequence, ray: Ray3) -> PlaneHit:
    """Same contract as :func:`first_plane_bruteforce` with O(n^2) candidate triples.

    Dualize about ``p0``: point ``a`` becomes the plane ``{n : n.a = 1}`` and
    the first plane hit becomes the arrangement vertex maximizing ``n.w``.
    That vertex lies on some dual plane ``P_i``; inside ``P_i`` the other dual
    planes trace a line arrangement, and by the planar slope-adjacency rule
    the vertex is formed by two lines of cyclically adjacent direction, each
    extreme among its parallels.
    """
    rel, w, factor = _scaled(s, ray)
    best = None
    for i, ai in rel:
        axis = (1, 0, 0) if cross3(ai, (1, 0, 0)) != (0, 0, 0) else (0, 1, 0)
        e1 = cross3(ai, axis)
        e2 = cross3(ai, e1)
        aa = dot(ai, ai)
        traced = []
        for l, al in rel:
            m = (dot(e1, al), dot(e2, al))
            if m == (0, 0):
                continue  # al is parallel to ai: the dual planes never meet
            g = gcd(*m)
            m0 = (m[0] // g, m[1] // g)
            if m0[1] < 0 or (m0[1] == 0 and m0[0] < 0):
                m0, g = (-m0[0], -m0[1]), -g
            angle = (0, Fraction(0)) if m0[1] == 0 else (1, Fraction(-m0[0], m0[1]))
            offset = Fraction(aa - dot(ai, al), aa * g)
            traced.append((angle, offset, l, al))
        traced.sort(key=lambda t: (t[0], t[1], t[2]))
        classes = []
        for _, group in groupby(traced, key=lambda t: t[0]):
            group = list(group)
            ends = [group[0]] if len(group) == 1 else [group[0], group[-1]]
            classes.append([(l, al) for _, _, l, al in ends])
        n_cls = len(classes)
        if n_cls < 2:
            continue
        for c in range(n_cls if n_cls > 2 else 1):
            for j, aj in classes[c]:
                for k, ak in classes[(c + 1) % n_cls]:
                    hit = _ray_crossing(ai, aj, ak, w)
                    if hit is None or hit[0] <= 0:
                        continue
                    num, den = hit
                    i1, j1, k1 = sorted((i, j, k))
                    cand = (num, den, i1, j1, k1)
                    if best is None or (
                        num * best[1] < best[0] * den
                        or (num * best[1] == best[0] * den and cand[2:] < best[2:])
                    ):
                        best = cand
    if best is None:
        raise ValueError("no connecting plane crosses the ray at a positive parameter")
    return _hit(s, best, factor)


ENGINES = {"fast": first_plane_fast, "brute": first_plane_bruteforce}


def _result(s, plane, method) -> OrdinaryPlaneResult | None:
    found = ordinary_apex(s, plane)
    if found is None:
        return None
    apex, axis = found
    return OrdinaryPlaneResult(plane, tuple(x for x in s if plane.contains(x)), apex, axis, method)


def _four_points(on_plane, g):
    """p1..p4 on the plane with lines p1p2, p1p3, p1p4 distinct and avoiding ``g``."""
    for p1 in on_plane:
        if p1 == g:
            continue
        picked: dict[tuple, Point3] = {}
        for x in on_plane:
            if x == p1:
                continue
            d = primitive_integers(sub(x, p1))
            if d in picked or cross3(sub(x, p1), sub(g, p1)) == (0, 0, 0):
                continue
            picked[d] = x
            if len(picked) == 3:
                return (p1, *picked.values())
    return None


def _small_vectors():
    for radius in count(1):
        for v in sorted(
            (x, y, z)
            for x in range(-radius, radius + 1)
            for y in range(-radius, radius + 1)
            for z in range(-radius, radius + 1)
            if max(abs(x), abs(y), abs(z)) == radius
        ):
            yield v


def _construct(s, ray, plane, lam):
    """The constructive step applied when the first plane is not ordinary."""
    p0, w = ray.p0, ray.w
    g = tuple(c + lam * d for c, d in zip(p0, w))
    on_plane = [x for x in s if plane.contains(x)]
    four = _four_points(on_plane, g)
    if four is None:
        return None
    p1, *others = four
    for e in _small_vectors():
        gamma_normal = cross3(w, e)
        if gamma_normal == (0, 0, 0) or dot(gamma_normal, sub(p1, p0)) == 0:
            continue
        direction = cross3(plane.normal, gamma_normal)
        if direction == (0, 0, 0):
            continue
        if any(cross3(direction, sub(pj, p1)) == (0, 0, 0) for pj in others):
            continue
        break
    # l_j = g + t_j * direction is where line p1 pj crosses the line (plane and Gamma)
    ts = []
    for pj in others:
        ej = sub(pj, p1)
        lhs = cross3(direction, ej)
        rhs = cross3(sub(p1, g), ej)
        axis = next(i for i in range(3) if lhs[i] != 0)
        ts.append(Fraction(rhs[axis]) / lhs[axis])
    if 0 in ts or len(set(ts)) != 3:
        raise InvariantViolation("crossing points on the auxiliary line are not distinct")
    far = next(
        (
            pj
            for pj, t in zip(others, ts)
            if any((u > 0) == (t > 0) and abs(u) < abs(t) for u in ts)
        ),
        None,
    )
    if far is None:
        raise InvariantViolation("no crossing point is separated from g by another")
    return plane_through(p0, p1, far)


def find_ordinary_plane(s: Sequence, engine: str = "fast") -> OrdinaryPlaneResult:
    """An ordinary plane of a non-coplanar set; :class:`CoplanarInputError` otherwise."""
    s = as_point3_set(s)
    ray = choose_base_ray(s)
    hit = ENGINES[engine](s, ray)
    found = _result(s, hit.plane, "first-plane")
    if found is not None:
        return found
    candidate = _construct(s, ray, hit.plane, hit.lam)
    if candidate is not None:
        found = _result(s, candidate, "construction")
        if found is not None:
            return found
    on_plane = [x for x in s if hit.plane.contains(x)]
    for a, b in combinations(on_plane, 2):
        found = _result(s, plane_through(ray.p0, a, b), "fallback-pencil")
        if found is not None:
            return found
    for a, b, c in combinations(s, 3):
        if not collinear3(a, b, c):
            found = _result(s, plane_through(a, b, c), "fallback-exhaustive")
            if found is not None:
                return found
    raise InvariantViolation("no ordinary plane found in a non-coplanar set")
