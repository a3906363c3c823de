"""Brute-force censuses of every ordinary structure.

Slow on purpose: each candidate is rebuilt from its defining points and
recounted against the whole set, with no combinatorial shortcuts.  Tests use
these as ground truth for the finders and for the known lower bounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .circle import GeneralizedCircle, incidence_count_circle
from .planar import (
    as_point_set,
    conic_through_five,
    incidence_count_conic,
    line_through,
    point2,
)
from .spatial import as_point3_set, collinear3, ordinary_apex, plane_through


@dataclass(frozen=True)
class CensusItem:
    structure: object
    incident: tuple


@dataclass(frozen=True)
class StructureCensus:
    kind: str
    items: tuple

    @property
    def count(self) -> int:
        return len(self.items)

    def structures(self) -> list:
        return [item.structure for item in self.items]

    def __contains__(self, structure) -> bool:
        return any(item.structure == structure for item in self.items)


def _census(kind, candidates, verify):
    """Deduplicate candidates and keep those ``verify`` accepts (it returns the incident points)."""
    seen = set()
    items = []
    for structure in candidates:
        if structure is None or structure in seen:
            continue
        seen.add(structure)
        incident = verify(structure)
        if incident is not None:
            items.append(CensusItem(structure, tuple(incident)))
    return StructureCensus(kind, tuple(items))


def _exactly(wanted, recount):
    def verify(structure):
        on = recount(structure)
        return on.points if on.count == wanted else None

    return verify


def enumerate_ordinary_lines(s: Sequence) -> StructureCensus:
    """Every line produced by exactly one pair; ``k`` collinear points produce ``k(k-1)/2``."""
    s = as_point_set(s)
    pairs: dict = {}
    for a, b in combinations(s, 2):
        pairs.setdefault(line_through(a, b), []).append((a, b))
    return StructureCensus(
        "line", tuple(CensusItem(line, found[0]) for line, found in pairs.items() if len(found) == 1)
    )


def enumerate_ordinary_conics_through(s: Sequence, p, q, r) -> StructureCensus:
    s = as_point_set(s)
    p, q, r = (point2(*x) for x in (p, q, r))
    rest = [x for x in s if x not in (p, q, r)]
    return _census(
        "conic",
        (conic_through_five(p, q, r, a, b) for a, b in combinations(rest, 2)),
        _exactly(5, lambda conic: incidence_count_conic(s, conic)),
    )


def enumerate_ordinary_circles_through(s: Sequence, p) -> StructureCensus:
    s = as_point_set(s)
    p = point2(*p)
    rest = [x for x in s if x != p]
    return _census(
        "circle",
        (GeneralizedCircle.through(p, a, b) for a, b in combinations(rest, 2)),
        _exactly(3, lambda c: incidence_count_circle(s, c)),
    )


def enumerate_ordinary_planes(s: Sequence) -> StructureCensus:
    """Every spanned connecting plane whose points, minus one, are collinear."""
    s = as_point3_set(s)
    return _census(
        "plane",
        (plane_through(a, b, c) for a, b, c in combinations(s, 3) if not collinear3(a, b, c)),
        lambda plane: [x for x in s if plane.contains(x)] if ordinary_apex(s, plane) else None,
    )


def line_bound(n: int) -> int:
    """Kelly-Moser: at least 3n/7 ordinary lines."""
    return -(-3 * n // 7)


def conic_bound(n: int) -> int:
    return -(-3 * (n - 3) // 7)


def circle_bound(n: int) -> int:
    return -(-3 * (n - 1) // 7)
