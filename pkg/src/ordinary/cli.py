"""Command-line front end: ``ordinary {line,conic,circle,plane,count} --input FILE``.

Exit codes: 0 success, 2 degenerate input, 3 parse/argument/I-O error,
4 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .circle import find_ordinary_circle, incidence_count_circle
from .conic import find_ordinary_conic
from .errors import DegenerateInputError, InvariantViolation
from .line import find_ordinary_line
from .oracle import (
    circle_bound,
    conic_bound,
    enumerate_ordinary_circles_through,
    enumerate_ordinary_conics_through,
    enumerate_ordinary_lines,
    enumerate_ordinary_planes,
    line_bound,
)
from .planar import incidence_count_conic, incidence_count_line, point2
from .spatial import find_ordinary_plane, is_ordinary_plane, point3
from .svg import emit_svg

EXIT_OK, EXIT_DEGENERATE, EXIT_USAGE, EXIT_INVARIANT = 0, 2, 3, 4


class PointFileError(ValueError):
    def __init__(self, message, lineno=None):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}" if lineno else message)


class UsageError(Exception):
    pass


@dataclass
class PointFile:
    dimension: int
    points: tuple
    source: str = field(repr=False, default="")


def _number(token, lineno):
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise PointFileError(f"not an exact number: {token!r}", lineno) from None


def parse_pointset(text: str) -> PointFile:
    """One point per line, whitespace-separated exact coordinates, '#' comments."""
    points = []
    rows: dict[tuple, int] = {}
    dimension = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split("#", 1)[0].split()
        if not tokens:
            continue
        if len(tokens) not in (2, 3):
            raise PointFileError(f"expected 2 or 3 coordinates, got {len(tokens)}", lineno)
        if dimension is None:
            dimension = len(tokens)
        elif len(tokens) != dimension:
            raise PointFileError(f"mixed dimensions: {len(tokens)}D point in a {dimension}D file", lineno)
        coords = tuple(_number(t, lineno) for t in tokens)
        if coords in rows:
            raise PointFileError(f"duplicate of the point on line {rows[coords]}", lineno)
        rows[coords] = lineno
        points.append(point2(*coords) if dimension == 2 else point3(*coords))
    if dimension is None:
        raise PointFileError("no points in input")
    return PointFile(dimension, tuple(points), text)


def _parse_points_arg(text, how_many):
    try:
        pts = [tuple(Fraction(c) for c in chunk.split(",")) for chunk in text.split(";")]
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"cannot parse point list {text!r}") from None
    if len(pts) != how_many or any(len(p) != 2 for p in pts):
        raise UsageError(f"expected {how_many} points as 'x,y;...', got {text!r}")
    return [point2(*p) for p in pts]


def _exact(x) -> str:
    return str(Fraction(x))


@dataclass
class RunReport:
    command: list
    dimension: int
    points: tuple
    kind: str
    structure: object
    witnesses: tuple
    incidence: int
    required: int
    engine: str
    millis: float
    degenerate: bool = False
    extra: dict = field(default_factory=dict)

    @property
    def verified(self) -> bool:
        return self.incidence == self.required

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "input": {"n": len(self.points), "dimension": self.dimension},
            "kind": self.kind,
            "coeffs": [str(k) for k in self.structure.coeffs],
            "witnesses": [[_exact(c) for c in p] for p in self.witnesses],
            "incidence": self.incidence,
            "verified": self.verified,
            "degenerate": self.degenerate,
            "engine": self.engine,
            "millis": round(self.millis, 3),
            **self.extra,
        }

    def to_text(self) -> str:
        lines = [
            f"{self.kind}: {' '.join(str(k) for k in self.structure.coeffs)}",
            f"witnesses: {' '.join(_point_text(p) for p in self.witnesses)}",
            f"incidence: {self.incidence} ({'verified' if self.verified else 'NOT verified'})",
        ]
        if self.degenerate:
            lines.append("degenerate: yes")
        for key, value in self.extra.items():
            lines.append(f"{key}: {value}")
        lines.append(f"n: {len(self.points)}  engine: {self.engine}  millis: {self.millis:.2f}")
        return "\n".join(lines)


def _point_text(p) -> str:
    return "(" + ", ".join(_exact(c) for c in p) + ")"


def _recount(kind, structure, points) -> int:
    """Incidence recomputed from the structure alone, independent of the finder."""
    if kind == "line":
        return incidence_count_line(points, structure).count
    if kind == "conic":
        return incidence_count_conic(points, structure).count
    if kind == "circle":
        return incidence_count_circle(points, structure).count
    return sum(1 for x in points if structure.contains(x))


def _require_dimension(pf, dimension):
    if pf.dimension != dimension:
        raise UsageError(f"this command needs {dimension}D points, input is {pf.dimension}D")


def _solve(args, pf) -> RunReport:
    start = time.perf_counter()
    pts = pf.points
    extra = {}
    if args.command == "line":
        _require_dimension(pf, 2)
        res = find_ordinary_line(pts, args.engine)
        kind, structure, required, degenerate = "line", res.line, 2, False
    elif args.command == "conic":
        _require_dimension(pf, 2)
        if not args.through:
            raise UsageError("conic needs --through 'x,y;x,y;x,y'")
        p, q, r = _parse_points_arg(args.through, 3)
        res = find_ordinary_conic(pts, p, q, r, args.engine)
        kind, structure, required, degenerate = "conic", res.conic, 5, res.degenerate
    elif args.command == "circle":
        _require_dimension(pf, 2)
        if not args.center:
            raise UsageError("circle needs --center 'x,y'")
        (p,) = _parse_points_arg(args.center, 1)
        res = find_ordinary_circle(pts, p, args.engine)
        kind, structure, required = "circle", res.circle, 3
        degenerate = res.circle.degenerate
        extra["shape"] = res.circle.kind
    else:
        _require_dimension(pf, 3)
        res = find_ordinary_plane(pts, args.engine)
        kind, structure, degenerate = "plane", res.plane, False
        extra["apex"] = _point_text(res.apex)
        extra["method"] = res.method
        if not is_ordinary_plane(pts, structure):
            raise InvariantViolation(f"{structure} is not ordinary")
        required = len(res.incident)
    millis = (time.perf_counter() - start) * 1000
    incidence = _recount(kind, structure, pts)
    report = RunReport(
        args.argv, pf.dimension, pts, kind, structure, tuple(res.witnesses if kind != "plane" else res.incident),
        incidence, required, args.engine, millis, degenerate, extra,
    )
    if not report.verified:
        raise InvariantViolation(f"recount gives {incidence} incident points, expected {required}")
    if args.verify_oracle:
        census = _census_for(args, pf)
        if structure not in census:
            raise InvariantViolation(f"{structure} is missing from the brute-force census")
        report.extra["oracle"] = f"confirmed among {census.count} ordinary {kind}s"
    return report


def _census_for(args, pf):
    what = getattr(args, "what", None) or {"line": "lines", "conic": "conics", "circle": "circles", "plane": "planes"}[args.command]
    if what == "planes":
        _require_dimension(pf, 3)
        return enumerate_ordinary_planes(pf.points)
    _require_dimension(pf, 2)
    if what == "lines":
        return enumerate_ordinary_lines(pf.points)
    if what == "conics":
        if not args.through:
            raise UsageError("count conics needs --through 'x,y;x,y;x,y'")
        return enumerate_ordinary_conics_through(pf.points, *_parse_points_arg(args.through, 3))
    if not args.center:
        raise UsageError("count circles needs --center 'x,y'")
    return enumerate_ordinary_circles_through(pf.points, *_parse_points_arg(args.center, 1))


def _count(args, pf) -> dict:
    start = time.perf_counter()
    census = _census_for(args, pf)
    millis = (time.perf_counter() - start) * 1000
    n = len(pf.points)
    bound = {"lines": line_bound(n), "conics": conic_bound(n), "circles": circle_bound(n)}.get(args.what)
    return {
        "command": args.argv,
        "input": {"n": n, "dimension": pf.dimension},
        "kind": args.what,
        "count": census.count,
        "bound": bound,
        "items": [
            {"coeffs": [str(k) for k in item.structure.coeffs], "witnesses": [[_exact(c) for c in p] for p in item.incident]}
            for item in census.items
        ],
        "millis": round(millis, 3),
    }


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--input", required=True, help="point file, one point per line ('-' for stdin)")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--svg", metavar="PATH", help="write a figure (2D commands only)")
    common.add_argument("--engine", choices=("fast", "brute"), default="fast")
    common.add_argument("--verify-oracle", action="store_true", help="cross-check against the brute-force census")

    parser = _Parser(prog="ordinary", description="Find ordinary lines, conics, circles and planes.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("line", parents=[common], help="line through exactly two points")
    conic = sub.add_parser("conic", parents=[common], help="conic through three given points and exactly two more")
    conic.add_argument("--through", required=True, metavar="x,y;x,y;x,y")
    circle = sub.add_parser("circle", parents=[common], help="circle through a given point and exactly two more")
    circle.add_argument("--center", required=True, metavar="x,y")
    sub.add_parser("plane", parents=[common], help="ordinary plane of a 3D set")
    count = sub.add_parser("count", parents=[common], help="brute-force census")
    count.add_argument("what", choices=("lines", "conics", "circles", "planes"))
    count.add_argument("--through", metavar="x,y;x,y;x,y")
    count.add_argument("--center", metavar="x,y")
    return parser


def _emit(args, payload, text):
    print(json.dumps(payload, indent=2) if args.format == "json" else text)


def _error(args, code, tag, message, reason=None):
    if args is not None and args.format == "json":
        payload = {"error": tag, "message": message}
        if reason:
            payload["reason"] = reason
        print(json.dumps(payload, indent=2))
    else:
        label = f"{tag} ({reason})" if reason else tag
        print(f"ordinary: {label}: {message}", file=sys.stderr)
    return code


def run(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = None
    try:
        args = build_parser().parse_args(argv)
        args.argv = argv
        if args.input == "-":
            text = sys.stdin.read()
        else:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
        pf = parse_pointset(text)
        if args.svg and (args.command in ("plane", "count") or pf.dimension != 2):
            raise UsageError("--svg is only available for 2D line, conic and circle results")
        if args.command == "count":
            payload = _count(args, pf)
            text_out = [f"ordinary {payload['kind']}: {payload['count']}"]
            if payload["bound"] is not None:
                text_out[0] += f" (lower bound {payload['bound']})"
            text_out += ["  " + " ".join(item["coeffs"]) for item in payload["items"]]
            _emit(args, payload, "\n".join(text_out))
            return EXIT_OK
        report = _solve(args, pf)
        if args.svg:
            emit_svg(report, args.svg)
        _emit(args, report.to_json(), report.to_text())
        return EXIT_OK
    except DegenerateInputError as exc:
        return _error(args, EXIT_DEGENERATE, "degenerate-input", str(exc), exc.reason)
    except InvariantViolation as exc:
        return _error(args, EXIT_INVARIANT, "invariant-violation", str(exc))
    except PointFileError as exc:
        return _error(args, EXIT_USAGE, "parse-error", str(exc))
    except OSError as exc:
        return _error(args, EXIT_USAGE, "io-error", str(exc))
    except (UsageError, ValueError) as exc:
        return _error(args, EXIT_USAGE, "usage", str(exc))


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
