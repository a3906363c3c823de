"""Static SVG figures of planar results.  Floating point is fine here: drawing only."""

from __future__ import annotations

from .planar import Conic, Line2

WIDTH = 600
GRID = 240


def _frame(points):
    xs = [float(p[0]) for p in points]
    ys = [float(p[1]) for p in points]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    w = max(x1 - x0, 1e-9)
    h = max(y1 - y0, 1e-9)
    if x1 - x0 < 1e-9 and y1 - y0 < 1e-9:
        w = h = 1.0
    mx, my = 0.1 * w, 0.1 * h
    return x0 - mx, x1 + mx, y0 - my, y1 + my


def _clip_line(line: Line2, box):
    x0, x1, y0, y1 = box
    a, b, c = (float(k) for k in line.coeffs)
    pts = []
    if b != 0:
        for x in (x0, x1):
            y = -(a * x + c) / b
            if y0 - 1e-12 <= y <= y1 + 1e-12:
                pts.append((x, y))
    if a != 0:
        for y in (y0, y1):
            x = -(b * y + c) / a
            if x0 - 1e-12 <= x <= x1 + 1e-12:
                pts.append((x, y))
    return pts[:2] if len(pts) >= 2 else []


def _conic_segments(conic: Conic, box):
    """Zero set of the conic by marching squares over a GRID x GRID lattice."""
    x0, x1, y0, y1 = box
    a, b, c, d, e, f = (float(k) for k in conic.coeffs)

    def val(x, y):
        return a * x * x + b * y * y + c * x * y + d * x + e * y + f

    xs = [x0 + (x1 - x0) * i / GRID for i in range(GRID + 1)]
    ys = [y0 + (y1 - y0) * j / GRID for j in range(GRID + 1)]
    vals = [[val(x, y) for y in ys] for x in xs]
    segs = []
    for i in range(GRID):
        for j in range(GRID):
            corners = [
                (xs[i], ys[j], vals[i][j]),
                (xs[i + 1], ys[j], vals[i + 1][j]),
                (xs[i + 1], ys[j + 1], vals[i + 1][j + 1]),
                (xs[i], ys[j + 1], vals[i][j + 1]),
            ]
            cuts = []
            for k in range(4):
                (xa, ya, va), (xb, yb, vb) = corners[k], corners[(k + 1) % 4]
                if (va < 0) != (vb < 0):
                    t = va / (va - vb)
                    cuts.append((xa + t * (xb - xa), ya + t * (yb - ya)))
            for k in range(0, len(cuts) - 1, 2):
                segs.append((cuts[k], cuts[k + 1]))
    return segs


def render_svg(points, structure, witnesses=()) -> str:
    """SVG text showing the points, the witnesses circled, and the line or conic.

    A generalized circle is drawn through its underlying line or conic.
    """
    structure = getattr(structure, "curve", structure)
    box = _frame(points)
    x0, x1, y0, y1 = box
    height = WIDTH * (y1 - y0) / (x1 - x0)

    def tx(p):
        return (
            f"{(p[0] - x0) / (x1 - x0) * WIDTH:.2f}",
            f"{(y1 - p[1]) / (y1 - y0) * height:.2f}",
        )

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" '
        f'height="{height:.0f}" viewBox="0 0 {WIDTH} {height:.2f}">',
        f'<rect width="{WIDTH}" height="{height:.2f}" fill="white"/>',
    ]
    if isinstance(structure, Line2):
        ends = _clip_line(structure, box)
        d = " ".join(f"{'M' if k == 0 else 'L'}{x},{y}" for k, (x, y) in enumerate(map(tx, ends)))
    else:
        d = " ".join(f"M{tx(a)[0]},{tx(a)[1]} L{tx(b)[0]},{tx(b)[1]}" for a, b in _conic_segments(structure, box))
    out.append(f'<path class="structure" d="{d}" fill="none" stroke="steelblue" stroke-width="1.5"/>')
    for p in points:
        cx, cy = tx((float(p[0]), float(p[1])))
        out.append(f'<circle class="point" cx="{cx}" cy="{cy}" r="3" fill="black"/>')
    for p in witnesses:
        cx, cy = tx((float(p[0]), float(p[1])))
        out.append(f'<circle class="witness" cx="{cx}" cy="{cy}" r="7" fill="none" stroke="crimson" stroke-width="2"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_svg(report, path) -> None:
    """Write the figure for a planar :class:`~ordinary.cli.RunReport` to ``path``."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(render_svg(report.points, report.structure, report.witnesses))
