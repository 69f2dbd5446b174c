"""SVG pictures of three-vertex arrangements, restricted to the plane ``x_1 + x_2 + x_3 = 0``.

Points of the plane are handled in difference coordinates
``d = (x_1 - x_2, x_2 - x_3)``, where every hyperplane is a line. Screen
coordinates come from an exact rational map that is isometric up to the
rational stand-in used for sqrt(3).
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from xml.sax.saxutils import escape

from .errors import PreconditionError
from .geometry import ConstraintSystem, difference_constraint, region_system, strict_feasible, LESS
from .graph import SimpleGraph
from .orientations import (
    BACKWARD,
    BLANK,
    FORWARD,
    ParameterList,
    PartialOrientation,
    admissible_orientations,
    validate_parameters,
)

SQRT3 = Fraction(1351, 780)
SCALE = 60
MAX_GRID = 240

# x_i - x_j as a linear form in (d1, d2)
_DIFF = {(1, 2): (1, 0), (2, 3): (0, 1), (1, 3): (1, 1)}


def _form(i, j):
    if (i, j) in _DIFF:
        return _DIFF[(i, j)]
    a, b = _DIFF[(j, i)]
    return (-a, -b)


def _lines(G: SimpleGraph, A: ParameterList):
    """One ``(form, rhs, (i, j))`` per hyperplane ``x_i - x_j = a_ij``, in a fixed order."""
    out = []
    for i, j in G.edges:
        for s, t in ((i, j), (j, i)):
            out.append((_form(s, t), A[(s, t)], (s, t)))
    return out


def _intersections(lines):
    pts = []
    for (f1, r1, _), (f2, r2, _) in combinations(lines, 2):
        det = f1[0] * f2[1] - f1[1] * f2[0]
        if det == 0:
            continue
        pts.append((Fraction(r1 * f2[1] - r2 * f1[1], det), Fraction(f1[0] * r2 - f2[0] * r1, det)))
    return pts


def _bounding_box(lines):
    pts = _intersections(lines) + [(Fraction(0), Fraction(0))]
    for f, r, _ in lines:  # one point per line so parallel families still fit
        pts.append((Fraction(r, f[0]), Fraction(0)) if f[0] else (Fraction(0), Fraction(r, f[1])))
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    span = max(max(xs) - min(xs), max(ys) - min(ys), Fraction(1))
    margin = span * Fraction(3, 4)
    return min(xs) - margin, max(xs) + margin, min(ys) - margin, max(ys) + margin


def _pitch(A: ParameterList, lines):
    values = sorted({abs(v) for v in A.values.values()} | {abs(c) for p in _intersections(lines) for c in p})
    gaps = [b - a for a, b in zip(values, values[1:]) if b > a] + [v for v in values if v > 0]
    return (min(gaps) if gaps else Fraction(1)) / 4


def _region_key(G: SimpleGraph, A: ParameterList, d):
    states = []
    for i, j in G.edges:
        f = _form(i, j)
        val = f[0] * d[0] + f[1] * d[1]  # x_i - x_j
        if val == A[(i, j)] or -val == A[(j, i)]:
            return None
        if -val > A[(j, i)]:
            states.append(FORWARD)
        elif val > A[(i, j)]:
            states.append(BACKWARD)
        else:
            states.append(BLANK)
    return tuple(states)


def _screen(d):
    d1, d2 = d
    return -(2 * d1 + d2) * SCALE / SQRT3, d2 * SCALE


def _fmt(q: Fraction) -> str:
    k = round(q * 100)
    sign = "-" if k < 0 else ""
    k = abs(k)
    return f"{sign}{k // 100}.{k % 100:02d}"


def _clip(form, rhs, box):
    """Endpoints of the line ``form . d = rhs`` inside the box."""
    x0, x1, y0, y1 = box
    a, b = form
    pts = []
    if b != 0:
        for x in (x0, x1):
            y = Fraction(rhs - a * x, b)
            if y0 <= y <= y1:
                pts.append((x, y))
    if a != 0:
        for y in (y0, y1):
            x = Fraction(rhs - b * y, a)
            if x0 <= x <= x1:
                pts.append((x, y))
    pts = sorted(set(pts))
    return pts[0], pts[-1]


def _label_text(c) -> str:
    if all(0 <= x < 10 for x in c):
        return "".join(str(x) for x in c)
    return ",".join(str(x) for x in c)


def _witness_in_box(O: PartialOrientation, A: ParameterList, box):
    # fall back to an exact interior point when no grid sample landed in the region
    sys = region_system(O, A)
    x0, x1, y0, y1 = box
    extra = (
        difference_constraint(3, 1, 2, x1, LESS), difference_constraint(3, 2, 1, -x0, LESS),
        difference_constraint(3, 2, 3, y1, LESS), difference_constraint(3, 3, 2, -y0, LESS),
    )
    x = strict_feasible(ConstraintSystem(3, sys.constraints + extra))
    return (x[0] - x[1], x[1] - x[2])


def region_label_positions(G: SimpleGraph, A: ParameterList):
    """Map each admissible orientation to a point ``(d1, d2)`` inside its region and box."""
    lines = _lines(G, A)
    box = _bounding_box(lines)
    regions = admissible_orientations(G, A)
    wanted = {O.states: O for O in regions}
    pitch = _pitch(A, lines)
    x0, x1, y0, y1 = box
    pitch = max(pitch, (x1 - x0) / MAX_GRID, (y1 - y0) / MAX_GRID)
    sums = {}
    nx = int((x1 - x0) / pitch)
    ny = int((y1 - y0) / pitch)
    for a in range(nx + 1):
        for b in range(ny + 1):
            d = (x0 + a * pitch, y0 + b * pitch)
            key = _region_key(G, A, d)
            if key is None:
                continue
            acc = sums.setdefault(key, [Fraction(0), Fraction(0), 0])
            acc[0] += d[0]
            acc[1] += d[1]
            acc[2] += 1
    positions = {}
    for key, O in wanted.items():
        if key in sums:
            sx, sy, cnt = sums[key]
            positions[O] = (sx / cnt, sy / cnt)
        else:
            positions[O] = _witness_in_box(O, A, box)
    return positions, box


def render_svg(G: SimpleGraph, A: ParameterList, out=None) -> str:
    """Draw the hyperplanes and the Pak-Stanley label of every region.

    Labels are the indegree sequences of the admissible orientations, placed
    at the centroid of the region's grid samples. Writes to ``out`` if given.
    """
    if G.n != 3:
        raise PreconditionError(f"rendering needs exactly 3 vertices, got {G.n}")
    if not G.is_connected():
        raise PreconditionError("rendering needs a connected graph")
    validate_parameters(G, A)
    lines = _lines(G, A)
    positions, box = region_label_positions(G, A)
    x0, x1, y0, y1 = box
    corners = [_screen((x, y)) for x in (x0, x1) for y in (y0, y1)]
    sx = [p[0] for p in corners]
    sy = [p[1] for p in corners]
    pad = 40
    minx, miny = min(sx) - pad, min(sy) - pad
    width, height = max(sx) - min(sx) + 2 * pad, max(sy) - min(sy) + 2 * pad

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="{_fmt(minx)} {_fmt(miny)} {_fmt(width)} {_fmt(height)}" '
        f'width="{_fmt(width)}" height="{_fmt(height)}">',
        f'<title>{escape(A.name)} arrangement of a 3-vertex graph</title>',
        '<g stroke="black" stroke-width="1.5">',
    ]
    for form, rhs, (i, j) in lines:
        p, q = _clip(form, rhs, box)
        (ax, ay), (bx, by) = _screen(p), _screen(q)
        parts.append(
            f'<line class="hyperplane" data-step="{i},{j}" x1="{_fmt(ax)}" y1="{_fmt(ay)}" '
            f'x2="{_fmt(bx)}" y2="{_fmt(by)}"/>')
    parts.append("</g>")
    parts.append('<g font-family="sans-serif" font-size="11" fill="#333">')
    for form, rhs, (i, j) in lines:
        p, q = _clip(form, rhs, box)
        end = max((p, q), key=lambda pt: (-_screen(pt)[1], _screen(pt)[0]))
        ex, ey = _screen(end)
        parts.append(f'<text class="equation" x="{_fmt(ex)}" y="{_fmt(ey - 4)}">'
                     f'x{i}-x{j}={escape(str(rhs))}</text>')
    parts.append("</g>")
    parts.append('<g font-family="monospace" font-size="13" text-anchor="middle">')
    for O in sorted(positions, key=lambda o: o.states):
        px, py = _screen(positions[O])
        parts.append(f'<text class="label" data-orientation="{escape(str(O))}" '
                     f'x="{_fmt(px)}" y="{_fmt(py + 4)}">{_label_text(O.indegree)}</text>')
    parts.append("</g>")
    parts.append("</svg>")
    doc = "\n".join(parts) + "\n"
    if out is not None:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(doc)
    return doc
