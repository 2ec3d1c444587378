"""SVG drawings of tilings, quivers, quadrangle tilings and Newton polygons.

This is the only module that converts rationals to floats.  Coordinates are
written with six decimals and the y axis is flipped so that the drawing is
in the usual y-up orientation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from xml.sax.saxutils import escape

from .errors import PreconditionError
from .lattice import LatticeBasis
from .realization import NewtonPoint, Quadrangle, convex_hull, vertex_positions
from .superpotential import Motive, Superpotential

MAX_WINDOW = 400
KINDS = ("tiling", "quiver", "quadrangles", "newton")

#: frame maps applied at output time
ZEBRA_FRAME = (1.0, 1.0 / math.sqrt(3.0))  # rescaled zebra frame -> true plane (up to scale)
PLAIN_FRAME = (1.0, 1.0)


@dataclass(frozen=True)
class Style:
    stroke_width: float = 0.03
    black: str = "#000000"
    white: str = "#ffffff"
    stroke: str = "#808080"
    arrow: str = "#c03030"
    labels: bool = False
    scale: float = 40.0


@dataclass(frozen=True)
class QuadrangleTiling:
    S: Superpotential
    quadrangles: tuple[Quadrangle, ...]
    omega: tuple
    lattice: LatticeBasis


@dataclass(frozen=True)
class Scene:
    kind: str
    payload: object
    window: tuple[int, int] = (1, 1)
    style: Style = field(default_factory=Style)
    frame: tuple[float, float] = ZEBRA_FRAME

    def __post_init__(self):
        if self.kind not in KINDS:
            raise PreconditionError(f"unknown scene kind {self.kind!r}")
        p, q = self.window
        if p < 1 or q < 1:
            raise PreconditionError("window counts must be positive")
        if p * q > MAX_WINDOW:
            raise PreconditionError(f"window {p}x{q} exceeds {MAX_WINDOW} fundamental domains")


def _fmt(x: float) -> str:
    s = f"{x:.6f}"
    return "0.000000" if s == "-0.000000" else s


def _unit(vectors, frame) -> float:
    """Median drawn edge length, so that ``style.scale`` pixels is about one edge."""
    lengths = sorted(math.hypot(float(v[0]) * frame[0], float(v[1]) * frame[1]) for v in vectors)
    lengths = [x for x in lengths if x > 0]
    return lengths[len(lengths) // 2] if lengths else 1.0


class _Canvas:
    def __init__(self, frame, style: Style, unit: float = 1.0):
        self.fx, self.fy = frame[0] / unit, frame[1] / unit
        self.style = style
        self.items: list[str] = []
        self.xs: list[float] = []
        self.ys: list[float] = []

    def map(self, p) -> tuple[float, float]:
        x = float(p[0]) * self.fx * self.style.scale
        y = -float(p[1]) * self.fy * self.style.scale
        self.xs.append(x)
        self.ys.append(y)
        return x, y

    def pts(self, points) -> str:
        return " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in (self.map(p) for p in points))

    def polygon(self, points, cls: str, fill: str, stroke: str, extra: str = ""):
        closed = list(points) + [points[0]]
        w = _fmt(self.style.stroke_width * self.style.scale)
        self.items.append(f'<polygon class="{cls}" points="{self.pts(closed)}" fill="{fill}" '
                          f'stroke="{stroke}" stroke-width="{w}"{extra}/>')

    def line(self, a, b, cls: str, stroke: str, extra: str = ""):
        (x1, y1), (x2, y2) = self.map(a), self.map(b)
        w = _fmt(self.style.stroke_width * self.style.scale)
        self.items.append(f'<line class="{cls}" x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" '
                          f'y2="{_fmt(y2)}" stroke="{stroke}" stroke-width="{w}"{extra}/>')

    def circle(self, p, r: float, cls: str, fill: str):
        x, y = self.map(p)
        self.items.append(f'<circle class="{cls}" cx="{_fmt(x)}" cy="{_fmt(y)}" r="{_fmt(r)}" fill="{fill}"/>')

    def text(self, p, s: str):
        x, y = self.map(p)
        self.items.append(f'<text x="{_fmt(x)}" y="{_fmt(y)}" font-size="{_fmt(self.style.scale * 0.25)}" '
                          f'text-anchor="middle">{escape(s)}</text>')

    def document(self, defs: str = "") -> str:
        pad = self.style.scale * 0.5
        if self.xs:
            x0, x1 = min(self.xs) - pad, max(self.xs) + pad
            y0, y1 = min(self.ys) - pad, max(self.ys) + pad
        else:
            x0 = y0 = 0.0
            x1 = y1 = 1.0
        head = (f'<?xml version="1.0" encoding="UTF-8"?>\n'
                f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
                f'width="{_fmt(x1 - x0)}" height="{_fmt(y1 - y0)}" '
                f'viewBox="{_fmt(x0)} {_fmt(y0)} {_fmt(x1 - x0)} {_fmt(y1 - y0)}">\n')
        body = "\n".join(self.items)
        return head + (f"<defs>{defs}</defs>\n" if defs else "") + body + "\n</svg>\n"


def _translations(lattice: LatticeBasis, window):
    p, q = window
    for i in range(p):
        for j in range(q):
            yield lattice.point((i, j))


def _add(a, b):
    return (a[0] + b[0], a[1] + b[1])


def _face_polygons(S: Superpotential, omega, faces):
    """Exact vertex lists of each face, anchored at the lifted source of its first edge."""
    z = vertex_positions(S, omega)
    out = []
    for f in faces:
        p = z[S.source[f[0]]]
        pts = []
        for e in f:
            pts.append(p)
            p = _add(p, omega[e])
        out.append(pts)
    return out


def _tiling_layer(c: _Canvas, S, omega, lattice, window):
    st = c.style
    black = _face_polygons(S, omega, S.black_faces)
    white = _face_polygons(S, omega, S.white_faces)
    for shift in _translations(lattice, window):
        for i, pts in enumerate(white):
            c.polygon([_add(p, shift) for p in pts], "face white", st.white, st.stroke, f' data-face="w{i + 1}"')
        for i, pts in enumerate(black):
            c.polygon([_add(p, shift) for p in pts], "face black", st.black, st.stroke, f' data-face="b{i + 1}"')


def render_tiling(motive: Motive, window=(1, 1), style: Style = Style(), frame=ZEBRA_FRAME) -> str:
    c = _Canvas(frame, style, _unit(motive.omega, frame))
    _tiling_layer(c, motive.S, motive.omega, motive.realization.lattice, window)
    return c.document()


_ARROW = ('<marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="6" markerHeight="6" '
          'orient="auto-start-reverse"><path d="M 0 0 L 10 5 L 0 10 z" fill="{}"/></marker>')


def render_quiver(motive: Motive, window=(1, 1), style: Style = Style(), frame=ZEBRA_FRAME) -> str:
    S, omega, lattice = motive.S, motive.omega, motive.realization.lattice
    light = Style(style.stroke_width, "#b0b0b0", style.white, style.stroke, style.arrow, style.labels, style.scale)
    c = _Canvas(frame, light, _unit(omega, frame))
    _tiling_layer(c, S, omega, lattice, window)
    z = vertex_positions(S, omega)
    for shift in _translations(lattice, window):
        for e in range(S.n_edges):
            a = _add(z[S.source[e]], shift)
            b = _add(a, omega[e])
            c.line(a, b, "arrow", style.arrow, ' marker-end="url(#arrow)"')
            if style.labels:
                c.text(((a[0] + b[0]) / 2, (a[1] + b[1]) / 2), str(e + 1))
    return c.document(_ARROW.format(style.arrow))


def render_quadrangles(tiling: QuadrangleTiling, window=(1, 1), style: Style = Style(),
                       frame=PLAIN_FRAME) -> str:
    S = tiling.S
    z = vertex_positions(S, tiling.omega)
    c = _Canvas(frame, style, _unit(tiling.omega, frame))
    for shift in _translations(tiling.lattice, window):
        for q in tiling.quadrangles:
            s = _add(z[S.source[q.edge]], shift)
            corners = [_add(s, v) for v in q.corners]
            c.polygon(corners, "quadrangle", "none", style.stroke, f' data-edge="{q.edge + 1}"')
            c.line(corners[0], corners[2], "diagonal quiver", style.black, ' stroke-dasharray="4 2"')
            c.line(corners[1], corners[3], "diagonal dual", style.arrow, ' stroke-dasharray="4 2"')
            c.circle(corners[1], style.scale * 0.06, "marked black", style.black)
            c.circle(corners[3], style.scale * 0.06, "marked white", style.stroke)
            if style.labels:
                mid = ((corners[0][0] + corners[2][0]) / 2, (corners[0][1] + corners[2][1]) / 2)
                c.text(mid, str(q.edge + 1))
    return c.document()


def render_newton(points, style: Style = Style(), frame=PLAIN_FRAME) -> str:
    pts = [p.point if isinstance(p, NewtonPoint) else tuple(p) for p in points]
    fibers = [p.fiber if isinstance(p, NewtonPoint) else 1 for p in points]
    c = _Canvas(frame, style, _unit([(p[0] - q[0], p[1] - q[1]) for p in pts for q in pts], frame) / 2)
    hull = convex_hull(pts)
    if len(hull) >= 3:
        c.polygon(hull, "newton", "#e8e8f8", style.black)
    for p, k in zip(pts, fibers):
        c.circle(p, style.scale * 0.08, "class-point", style.black)
        if style.labels or k > 1:
            c.text((p[0], p[1] + Fraction(1, 4)), str(k))
    return c.document()


def render(scene: Scene) -> str:
    kind, payload = scene.kind, scene.payload
    if kind == "tiling":
        return render_tiling(payload, scene.window, scene.style, scene.frame)
    if kind == "quiver":
        return render_quiver(payload, scene.window, scene.style, scene.frame)
    if kind == "quadrangles":
        return render_quadrangles(payload, scene.window, scene.style, scene.frame)
    return render_newton(payload, scene.style, scene.frame)


__all__ = ["Scene", "Style", "QuadrangleTiling", "render", "render_tiling", "render_quiver",
           "render_quadrangles", "render_newton", "MAX_WINDOW", "ZEBRA_FRAME", "PLAIN_FRAME"]
