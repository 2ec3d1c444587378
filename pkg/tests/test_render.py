import xml.etree.ElementTree as ET

import pytest

from zzm.errors import PreconditionError
from zzm.realization import WeightRealization, newton_embedding, quadrangles, realization_lattice
from zzm.render import PLAIN_FRAME, QuadrangleTiling, Scene, Style, render
from zzm.superpotential import isomorphic

from conftest import motive, printed
from reference_data import EXAMPLE_WEIGHTS, F2, F3, KAGOME

NS = "{http://www.w3.org/2000/svg}"


def polygons(svg, cls=None):
    root = ET.fromstring(svg)
    out = []
    for p in root.iter(NS + "polygon"):
        if cls is None or p.get("class") == cls:
            pts = [tuple(map(float, xy.split(","))) for xy in p.get("points").split()]
            out.append(pts)
    return out


def test_f2_three_by_three():
    svg = render(Scene("tiling", motive(F2), (3, 3)))
    assert len(polygons(svg, "face black")) == 9
    assert len(polygons(svg, "face white")) == 9


def test_f3_single_domain_triangles():
    svg = render(Scene("tiling", motive(F3)))
    black, white = polygons(svg, "face black"), polygons(svg, "face white")
    assert len(black) == len(white) == 1
    # closed: three corners plus the repeated first one
    assert all(len(p) == 4 and p[0] == p[-1] for p in black + white)


def test_polygons_are_closed():
    svg = render(Scene("tiling", motive(KAGOME), (2, 2)))
    assert all(p[0] == p[-1] for p in polygons(svg))


def test_output_is_deterministic():
    a = render(Scene("quiver", motive(KAGOME), (2, 1), Style(labels=True)))
    b = render(Scene("quiver", motive(KAGOME), (2, 1), Style(labels=True)))
    assert a == b
    assert "marker-end" in a


def test_colours_and_stroke_width():
    svg = render(Scene("tiling", motive(F3), style=Style(stroke_width=0.05, black="#112233")))
    root = ET.fromstring(svg)
    faces = [p for p in root.iter(NS + "polygon") if p.get("class") == "face black"]
    assert faces[0].get("fill") == "#112233"
    assert faces[0].get("stroke-width") == "2.000000"


def test_newton_polygon():
    S = printed(F3)
    wr = WeightRealization.from_values(S, *EXAMPLE_WEIGHTS[F3])
    svg = render(Scene("newton", newton_embedding(S, wr), frame=PLAIN_FRAME))
    hull = polygons(svg, "newton")
    assert len(hull) == 1 and len(hull[0]) == 4
    assert len(list(ET.fromstring(svg).iter(NS + "circle"))) == 3


def test_quadrangle_scene():
    M = motive(F2)
    S = printed(F2)
    wr = WeightRealization.from_values(S, *EXAMPLE_WEIGHTS[F2]).relabel(isomorphic(S, M.S))
    lat = realization_lattice(M.S, M.omega, M.realization.lattice, wr.omega)
    tiling = QuadrangleTiling(M.S, tuple(quadrangles(M.S, wr)), wr.omega, lat)
    svg = render(Scene("quadrangles", tiling, (2, 2), frame=PLAIN_FRAME))
    assert len(polygons(svg, "quadrangle")) == 16


def test_window_limits():
    with pytest.raises(PreconditionError):
        Scene("tiling", motive(F3), (21, 20))
    with pytest.raises(PreconditionError):
        Scene("tiling", motive(F3), (0, 1))
    with pytest.raises(PreconditionError):
        Scene("hexagons", motive(F3))
    Scene("tiling", motive(F3), (20, 20))
