import random
from fractions import Fraction

import pytest

from zzm.arrangement import (
    check_convexity,
    denominator_bound,
    extract_edges,
    tiling,
    zebra_period_lattice,
)
from zzm.errors import DegenerateError
from zzm.zebra import parse_polynomial

from oracles import evaluate_naive, is_period_naive
from reference_data import AUT, F2, F3, FIG12, INSTANCES, printed_aut


def test_denominator_bound():
    assert denominator_bound(parse_polynomial(F2)) == 4
    with pytest.raises(DegenerateError):
        denominator_bound(parse_polynomial("z61+z62"))


def test_single_zebra_has_no_vertices():
    with pytest.raises(DegenerateError):
        tiling(parse_polynomial("z61"))


def test_segments_have_black_on_the_right():
    text = FIG12
    patch = extract_edges(parse_polynomial(text), 96)
    rng = random.Random(3)
    for seg in rng.sample(patch.segments, 60):
        (mx, my), (vx, vy) = seg.midpoint, seg.vector
        eps = Fraction(1, 10**6)
        right = (mx + eps * vy, my - eps * vx)
        left = (mx - eps * vy, my + eps * vx)
        assert evaluate_naive(text, right) == 1
        assert evaluate_naive(text, left) == 0


def test_patch_dump_is_jsonl():
    patch = extract_edges(parse_polynomial(F3), 16)
    lines = patch.dump_jsonl().splitlines()
    assert len(lines) == len(patch)
    assert lines[0].startswith('{"mid": ')


@pytest.mark.parametrize("text", list(AUT))
def test_aut_matches_printed_lattice(text):
    _, aut = tiling(parse_polynomial(text))
    assert aut.same_lattice(printed_aut(text))


@pytest.mark.parametrize("text", INSTANCES)
def test_aut_basis_preserves_the_function(text):
    _, aut = tiling(parse_polynomial(text))
    rng = random.Random(11)
    pts = [(Fraction(rng.randint(0, 10**4), 9973), Fraction(rng.randint(0, 10**4), 9967)) for _ in range(200)]
    assert is_period_naive(text, aut.b1, pts)
    assert is_period_naive(text, aut.b2, pts)
    # no half of a basis vector is a period
    for b in (aut.b1, aut.b2):
        assert not is_period_naive(text, (b[0] / 2, b[1] / 2), pts)


def test_period_lattice_contained_in_aut():
    poly = parse_polynomial(FIG12)
    _, aut = tiling(poly)
    P = zebra_period_lattice(poly)
    assert aut.contains(P.b1) and aut.contains(P.b2)


def test_convexity_report():
    square = [(1, 0), (0, 1), (-1, 0), (0, -1)]
    white = [[0, 1, 2, 3]]
    assert check_convexity([], white, square).convex
    assert not check_convexity(white, [], square).convex  # wrong orientation for black
    open_face = check_convexity([], [[0, 1]], square)
    assert open_face.unbounded_faces and not open_face
