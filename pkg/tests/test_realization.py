from fractions import Fraction

import pytest

from zzm.errors import PreconditionError
from zzm.matchings import enumerate_matchings
from zzm.realization import (
    WeightRealization,
    affine_dimension,
    barycentric_quadrangles,
    convex_hull,
    deform,
    face_walk_quadrangles,
    marked_point_consistent,
    newton_embedding,
    quadrangles,
    realization_lattice,
    search_weight_realization,
    validate_weight_realization,
    vertex_positions,
)
from zzm.superpotential import isomorphic

from conftest import motive, printed
from oracles import polygon_area
from reference_data import EXAMPLE_WEIGHTS, F2, F3, F4, FIG12, KAGOME

Q = Fraction


def example(text):
    S = printed(text)
    return S, WeightRealization.from_values(S, *EXAMPLE_WEIGHTS[text])


def on_computed_labels(text):
    """Example weights moved onto the labels of the computed motive."""
    M = motive(text)
    S, wr = example(text)
    return M, wr.relabel(isomorphic(S, M.S))


@pytest.mark.parametrize("text", [F2, F3])
def test_example_weights_are_valid(text):
    S, wr = example(text)
    assert validate_weight_realization(S, wr)


def test_f3_example_quadrangles():
    S, wr = example(F3)
    quads = quadrangles(S, wr, check_all=True)
    assert quads[0].sb == (Q(-1, 3), Q(-1))
    assert quads[0].sw == (Q(1, 3), Q(-1))
    assert quads[0].st == (0, -2)
    assert sum(q.area for q in quads) == 2


@pytest.mark.parametrize("text,area", [(F2, 4), (F3, 2)])
def test_area_equals_covolume(text, area):
    M, wr = on_computed_labels(text)
    quads = quadrangles(M.S, wr, check_all=True)
    lat = realization_lattice(M.S, M.omega, M.realization.lattice, wr.omega)
    assert sum(q.area for q in quads) == lat.covolume == area


@pytest.mark.parametrize("text", [F2, F3])
def test_quadrangle_geometry(text):
    S, wr = example(text)
    quads = quadrangles(S, wr)
    for q, w in zip(quads, wr.omega):
        assert q.qt == (Q(w[0], 2), Q(w[1], 2))
        assert q.is_strictly_convex()
        assert q.area == polygon_area(q.corners)
    assert marked_point_consistent(S, quads, wr.omega)


def test_marked_point_check_detects_a_bad_offset():
    S, wr = example(F3)
    quads = quadrangles(S, wr)
    bad = list(quads)
    bad[1] = type(bad[1])(bad[1].edge, (Q(0), Q(0)), bad[1].sw, bad[1].st)
    assert not marked_point_consistent(S, bad, wr.omega)


def test_face_walk_matches_matrices_for_every_matching():
    M = motive(F4)
    wr = search_weight_realization(M.S, omega_hint=M.omega)
    ref = face_walk_quadrangles(M.S, wr.omega, wr.theta)
    for m in enumerate_matchings(M.S):
        assert quadrangles(M.S, wr, m) == ref


def test_vertex_positions_lift_edges():
    M = motive(F4)
    z = vertex_positions(M.S, M.omega)
    assert z[0] == (0, 0)
    L = M.realization.lattice
    for e in range(M.S.n_edges):
        d = (z[M.S.target[e]][0] - z[M.S.source[e]][0] - M.omega[e][0],
             z[M.S.target[e]][1] - z[M.S.source[e]][1] - M.omega[e][1])
        assert L.contains(d)


def test_f3_newton_triangle():
    S, wr = example(F3)
    pts = newton_embedding(S, wr)
    assert {p.point for p in pts} == {(Q(2, 3), 0), (Q(-1, 3), 1), (Q(-1, 3), -1)}
    assert affine_dimension([p.point for p in pts]) == 2
    assert len(convex_hull([p.point for p in pts])) == 3


def test_newton_fibers_sum_to_matchings():
    M = motive(FIG12)
    wr = search_weight_realization(M.S, omega_hint=M.omega)
    ms = enumerate_matchings(M.S)
    pts = newton_embedding(M.S, wr, ms)
    assert sum(p.fiber for p in pts) == len(ms) == 11
    assert len(pts) == 6
    assert affine_dimension([p.point for p in pts]) == 2


@pytest.mark.parametrize("text", [F4, FIG12])
def test_search_finds_valid_weights(text):
    M = motive(text)
    wr = search_weight_realization(M.S, omega_hint=M.omega)
    assert wr is not None and validate_weight_realization(M.S, wr)
    lat = realization_lattice(M.S, M.omega, M.realization.lattice, wr.omega)
    assert sum(q.area for q in quadrangles(M.S, wr)) == lat.covolume


def test_search_without_hint():
    S = printed(F3)
    wr = search_weight_realization(S)
    assert wr is not None and validate_weight_realization(S, wr)


def test_search_needs_dimer_completeness():
    with pytest.raises(PreconditionError):
        search_weight_realization(motive(KAGOME).S)


def test_deform_keeps_validity():
    S, wr = example(F3)
    m = enumerate_matchings(S)
    out, N = deform(S, wr, [(m[0], m[1]), (m[1], m[2]), (m[2], m[0])])
    assert validate_weight_realization(S, out)
    assert out.nu3.degree == N * wr.nu3.degree
    with pytest.raises(PreconditionError):
        deform(S, wr, [(m[0], m[0] + m[1])] * 3)


def test_validator_negatives():
    S = printed(F3)
    zero = WeightRealization.from_values(S, (3, 4, 2), (1, 4, 4), (0, 3, 6))
    assert "positivity" in validate_weight_realization(S, zero).failures
    degrees = WeightRealization.from_values(S, (4, 4, 2), (1, 4, 4), (3, 3, 3))
    assert "face_closure" in validate_weight_realization(S, degrees).failures
    flat = WeightRealization.from_values(S, (3, 4, 2), (3, 4, 2), (3, 3, 3))
    assert "face_convexity" in validate_weight_realization(S, flat).failures


def test_barycentric_quadrangles_without_matchings():
    M = motive(KAGOME)
    quads = barycentric_quadrangles(M.S, M.omega)
    assert marked_point_consistent(M.S, quads, M.omega)
    assert all(q.is_strictly_convex() for q in quads)
    assert sum(q.area for q in quads) == M.realization.lattice.covolume
    with pytest.raises(PreconditionError):
        quadrangles(M.S, WeightRealization.from_values(M.S, *[[1] * 6] * 3))
