from collections import Counter

import numpy as np
import pytest

from zzm.errors import CapExceededError, PreconditionError
from zzm.homology import incidence_vectors
from zzm.jacobi import (
    Monomial3,
    MonomialMatrix,
    astar_matrix,
    check_jacobi_relations,
    diagonal_conjugator,
    duality_pairing,
    equal_up_to_permutation,
    master_binomials,
    path_series,
    potential_polynomial,
    qbw_aggregates,
    tau_matrices,
)
from zzm.matchings import enumerate_matchings
from zzm.realization import WeightRealization, newton_point, search_weight_realization
from zzm.superpotential import isomorphic

from conftest import motive, printed
from oracles import count_paths, weight_functions
from reference_data import EXAMPLE_MATRICES, EXAMPLE_WEIGHTS, F2, F3, F4, KAGOME


def printed_matrix(text):
    rows = EXAMPLE_MATRICES[text]
    entries = {}
    for i, row in enumerate(rows):
        for j, monos in enumerate(row):
            if monos:
                entries[(i, j)] = Counter(Monomial3(*m) for m in monos)
    return MonomialMatrix(len(rows), entries)


def example(text):
    S = printed(text)
    return S, WeightRealization.from_values(S, *EXAMPLE_WEIGHTS[text])


@pytest.mark.parametrize("text", [F2, F3])
def test_printed_matrix_reproduced(text):
    S, wr = example(text)
    assert equal_up_to_permutation(astar_matrix(S, wr).matrix, printed_matrix(text)) is not None


@pytest.mark.parametrize("text", [F2, F3])
def test_printed_matrix_on_computed_labels(text):
    M = motive(text)
    S, wr = example(text)
    moved = wr.relabel(isomorphic(S, M.S))
    assert equal_up_to_permutation(astar_matrix(M.S, moved).matrix, printed_matrix(text)) is not None


def test_matrix_text_form():
    S, wr = example(F3)
    assert astar_matrix(S, wr).matrix.polynomial(0, 0) == "u1^4*u2^4*u3^3+u1^3*u2*u3^3+u1^2*u2^4*u3^3"


def test_nonpositive_weights_rejected():
    S = printed(F3)
    with pytest.raises(PreconditionError):
        astar_matrix(S, WeightRealization.from_values(S, (3, 4, 2), (1, 4, 4), (0, 3, 6)))


@pytest.mark.parametrize("text", [F2, F3])
def test_jacobi_relations_for_any_positive_weights(text):
    S = printed(text)
    pos = [v for v in weight_functions(S.sigma0, S.sigma1, 3) if min(v) > 0]
    for v in pos:
        assert check_jacobi_relations(S, WeightRealization.from_values(S, v, v, v))


def test_jacobi_relations_f4_found_weights():
    M = motive(F4)
    wr = search_weight_realization(M.S, omega_hint=M.omega)
    assert check_jacobi_relations(M.S, wr).ok


@pytest.mark.parametrize("text", [F2, F4])
def test_path_counts_match_dfs(text):
    M = motive(text)
    S = M.S
    wr = search_weight_realization(S, omega_hint=M.omega)
    edges = [(S.source[e], S.target[e]) for e in range(S.n_edges)]
    series = path_series(S, wr, 4)
    for j, A in enumerate(series):
        oracle = count_paths(edges, len(S.vertices), j)
        assert [[A.count(a, b) for b in range(A.size)] for a in range(A.size)] == oracle


def test_path_series_cap():
    S, wr = example(F3)
    with pytest.raises(CapExceededError):
        path_series(S, wr, 6, cap=100)


def test_potential_and_binomials_f3():
    S = printed(F3)
    assert potential_polynomial(S) == "X1*X2*X3 - X1*X3*X2"
    assert all(b.is_zero for b in master_binomials(S))


def test_kagome_binomials_on_printed_labels():
    S = printed(KAGOME)
    b = master_binomials(S)
    assert str(b[0]) == "X4*X5*X3*X2*X6 - X2*X5"
    assert b[0].commutative() == "X2*X3*X4*X5*X6 - X2*X5"
    assert not any(x.is_zero for x in b)


def test_tau_unimodular_and_pairing():
    S = motive(F4).S
    ms = enumerate_matchings(S)
    for m in ms:
        t0, t1 = tau_matrices(S, m)
        assert round(np.linalg.det(t0.astype(float))) == 1
        assert round(np.linalg.det(t1.astype(float))) == 1
    m = ms[0]
    t0, _ = tau_matrices(S, m)
    a, b = ms[1].values, ms[2].values
    assert duality_pairing(S, m, 0, a, b) == int(np.array(b) @ t0 @ np.array(a))


def test_q_difference_is_newton_point():
    M = motive(F4)
    wr = search_weight_realization(M.S, omega_hint=M.omega)
    ms = enumerate_matchings(M.S)
    for mp in ms:
        qb, qw = qbw_aggregates(M.S, wr, mp, ms[0])
        assert (qw[0] - qb[0], qw[1] - qb[1]) == newton_point(M.S, wr.omega, wr.theta, mp, ms[0])


def test_diagonal_conjugation():
    S = printed(F2)
    base = [[2 * x for x in nu] for nu in EXAMPLE_WEIGHTS[F2]]
    wr = WeightRealization.from_values(S, *base)
    alpha = incidence_vectors(S)["vertex"][0].coords
    shifted = [[x + a for x, a in zip(base[0], alpha)], base[1], [x - a for x, a in zip(base[2], alpha)]]
    wr2 = WeightRealization.from_values(S, *shifted)
    r = diagonal_conjugator(S, wr, wr2)
    assert r is not None
    A, B = astar_matrix(S, wr).matrix, astar_matrix(S, wr2).matrix
    assert A.shifted(r) == B
    other = WeightRealization.from_values(S, (7, 3, 1, 5), *base[1:])
    assert diagonal_conjugator(S, wr, other) is None
