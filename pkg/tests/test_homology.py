import numpy as np
import pytest

from zzm.errors import PreconditionError
from zzm.homology import (
    FORM_KINDS,
    curve_derivative_check,
    h1_ranks,
    in_dual_homology,
    incidence_vectors,
    kernel_checks,
    poisson_forms,
    rho_matrices,
)
from zzm.matchings import enumerate_matchings, matching_from_edges, weight_function
from zzm.realization import WeightRealization

from conftest import motive, printed
from reference_data import DIMER_COMPLETE, EXAMPLE_WEIGHTS, F2, F3, F4, INSTANCES


def nilpotent_series(vs):
    """I + vs + vs^2 + ... computed by repeated multiplication."""
    n = len(vs)
    out = np.eye(n, dtype=np.int64)
    power = np.eye(n, dtype=np.int64)
    for _ in range(n):
        power = power @ vs
        out = out + power
    assert not power.any()
    return out


def test_incidence_f3_vertex_vector_vanishes():
    assert [v.coords for v in incidence_vectors(printed(F3))["vertex"]] == [(0, 0, 0)]


def test_incidence_f2_vertex_vectors():
    coords = {v.coords for v in incidence_vectors(printed(F2))["vertex"]}
    # sigma2 = sigma0^2 has cycles (1 3)(2 4): edges alternate direction
    assert coords == {(-1, 1, -1, 1), (1, -1, 1, -1)}


@pytest.mark.parametrize("text", INSTANCES)
def test_incidence_relations(text):
    iv = incidence_vectors(motive(text).S)
    n = motive(text).S.n_edges
    assert [sum(c) for c in zip(*[v.coords for v in iv["black"]])] == [1] * n
    assert [sum(c) for c in zip(*[v.coords for v in iv["white"]])] == [1] * n
    assert all(sum(c) == 0 for c in zip(*[v.coords for v in iv["vertex"]]))


@pytest.mark.parametrize("text,ranks", [(F3, (3, 2)), (F2, (3, 3))])
def test_h1_ranks(text, ranks):
    assert h1_ranks(motive(text).S) == ranks


@pytest.mark.parametrize("text", INSTANCES)
def test_h1_closed_forms(text):
    S = motive(text).S
    assert h1_ranks(S) == (S.n_edges - len(S.vertices) + 1, len(S.vertices) + 1)


@pytest.mark.parametrize("text", DIMER_COMPLETE)
def test_rho_is_finite_neumann_series(text):
    S = motive(text).S
    for m in enumerate_matchings(S)[:4]:
        pair = rho_matrices(S, m)
        assert (pair.rho0 == nilpotent_series(pair.varsigma0)).all()
        assert (pair.rho1 == nilpotent_series(pair.varsigma1)).all()
        assert (np.diag(pair.rho0) == 1).all() and (np.diag(pair.rho1) == 1).all()


def test_rho_f3_triangular_with_matched_edge_last():
    S = printed(F3)
    pair = rho_matrices(S, matching_from_edges(S, [0]))
    order0, order1 = [1, 2, 0], [2, 1, 0]
    for R, order in ((pair.rho0, order0), (pair.rho1, order1)):
        P = R[np.ix_(order, order)]
        assert (P == np.tril(np.ones((3, 3), dtype=np.int64))).all()


def test_rho_rejects_non_matching():
    S = printed(F3)
    with pytest.raises(PreconditionError):
        rho_matrices(S, weight_function(S, (1, 1, 1)))


def test_f3_intersection_number():
    S = printed(F3)
    ms = enumerate_matchings(S)
    F = poisson_forms(S, ms[0])
    d1 = [a - b for a, b in zip(ms[1].values, ms[0].values)]
    d2 = [a - b for a, b in zip(ms[2].values, ms[0].values)]
    assert F.evaluate("minus", d1, d2) == -1
    assert F.evaluate("plus", d1, d2) == 0


def test_dual_homology_membership():
    S = printed(F2)
    ms = enumerate_matchings(S)
    assert in_dual_homology(S, [a - b for a, b in zip(ms[0].values, ms[1].values)])
    assert not in_dual_homology(S, ms[0].values)
    F = poisson_forms(S, ms[0])
    with pytest.raises(PreconditionError):
        F.evaluate("minus", ms[0].values, ms[1].values)


@pytest.mark.parametrize("text", DIMER_COMPLETE)
def test_kernel_identities(text):
    rep = kernel_checks(motive(text).S)
    assert rep.ok, rep.failures


def test_forms_relations_on_differences():
    S = motive(F4).S
    ms = enumerate_matchings(S)
    for m in ms[:3]:
        F = poisson_forms(S, m)
        D = {k: F.difference_matrix(k, ms) for k in FORM_KINDS}
        assert (2 * D["plus"] == D["black"] + D["white"]).all()
        assert (2 * D["minus"] == D["white"] - D["black"]).all()
        for k in FORM_KINDS:
            assert (D[k] == -D[k].T).all()


@pytest.mark.parametrize("text", [F2, F3])
def test_curve_derivative(text):
    S = printed(text)
    wr = WeightRealization.from_values(S, *EXAMPLE_WEIGHTS[text])
    assert curve_derivative_check(S, wr) < 1e-6
    assert curve_derivative_check(S, wr, psi=[0.3j, -0.2, 0.1 + 0.4j, 0.05][:S.n_edges]) < 1e-6
