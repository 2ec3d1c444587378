import json

import pytest

from zzm import perm
from zzm.errors import LatticeError, PreconditionError
from zzm.superpotential import (
    Superpotential,
    convexity,
    deck_action,
    face_closure_failures,
    genus_identity,
    isomorphic,
    motive_from_json,
    motive_to_json,
)

from conftest import motive, printed
from oracles import cycles_of
from reference_data import F2, F3, INSTANCES, KAGOME


@pytest.mark.parametrize("text", INSTANCES)
def test_isomorphic_to_printed_cycles(text):
    phi = isomorphic(printed(text), motive(text).S)
    assert phi is not None
    assert sorted(phi) == list(range(len(phi)))


@pytest.mark.parametrize("text", INSTANCES)
def test_vertex_count_matches_sigma2_oracle(text):
    S = motive(text).S
    s2 = perm.compose(perm.inverse(S.sigma1), S.sigma0)
    assert len(cycles_of(s2)) == len(S.vertices)
    assert genus_identity(S)


@pytest.mark.parametrize("text", INSTANCES)
def test_faces_close_and_are_convex(text):
    M = motive(text)
    assert face_closure_failures(M.S, M.omega) == []
    assert convexity(M.S, M.omega)


@pytest.mark.parametrize("text", INSTANCES)
def test_json_round_trip(text):
    M = motive(text)
    doc = json.loads(json.dumps(motive_to_json(M)))
    back = motive_from_json(doc)
    assert isomorphic(M.S, back.S) is not None
    assert back.omega == M.omega
    assert back.realization.lattice == M.realization.lattice


def test_json_rejects_bad_ids():
    doc = motive_to_json(motive(F3))
    doc["edges"][0]["id"] = 7
    with pytest.raises(PreconditionError):
        motive_from_json(doc)


def test_non_isomorphic_pairs():
    assert isomorphic(printed(F2), printed(F3)) is None
    swapped = Superpotential.from_cycles([[1, 4, 3, 2]], [[1, 2, 3, 4]])
    assert isomorphic(printed(F2), swapped) is not None  # mirror labels, same structure
    assert isomorphic(printed(KAGOME), Superpotential.from_cycles([[1, 2, 3, 4, 5, 6]], [[1, 2, 3], [4, 5, 6]])) is None


def test_sublattice_multiplies_edges_and_deck_group_acts():
    lam = ((2, 0), (0, 1))
    M = motive(F3, lam)
    assert M.S.n_edges == 2 * motive(F3).S.n_edges
    assert genus_identity(M.S)
    t = deck_action(M, (1, 0))
    assert t != tuple(range(M.S.n_edges))
    assert perm.compose(t, t) == tuple(range(M.S.n_edges))
    # translations commute with the face permutations
    assert perm.compose(t, M.S.sigma0) == perm.compose(M.S.sigma0, t)
    assert perm.compose(t, M.S.sigma1) == perm.compose(M.S.sigma1, t)
    assert deck_action(M, (0, 1)) == tuple(range(M.S.n_edges))


def test_deck_action_needs_integer_shift():
    with pytest.raises(LatticeError):
        deck_action(motive(F3, ((2, 0), (0, 1))), ("1/2", 0))


def test_relabel_is_isomorphism():
    S = motive(F2).S
    phi = (2, 0, 3, 1)
    assert isomorphic(S, S.relabel(phi)) is not None
