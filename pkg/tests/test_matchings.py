from fractions import Fraction

import pytest

from zzm.errors import InvariantViolation, PreconditionError
from zzm.matchings import (
    decompose_weight,
    enumerate_matchings,
    equivalence_classes,
    is_dimer_complete,
    matching_from_edges,
    relation_lattice,
    weight_function,
    weight_rank,
)

from conftest import motive
from oracles import matching_count, weight_functions
from reference_data import DIMER_COMPLETE, F2, F3, F4, INSTANCES, KAGOME


def coboundary(S, diff):
    """Integer potential p with diff(e) = p(t(e)) - p(s(e)), or None."""
    nv = len(S.vertices)
    p = [None] * nv
    p[0] = 0
    changed = True
    while changed:
        changed = False
        for e in range(S.n_edges):
            s, t = S.source[e], S.target[e]
            if p[s] is not None and p[t] is None:
                p[t] = p[s] + diff[e]
                changed = True
            elif p[t] is not None and p[s] is None:
                p[s] = p[t] - diff[e]
                changed = True
    if all(p[S.target[e]] - p[S.source[e]] == diff[e] for e in range(S.n_edges)):
        return p
    return None


@pytest.mark.parametrize("text", INSTANCES)
def test_count_matches_permanent(text):
    S = motive(text).S
    assert len(enumerate_matchings(S)) == matching_count(S.sigma0, S.sigma1)


@pytest.mark.parametrize("text,count,complete", [(F2, 4, True), (F3, 3, True), (KAGOME, 0, False)])
def test_counts_and_completeness(text, count, complete):
    S = motive(text).S
    ms = enumerate_matchings(S)
    assert len(ms) == count
    assert is_dimer_complete(S, ms)[0] is complete


@pytest.mark.parametrize("text,value", [(F2, Fraction(1, 4)), (F3, Fraction(1, 3))])
def test_theta_is_uniform(text, value):
    S = motive(text).S
    assert is_dimer_complete(S)[1] == (value,) * S.n_edges


@pytest.mark.parametrize("text", INSTANCES)
def test_matchings_are_distinct_and_perfect(text):
    S = motive(text).S
    ms = enumerate_matchings(S)
    assert len({m.values for m in ms}) == len(ms)
    for m in ms:
        for f in S.white_faces + S.black_faces:
            assert sum(m[e] for e in f) == 1


def test_weight_function_rejects_unequal_face_sums():
    S = motive(F3).S
    assert weight_function(S, (1, 2, 0)).degree == 3
    with pytest.raises(PreconditionError):
        weight_function(S, (1, 0, 0, 0))
    S4 = motive(F4).S
    with pytest.raises(PreconditionError):
        weight_function(S4, (1,) + (0,) * 11)


@pytest.mark.parametrize("text", DIMER_COMPLETE)
def test_classes_agree_with_coboundary_oracle(text):
    S = motive(text).S
    ms = enumerate_matchings(S)
    classes = equivalence_classes(S, ms)
    assert sorted(i for c in classes for i in c) == list(range(len(ms)))
    label = {i: k for k, c in enumerate(classes) for i in c}
    for i in range(len(ms)):
        for j in range(i + 1, len(ms)):
            diff = [a - b for a, b in zip(ms[i].values, ms[j].values)]
            assert (label[i] == label[j]) == (coboundary(S, diff) is not None)


def test_f4_has_one_large_class():
    S = motive(F4).S
    ms = enumerate_matchings(S)
    assert sorted(map(len, equivalence_classes(S, ms))) == [1, 1, 1, 1, 5]


@pytest.mark.parametrize("text", DIMER_COMPLETE)
def test_relations_annihilate_matchings(text):
    ms = enumerate_matchings(motive(text).S)
    rel = relation_lattice(ms)
    assert len(rel.basis) == len(ms) - weight_rank(ms)
    for r in rel.basis:
        assert all(sum(c * m[e] for c, m in zip(r, ms)) == 0 for e in range(len(ms[0])))


@pytest.mark.parametrize("text", [F2, F3])
def test_low_degree_weights_decompose(text):
    S = motive(text).S
    ms = enumerate_matchings(S)
    for d in (1, 2, 3):
        for vals in weight_functions(S.sigma0, S.sigma1, d):
            parts = decompose_weight(S, weight_function(S, vals), ms)
            assert len(parts) == d
            assert tuple(map(sum, zip(*[p.values for p in parts]))) == tuple(vals)


def test_decompose_reports_failure():
    S = motive(F3).S
    nu = weight_function(S, (1, 1, 1))
    with pytest.raises(InvariantViolation):
        decompose_weight(S, nu, enumerate_matchings(S)[:1])


def test_matching_from_edges():
    S = motive(F3).S
    assert matching_from_edges(S, [1]).values == (0, 1, 0)
    with pytest.raises(PreconditionError):
        matching_from_edges(S, [0, 1])
