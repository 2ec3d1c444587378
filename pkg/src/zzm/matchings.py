"""Perfect matchings, weight functions and their lattices."""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import CapExceededError, InvariantViolation, PreconditionError
from .intlinalg import hnf, in_integer_span, integer_kernel, rank_q, reduce_mod_hnf, transpose
from .superpotential import Superpotential

DEFAULT_MAX_MATCHINGS = 10**6


def max_matchings() -> int:
    return int(os.environ.get("ZZM_MAX_MATCHINGS", DEFAULT_MAX_MATCHINGS))


@dataclass(frozen=True)
class WeightFunction:
    values: tuple[int, ...]
    degree: int

    def __add__(self, other):
        return WeightFunction(tuple(a + b for a, b in zip(self.values, other.values)),
                              self.degree + other.degree)

    def __getitem__(self, e):
        return self.values[e]

    def __len__(self):
        return len(self.values)

    @property
    def support(self) -> frozenset[int]:
        return frozenset(e for e, v in enumerate(self.values) if v)

    def is_positive(self) -> bool:
        return all(v > 0 for v in self.values)


def weight_degree(S: Superpotential, values: Sequence[int]) -> int | None:
    """Common cycle sum over all faces, or None when the sums differ."""
    sums = {sum(values[e] for e in f) for f in S.white_faces + S.black_faces}
    return sums.pop() if len(sums) == 1 else None


def weight_function(S: Superpotential, values: Sequence[int]) -> WeightFunction:
    values = tuple(int(v) for v in values)
    if len(values) != S.n_edges:
        raise PreconditionError(f"expected {S.n_edges} values, got {len(values)}")
    if any(v < 0 for v in values):
        raise PreconditionError("weights must be non-negative")
    d = weight_degree(S, values)
    if d is None:
        raise PreconditionError("face sums of the weight function are not all equal")
    return WeightFunction(values, d)


def matching_from_edges(S: Superpotential, edges) -> WeightFunction:
    edges = set(edges)
    m = weight_function(S, [1 if e in edges else 0 for e in range(S.n_edges)])
    if m.degree != 1:
        raise PreconditionError(f"edges {sorted(edges)} are not a perfect matching")
    return m


def enumerate_matchings(S: Superpotential, cap: int | None = None) -> list[WeightFunction]:
    """All perfect matchings, sorted by their sorted edge lists.

    Exact cover of the faces (white and black) by edges; each step branches
    on the uncovered face with the fewest admissible edges.
    """
    if cap is None:
        cap = max_matchings()
    n = S.n_edges
    wof, bof = S.white_of, S.black_of
    nw, nb = len(S.white_faces), len(S.black_faces)
    if nw != nb:
        return []
    faces = [("w", i, S.white_faces[i]) for i in range(nw)] + [("b", i, S.black_faces[i]) for i in range(nb)]
    white_used = [False] * nw
    black_used = [False] * nb
    chosen: list[int] = []
    found: list[tuple[int, ...]] = []

    def admissible(face):
        return [e for e in face[2] if not white_used[wof[e]] and not black_used[bof[e]]]

    def rec():
        best = None
        for f in faces:
            used = white_used[f[1]] if f[0] == "w" else black_used[f[1]]
            if used:
                continue
            cand = admissible(f)
            if best is None or len(cand) < len(best):
                best = cand
                if not cand:
                    return
        if best is None:
            found.append(tuple(sorted(chosen)))
            if len(found) > cap:
                raise CapExceededError(f"more than {cap} perfect matchings (set ZZM_MAX_MATCHINGS)")
            return
        for e in best:
            white_used[wof[e]] = black_used[bof[e]] = True
            chosen.append(e)
            rec()
            chosen.pop()
            white_used[wof[e]] = black_used[bof[e]] = False

    rec()
    found.sort()
    out = []
    for m in found:
        chosen_set = set(m)
        out.append(WeightFunction(tuple(1 if e in chosen_set else 0 for e in range(n)), 1))
    return out


def matching_edges(m: WeightFunction) -> tuple[int, ...]:
    return tuple(sorted(m.support))


def is_dimer_complete(S: Superpotential, matchings=None):
    """(complete, theta) with theta the averaged matching when complete."""
    if matchings is None:
        matchings = enumerate_matchings(S)
    if not matchings:
        return False, None
    total = [sum(m[e] for m in matchings) for e in range(S.n_edges)]
    if any(t == 0 for t in total):
        return False, None
    k = len(matchings)
    return True, tuple(Fraction(t, k) for t in total)


def decompose_weight(S: Superpotential, nu: WeightFunction, matchings=None) -> list[WeightFunction]:
    """Greedy peeling of perfect matchings off ``nu``."""
    if matchings is None:
        matchings = enumerate_matchings(S)
    rest = list(nu.values)
    out = []
    for _ in range(nu.degree):
        m = next((m for m in matchings if all(r >= v for r, v in zip(rest, m.values))), None)
        if m is None:
            raise InvariantViolation("weight function does not decompose", {"rest": rest})
        out.append(m)
        rest = [r - v for r, v in zip(rest, m.values)]
    if any(rest):
        raise InvariantViolation("leftover weight after peeling", {"rest": rest})
    return out


def matching_matrix(matchings) -> list[list[int]]:
    """|E| x |M| matrix whose columns are the matchings."""
    return transpose([list(m.values) for m in matchings])


@dataclass(frozen=True)
class RelationLattice:
    basis: tuple[tuple[int, ...], ...]
    binomials: tuple[str, ...]


def _binomial(mu) -> str:
    def mono(exps):
        parts = []
        for i, k in exps:
            parts.append(f"Xm{i + 1}" + (f"^{k}" if k > 1 else ""))
        return "*".join(parts) if parts else "1"

    plus = [(i, c) for i, c in enumerate(mu) if c > 0]
    minus = [(i, -c) for i, c in enumerate(mu) if c < 0]
    return f"{mono(plus)} - {mono(minus)}"


def relation_lattice(matchings) -> RelationLattice:
    """Integer relations between matchings, with the corresponding binomials."""
    if not matchings:
        raise PreconditionError("need at least one matching")
    A = matching_matrix(matchings)
    basis = integer_kernel(A, len(matchings))
    return RelationLattice(tuple(tuple(r) for r in basis), tuple(_binomial(r) for r in basis))


def weight_rank(matchings) -> int:
    return rank_q([list(m.values) for m in matchings]) if matchings else 0


def vertex_vectors(S: Superpotential) -> list[list[int]]:
    """alpha_v for every vertex: +1 on incoming, -1 on outgoing edges."""
    out = []
    for v in range(len(S.vertices)):
        row = [0] * S.n_edges
        for e in range(S.n_edges):
            row[e] += (S.target[e] == v) - (S.source[e] == v)
        out.append(row)
    return out


def equivalent(S: Superpotential, a: Sequence[int], b: Sequence[int], alphas=None) -> bool:
    """``a ~ b`` iff ``a - b`` lies in the integer span of the vertex vectors."""
    if alphas is None:
        alphas = vertex_vectors(S)
    diff = [x - y for x, y in zip(a, b)]
    rows = [r for r in alphas if any(r)]
    return in_integer_span(rows, diff) is not None


def equivalence_classes(S: Superpotential, matchings) -> list[list[int]]:
    """Partition of matching indices into ~-classes (each class sorted, in order of first member)."""
    alphas = [r for r in vertex_vectors(S) if any(r)]
    H = hnf(alphas) if alphas else []
    classes: dict[tuple, list[int]] = {}
    for i, m in enumerate(matchings):
        classes.setdefault(reduce_mod_hnf(H, m.values), []).append(i)
    return list(classes.values())
