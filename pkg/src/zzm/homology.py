"""Incidence vectors, H^1 ranks, rho-matrices and the four Poisson forms.

All matrices are integer numpy arrays indexed by edges.  Rational vectors
(fractional matchings, realizations) are handled as object arrays of
``Fraction`` so that products stay exact.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from .errors import InvariantViolation, PreconditionError
from .intlinalg import common_denominator, nullspace_q, rank_q
from .matchings import WeightFunction, enumerate_matchings, vertex_vectors
from .superpotential import Superpotential


@dataclass(frozen=True)
class CycleVector:
    kind: str  # "vertex", "black", "white" or "zigzag"
    index: int
    coords: tuple[int, ...]


def black_vectors(S: Superpotential) -> list[list[int]]:
    return [[int(S.black_of[e] == b) for e in range(S.n_edges)] for b in range(len(S.black_faces))]


def white_vectors(S: Superpotential) -> list[list[int]]:
    return [[int(S.white_of[e] == w) for e in range(S.n_edges)] for w in range(len(S.white_faces))]


def zigzag_vectors(S: Superpotential) -> list[list[int]]:
    out = []
    for z in S.zigzags:
        zs = set(z)
        out.append([int(e in zs) - int(S.sigma0[e] in zs) for e in range(S.n_edges)])
    return out


def incidence_vectors(S: Superpotential) -> dict[str, list[CycleVector]]:
    """All alpha_v, beta_b, beta_w, alpha_z with the linear relations checked."""
    groups = {
        "vertex": vertex_vectors(S),
        "black": black_vectors(S),
        "white": white_vectors(S),
        "zigzag": zigzag_vectors(S),
    }
    n = S.n_edges
    if any(sum(r[e] for r in groups["vertex"]) for e in range(n)):
        raise InvariantViolation("vertex vectors do not sum to zero")
    for e in range(n):
        if sum(r[e] for r in groups["black"]) != 1 or sum(r[e] for r in groups["white"]) != 1:
            raise InvariantViolation("face vectors do not partition the edges", {"edge": e})
    return {k: [CycleVector(k, i, tuple(r)) for i, r in enumerate(rows)] for k, rows in groups.items()}


def h1_ranks(S: Superpotential) -> tuple[int, int]:
    """Ranks of H^1 of the quiver and of its dual graph, checked against closed forms."""
    n = S.n_edges
    rank_graph = n - rank_q(vertex_vectors(S))
    rank_dual = n - rank_q(black_vectors(S) + white_vectors(S))
    nv, nb, nw = len(S.vertices), len(S.black_faces), len(S.white_faces)
    if rank_graph != n - nv + 1 or rank_dual != nv + 1 or rank_graph != nb + nw + 1:
        raise InvariantViolation("H^1 ranks disagree with the closed forms",
                                 {"computed": [rank_graph, rank_dual], "E": n, "V": nv})
    return rank_graph, rank_dual


def _truncated(sigma, m: WeightFunction) -> np.ndarray:
    n = len(sigma)
    P = np.zeros((n, n), dtype=np.int64)
    for e in range(n):
        if not m[e]:
            P[sigma[e], e] = 1
    return P


def _rho(sigma, m: WeightFunction) -> np.ndarray:
    """``(I - varsigma)^-1``: column e marks e and its successors up to the matched edge."""
    n = len(sigma)
    R = np.zeros((n, n), dtype=np.int64)
    for e in range(n):
        R[e, e] = 1
        x, steps = e, 0
        while not m[x]:
            x = sigma[x]
            steps += 1
            if steps > n:
                raise PreconditionError("not a perfect matching: a face has no matched edge")
            R[x, e] = 1
    return R


def _check_matching(S: Superpotential, m: WeightFunction):
    for faces in (S.white_faces, S.black_faces):
        for f in faces:
            if sum(m[e] for e in f) != 1:
                raise PreconditionError("not a perfect matching")


@dataclass(frozen=True, eq=False)
class RhoPair:
    rho0: np.ndarray
    rho1: np.ndarray
    matching: WeightFunction
    varsigma0: np.ndarray
    varsigma1: np.ndarray


def rho_matrices(S: Superpotential, m: WeightFunction) -> RhoPair:
    _check_matching(S, m)
    r0, r1 = _rho(S.sigma0, m), _rho(S.sigma1, m)
    v0, v1 = _truncated(S.sigma0, m), _truncated(S.sigma1, m)
    I = np.eye(S.n_edges, dtype=np.int64)
    if not ((I - v0) @ r0 == I).all() or not ((I - v1) @ r1 == I).all():
        raise InvariantViolation("rho is not the inverse of I - varsigma")
    for R in (r0, r1):
        R.setflags(write=False)
    return RhoPair(r0, r1, m, v0, v1)


def as_fractions(v) -> np.ndarray:
    return np.array([Fraction(x) for x in v], dtype=object)


def in_dual_homology(S: Superpotential, h) -> bool:
    """Face sums of ``h`` vanish on every black and white face."""
    return all(sum(h[e] for e in f) == 0 for f in S.white_faces + S.black_faces)


FORM_KINDS = ("plus", "minus", "black", "white")


@dataclass(frozen=True, eq=False)
class PoissonForms:
    """The forms eps_+, eps_-, eps_black, eps_white for one auxiliary matching."""

    S: Superpotential
    rho: RhoPair

    @cached_property
    def _matrices(self):
        r0, r1 = self.rho.rho0, self.rho.rho1
        I = np.eye(self.S.n_edges, dtype=np.int64)
        return {
            "plus": r0 + r1 - I,
            "minus": r0 - r1,
            "black": -I + 2 * r1,
            "white": -I + 2 * r0,
        }

    def matrix(self, kind: str) -> np.ndarray:
        """Raw matrix (debug view; antisymmetric only on the dual homology)."""
        return self._matrices[kind]

    def evaluate(self, kind: str, h1, h2, check: bool = True):
        if check:
            for h in (h1, h2):
                if not in_dual_homology(self.S, h):
                    raise PreconditionError("argument is not in H_1 of the dual graph")
        M = self._matrices[kind]
        a = np.asarray(list(h1), dtype=object)
        b = np.asarray(list(h2), dtype=object)
        return a @ M.astype(object) @ b

    def difference_matrix(self, kind: str, matchings) -> np.ndarray:
        """``[eps(m_i - m_0, m_j - m_0)]_{ij}`` as an integer array."""
        D = np.array([m.values for m in matchings], dtype=np.int64)
        D = D - D[0]
        return D @ self._matrices[kind] @ D.T

    def on_differences(self, kind: str, matchings) -> dict:
        """Values on all ordered pairs (m_i - m_0, m_j - m_0) indexed by (i, j)."""
        V = self.difference_matrix(kind, matchings)
        return {(i, j): int(V[i, j]) for i in range(len(V)) for j in range(len(V))}


def poisson_forms(S: Superpotential, m: WeightFunction) -> PoissonForms:
    return PoissonForms(S, rho_matrices(S, m))


@dataclass
class KernelReport:
    ok: bool
    failures: list

    def __bool__(self):
        return self.ok


def dual_homology_basis(S: Superpotential) -> list[list[Fraction]]:
    """Rational basis of the vectors with vanishing face sums."""
    return nullspace_q(black_vectors(S) + white_vectors(S), S.n_edges)


def _integer_rows(rows) -> np.ndarray:
    out = []
    for r in rows:
        d = common_denominator(r)
        out.append([int(x * d) for x in r])
    return np.array(out, dtype=np.int64).reshape(-1, len(rows[0]) if rows else 0)


def kernel_checks(S: Superpotential, matchings=None, auxiliary=None) -> KernelReport:
    """Vertex and zigzag kernel identities for every auxiliary matching, plus m-independence.

    The identities are identities of forms on the dual homology: ``h^T M a``
    must vanish for every ``h`` there.  (As plain matrix-vector products they
    only hold up to face vectors.)  ``auxiliary`` selects the matchings used
    as ``m`` (default: all of them).
    """
    if matchings is None:
        matchings = enumerate_matchings(S)
    if auxiliary is None:
        auxiliary = range(len(matchings))
    failures = []
    A = np.array(vertex_vectors(S), dtype=np.int64).T
    Z = np.array(zigzag_vectors(S), dtype=np.int64).T
    H = _integer_rows(dual_homology_basis(S))
    reference = None
    for k in auxiliary:
        F = poisson_forms(S, matchings[k])
        minus, plus = F.matrix("minus"), F.matrix("plus")
        for v in np.nonzero((H @ minus @ A).any(axis=0))[0]:
            failures.append({"matching": k, "vertex": int(v)})
        for z in np.nonzero((H @ plus @ Z).any(axis=0))[0]:
            failures.append({"matching": k, "zigzag": int(z)})
        values = {kind: F.difference_matrix(kind, matchings) for kind in FORM_KINDS}
        P, M, B, W = values["plus"], values["minus"], values["black"], values["white"]
        if (2 * P != B + W).any():
            failures.append({"matching": k, "relation": "plus"})
        if (2 * M != W - B).any():
            failures.append({"matching": k, "relation": "minus"})
        if (P != -P.T).any() or (M != -M.T).any():
            failures.append({"matching": k, "relation": "antisymmetry"})
        if reference is None:
            reference = values
        elif any((values[x] != reference[x]).any() for x in FORM_KINDS):
            failures.append({"matching": k, "relation": "independent of m"})
    return KernelReport(not failures, failures)


def spec_point(psi, nu):
    """``exp(sum nu(e) psi(e))``; complex ``psi`` gives a complex value."""
    s = sum(p * v for p, v in zip(psi, nu))
    return cmath.exp(s) if isinstance(s, complex) else math.exp(s)


def spec_points(psi, matchings) -> list:
    return [spec_point(psi, m.values) for m in matchings]


def curve_derivative_check(S: Superpotential, wr, psi=None, h: float = 1e-6, m=None) -> float:
    """Largest relative deviation between finite-difference and closed-form curve derivatives.

    Both curves through the point of ``psi`` are differentiated in every
    matching coordinate at ``z = 0`` with a centred difference of step ``h``.
    """
    from .realization import quadrangles  # realization depends on this module

    matchings = enumerate_matchings(S)
    if m is None:
        m = matchings[0]
    if psi is None:
        psi = [0.0] * S.n_edges
    quads = quadrangles(S, wr, m)
    qb = [complex(float(q.qb[0]), float(q.qb[1])) for q in quads]
    qw = [complex(float(q.qw[0]), float(q.qw[1])) for q in quads]
    F = poisson_forms(S, m)
    omega = [complex(float(x), float(y)) for x, y in wr.omega]
    theta = wr.theta
    worst = 0.0
    for mp in matchings:
        diff = [float(t) - v for t, v in zip(theta, mp.values)]
        for q, kind in ((qb, "black"), (qw, "white")):
            def coord(z):
                return np.exp(sum(v * (complex(p) + z * qq) for v, p, qq in zip(mp.values, psi, q)))

            fd = (coord(h) - coord(-h)) / (2 * h)
            expected = 0.5 * F.evaluate(kind, diff, omega, check=False) * coord(0.0)
            scale = max(abs(expected), abs(coord(0.0)))
            worst = max(worst, abs(fd - expected) / scale)
    return worst


__all__ = [
    "CycleVector", "RhoPair", "PoissonForms", "KernelReport", "FORM_KINDS",
    "incidence_vectors", "h1_ranks", "rho_matrices", "poisson_forms", "kernel_checks",
    "spec_point", "spec_points", "curve_derivative_check", "in_dual_homology",
    "dual_homology_basis", "black_vectors", "white_vectors", "zigzag_vectors", "as_fractions",
]
