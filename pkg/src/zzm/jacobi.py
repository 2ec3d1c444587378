"""Monomial matrices for the quiver, the Jacobi relations and the duality maps.

Entries of a :class:`MonomialMatrix` are multisets of monomials
``u1^a u2^b u3^c``; multiplicities count paths, so nothing is collapsed.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import NamedTuple

import numpy as np

from .errors import CapExceededError, InvariantViolation, PreconditionError
from .homology import as_fractions, rho_matrices
from .intlinalg import det, in_integer_span
from .matchings import WeightFunction, enumerate_matchings, max_matchings, vertex_vectors
from .realization import WeightRealization, quadrangles
from .superpotential import Superpotential


class Monomial3(NamedTuple):
    a: int
    b: int
    c: int

    def __mul__(self, other):
        return Monomial3(self.a + other.a, self.b + other.b, self.c + other.c)

    def divisible_by_u123(self) -> bool:
        return min(self) >= 1

    def __str__(self):
        parts = [f"u{i}^{k}" if k != 1 else f"u{i}" for i, k in zip((1, 2, 3), self) if k]
        return "*".join(parts) if parts else "1"


ONE = Monomial3(0, 0, 0)


@dataclass(frozen=True, eq=False)
class MonomialMatrix:
    """Square matrix whose nonzero entries are stored as ``{(i, j): Counter}``."""

    size: int
    entries: dict

    @classmethod
    def zero(cls, n: int) -> "MonomialMatrix":
        return cls(n, {})

    @classmethod
    def identity(cls, n: int) -> "MonomialMatrix":
        return cls(n, {(i, i): Counter({ONE: 1}) for i in range(n)})

    @classmethod
    def elementary(cls, n: int, i: int, j: int, mono: Monomial3) -> "MonomialMatrix":
        return cls(n, {(i, j): Counter({mono: 1})})

    def entry(self, i: int, j: int) -> Counter:
        return self.entries.get((i, j), Counter())

    def count(self, i: int, j: int) -> int:
        return sum(self.entry(i, j).values())

    def total(self) -> int:
        return sum(sum(c.values()) for c in self.entries.values())

    def __add__(self, other):
        out = {k: Counter(v) for k, v in self.entries.items()}
        for k, v in other.entries.items():
            out.setdefault(k, Counter()).update(v)
        return MonomialMatrix(self.size, out)

    def __matmul__(self, other):
        by_row: dict[int, list] = {}
        for (k, j), c in other.entries.items():
            by_row.setdefault(k, []).append((j, c))
        out: dict = {}
        for (i, k), c1 in self.entries.items():
            for j, c2 in by_row.get(k, ()):
                acc = out.setdefault((i, j), Counter())
                for m1, n1 in c1.items():
                    for m2, n2 in c2.items():
                        acc[m1 * m2] += n1 * n2
        return MonomialMatrix(self.size, out)

    def _clean(self):
        return {k: +v for k, v in self.entries.items() if +v}

    def __eq__(self, other):
        return isinstance(other, MonomialMatrix) and self.size == other.size and self._clean() == other._clean()

    def permuted(self, p) -> "MonomialMatrix":
        """Simultaneous row/column relabelling ``i -> p[i]``."""
        return MonomialMatrix(self.size, {(p[i], p[j]): Counter(c) for (i, j), c in self.entries.items()})

    def shifted(self, r) -> "MonomialMatrix":
        """``D A D^-1`` for ``D = diag(u^r_v)`` (``r`` a list of exponent triples)."""
        out = {}
        for (i, j), c in self.entries.items():
            d = tuple(r[i][k] - r[j][k] for k in range(3))
            new = Counter()
            for mono, n in c.items():
                e = Monomial3(*(x + y for x, y in zip(mono, d)))
                if min(e) < 0:
                    raise PreconditionError("diagonal conjugation leaves the polynomial ring")
                new[e] += n
            out[(i, j)] = new
        return MonomialMatrix(self.size, out)

    def polynomial(self, i: int, j: int) -> str:
        c = +self.entry(i, j)
        if not c:
            return "0"
        terms = []
        for mono in sorted(c, reverse=True):
            n = c[mono]
            terms.append((f"{n}*" if n > 1 else "") + str(mono))
        return "+".join(terms)

    def to_text(self) -> str:
        rows = [[self.polynomial(i, j) for j in range(self.size)] for i in range(self.size)]
        w = max((len(x) for r in rows for x in r), default=1)
        return "\n".join("[ " + "  ".join(x.rjust(w) for x in r) + " ]" for r in rows)

    def to_json(self) -> list:
        return [[sorted([list(m)] * n for m, n in (+self.entry(i, j)).items())
                 for j in range(self.size)] for i in range(self.size)]


def equal_up_to_permutation(A: MonomialMatrix, B: MonomialMatrix):
    """A permutation ``p`` with ``A.permuted(p) == B``, or None."""
    if A.size != B.size:
        return None
    for p in permutations(range(A.size)):
        if A.permuted(p) == B:
            return p
    return None


@dataclass(frozen=True, eq=False)
class AStar:
    matrix: MonomialMatrix
    phi: tuple[MonomialMatrix, ...]  # one elementary summand per edge


def _edge_monomial(wr: WeightRealization, e: int) -> Monomial3:
    return Monomial3(wr.nu1[e], wr.nu2[e], wr.nu3[e])


def tautological(S: Superpotential, wr: WeightRealization) -> tuple[MonomialMatrix, ...]:
    """``Phi(e)``: the monomial of ``e`` at position ``(s(e), t(e))``."""
    if wr.n_edges != S.n_edges:
        raise PreconditionError("weights and superpotential have different sizes")
    for nu in (wr.nu1, wr.nu2, wr.nu3):
        if not nu.is_positive():
            raise PreconditionError("weights must be positive")
    n = len(S.vertices)
    return tuple(MonomialMatrix.elementary(n, S.source[e], S.target[e], _edge_monomial(wr, e))
                 for e in range(S.n_edges))


def astar_matrix(S: Superpotential, wr: WeightRealization) -> AStar:
    phi = tautological(S, wr)
    total = MonomialMatrix.zero(len(S.vertices))
    for m in phi:
        total = total + m
    return AStar(total, phi)


def _path_product(phi, path) -> MonomialMatrix:
    out = phi[path[0]]
    for e in path[1:]:
        out = out @ phi[e]
    return out


def face_paths(S: Superpotential, e: int) -> tuple[list[int], list[int]]:
    """White and black paths from ``t(e)`` back to ``s(e)`` around the faces of ``e``."""
    paths = []
    for sigma in (S.sigma0, S.sigma1):
        p, x = [], sigma[e]
        while x != e:
            p.append(x)
            x = sigma[x]
        paths.append(p)
    return paths[0], paths[1]


@dataclass
class JacobiReport:
    ok: bool
    failures: list

    def __bool__(self):
        return self.ok


def check_jacobi_relations(S: Superpotential, wr: WeightRealization) -> JacobiReport:
    """``Phi`` of the white path equals ``Phi`` of the black path for every edge."""
    phi = tautological(S, wr)
    failures = []
    for e in range(S.n_edges):
        white, black = face_paths(S, e)
        if not white or not black:
            failures.append({"edge": e + 1, "reason": "face of length one"})
            continue
        if _path_product(phi, white) != _path_product(phi, black):
            failures.append({"edge": e + 1, "white": [x + 1 for x in white],
                             "black": [x + 1 for x in black]})
    return JacobiReport(not failures, failures)


def path_series(S: Superpotential, wr: WeightRealization, L: int, cap: int | None = None) -> list[MonomialMatrix]:
    """``[A^0, A^1, ..., A^L]`` with multiplicities counting paths."""
    if L < 0:
        raise PreconditionError("L must be non-negative")
    if cap is None:
        cap = max_matchings()
    A = astar_matrix(S, wr).matrix
    out = [MonomialMatrix.identity(A.size)]
    for _ in range(L):
        nxt = out[-1] @ A
        if nxt.total() > cap:
            raise CapExceededError(f"path series exceeds {cap} monomials")
        out.append(nxt)
    return out


# -- master space ----------------------------------------------------------------------------

@dataclass(frozen=True)
class Binomial:
    edge: int
    white: tuple[int, ...]  # path order
    black: tuple[int, ...]

    @property
    def is_zero(self) -> bool:
        """Zero as a commutative binomial."""
        return sorted(self.white) == sorted(self.black)

    @staticmethod
    def _mono(edges) -> str:
        return "*".join(f"X{e + 1}" for e in edges) if edges else "1"

    def __str__(self):
        return f"{self._mono(self.white)} - {self._mono(self.black)}"

    def commutative(self) -> str:
        if self.is_zero:
            return "0"
        return f"{self._mono(sorted(self.white))} - {self._mono(sorted(self.black))}"


def master_binomials(S: Superpotential) -> list[Binomial]:
    """The partial derivative of the potential with respect to each edge variable."""
    return [Binomial(e, *map(tuple, face_paths(S, e))) for e in range(S.n_edges)]


def potential_polynomial(S: Superpotential) -> str:
    """White cycles with sign +, black cycles with sign -, variables in cyclic order."""
    def mono(c):
        return "*".join(f"X{e + 1}" for e in c)

    return " + ".join(mono(c) for c in S.white_faces) + "".join(f" - {mono(c)}" for c in S.black_faces)


# -- duality maps --------------------------------------------------------------------------------

def tau_matrices(S: Superpotential, m: WeightFunction) -> tuple[np.ndarray, np.ndarray]:
    """``tau_j = (I + varsigma_j)(I - varsigma_j)^-1 = -I + 2 rho_j``; unipotent."""
    pair = rho_matrices(S, m)
    I = np.eye(S.n_edges, dtype=np.int64)
    out = []
    for vs, rho in ((pair.varsigma0, pair.rho0), (pair.varsigma1, pair.rho1)):
        tau = -I + 2 * rho
        if not ((I + vs) @ rho == tau).all():
            raise InvariantViolation("tau differs from (I + varsigma)(I - varsigma)^-1")
        if det(tau.tolist()) != 1:
            raise InvariantViolation("tau is not unimodular")
        out.append(tau)
    return out[0], out[1]


def duality_pairing(S: Superpotential, m: WeightFunction, j: int, nu, nu_prime) -> int:
    """``T_{m,j}(nu)(nu') = nu'^t tau_{m,j} nu``."""
    tau = tau_matrices(S, m)[j]
    return int(np.array(list(nu_prime)) @ tau @ np.array(list(nu)))


def qbw_aggregates(S: Superpotential, wr: WeightRealization, nu, m: WeightFunction | None = None):
    """``(Q_b(nu), Q_w(nu))``; for a perfect matching the closed forms are asserted."""
    quads = quadrangles(S, wr, m)
    vals = list(nu.values) if isinstance(nu, WeightFunction) else list(nu)
    qb = (sum(v * q.qb[0] for v, q in zip(vals, quads)), sum(v * q.qb[1] for v, q in zip(vals, quads)))
    qw = (sum(v * q.qw[0] for v, q in zip(vals, quads)), sum(v * q.qw[1] for v, q in zip(vals, quads)))
    qb = (Fraction(qb[0]), Fraction(qb[1]))
    qw = (Fraction(qw[0]), Fraction(qw[1]))
    is_matching = all(v in (0, 1) for v in vals) and all(
        sum(vals[e] for e in f) == 1 for f in S.white_faces + S.black_faces)
    if is_matching:
        cb, cw = qbw_closed_forms(S, wr, vals, m)
        if (cb, cw) != (qb, qw):
            raise InvariantViolation("q-vector sums disagree with their closed forms",
                                     {"matching": [e + 1 for e, v in enumerate(vals) if v]})
    return qb, qw


def qbw_closed_forms(S: Superpotential, wr: WeightRealization, mp, m: WeightFunction | None = None):
    """``(theta - m')^t (-I/2 + rho_j) omega`` for the black (j=1) and white (j=0) side."""
    if m is None:
        m = enumerate_matchings(S)[0]
    pair = rho_matrices(S, m)
    n = S.n_edges
    diff = as_fractions([t - v for t, v in zip(wr.theta, mp)])
    W = np.array([[Fraction(x), Fraction(y)] for x, y in wr.omega], dtype=object)
    half = np.eye(n, dtype=object) * Fraction(-1, 2)
    out = []
    for rho in (pair.rho1, pair.rho0):
        p = diff @ (half + rho.astype(object)) @ W
        out.append((Fraction(p[0]), Fraction(p[1])))
    return out[0], out[1]


def diagonal_conjugator(S: Superpotential, wr: WeightRealization, wr2: WeightRealization):
    """Exponents ``r_v`` with ``A**(wr2) = D A**(wr) D^-1`` and ``D = diag(u^r_v)``.

    Exists when each ``nu_j - nu'_j`` is an integer combination of vertex
    vectors; returns None otherwise.
    """
    alphas = vertex_vectors(S)
    keep = [i for i, a in enumerate(alphas) if any(a)]
    rows = [alphas[i] for i in keep]
    r = [[0, 0, 0] for _ in alphas]
    for k, (a, b) in enumerate(((wr.nu1, wr2.nu1), (wr.nu2, wr2.nu2), (wr.nu3, wr2.nu3))):
        diff = [x - y for x, y in zip(a.values, b.values)]
        coeff = in_integer_span(rows, diff)
        if coeff is None:
            return None
        for i, c in zip(keep, coeff):
            r[i][k] = c
    # normalise so that all exponents are non-negative
    lows = [min(v[k] for v in r) for k in range(3)]
    return [[v[k] - lows[k] for k in range(3)] for v in r]


__all__ = [
    "Monomial3", "MonomialMatrix", "AStar", "Binomial", "JacobiReport",
    "astar_matrix", "tautological", "check_jacobi_relations", "face_paths", "path_series",
    "master_binomials", "potential_polynomial", "tau_matrices", "duality_pairing",
    "qbw_aggregates", "qbw_closed_forms", "diagonal_conjugator", "equal_up_to_permutation",
]
