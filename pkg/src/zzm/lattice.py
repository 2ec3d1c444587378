"""Rank-2 lattices in Q^2 with exact arithmetic."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .errors import LatticeError
from .intlinalg import common_denominator, det2, hnf
from .zebra import BASIC_FREQUENCIES

Vec = tuple[Fraction, Fraction]


def vec(x, y) -> Vec:
    return (Fraction(x), Fraction(y))


def norm2(v) -> Fraction:
    return v[0] * v[0] + v[1] * v[1]


def dot(a, b):
    return a[0] * b[0] + a[1] * b[1]


@dataclass(frozen=True)
class LatticeBasis:
    b1: Vec
    b2: Vec

    def __post_init__(self):
        object.__setattr__(self, "b1", vec(*self.b1))
        object.__setattr__(self, "b2", vec(*self.b2))
        if det2(self.b1, self.b2) == 0:
            raise LatticeError("lattice basis vectors are dependent")

    @property
    def det(self) -> Fraction:
        return det2(self.b1, self.b2)

    @property
    def covolume(self) -> Fraction:
        return abs(self.det)

    def coordinates(self, p) -> Vec:
        """Coordinates of ``p`` with respect to ``(b1, b2)``."""
        d = self.det
        x, y = Fraction(p[0]), Fraction(p[1])
        return ((x * self.b2[1] - y * self.b2[0]) / d, (self.b1[0] * y - self.b1[1] * x) / d)

    def point(self, c) -> Vec:
        return (c[0] * self.b1[0] + c[1] * self.b2[0], c[0] * self.b1[1] + c[1] * self.b2[1])

    def contains(self, p) -> bool:
        a, b = self.coordinates(p)
        return a.denominator == 1 and b.denominator == 1

    def reduce_point(self, p) -> Vec:
        """Canonical representative of ``p`` modulo the lattice (fractional coordinates)."""
        a, b = self.coordinates(p)
        return (a - (a.numerator // a.denominator), b - (b.numerator // b.denominator))

    def sublattice(self, matrix) -> "LatticeBasis":
        """Lattice spanned by the rows of an integer 2x2 matrix in this basis."""
        (a, b), (c, d) = matrix
        return LatticeBasis(self.point((a, b)), self.point((c, d)))

    def same_lattice(self, other: "LatticeBasis") -> bool:
        return (
            self.covolume == other.covolume
            and self.contains(other.b1)
            and self.contains(other.b2)
        )

    def canonical(self) -> "LatticeBasis":
        return reduced_basis([self.b1, self.b2])

    def as_lists(self):
        return [[self.b1[0], self.b1[1]], [self.b2[0], self.b2[1]]]


def lattice_from_generators(gens) -> LatticeBasis:
    """Basis of the Z-span of rational vectors spanning a rank-2 lattice."""
    gens = [vec(*g) for g in gens]
    d = common_denominator([c for g in gens for c in g])
    rows = [[int(g[0] * d), int(g[1] * d)] for g in gens]
    H = hnf(rows)
    if len(H) != 2:
        raise LatticeError("generators do not span a rank-2 lattice")
    return LatticeBasis(vec(Fraction(H[0][0], d), Fraction(H[0][1], d)),
                        vec(Fraction(H[1][0], d), Fraction(H[1][1], d)))


def gauss_reduce(b1: Vec, b2: Vec) -> tuple[Vec, Vec]:
    if norm2(b1) > norm2(b2):
        b1, b2 = b2, b1
    while True:
        mu = dot(b1, b2) / norm2(b1)
        q = round(mu)
        b2 = (b2[0] - q * b1[0], b2[1] - q * b1[1])
        if norm2(b2) >= norm2(b1):
            return b1, b2
        b1, b2 = b2, b1


def _key(v):
    return (norm2(v), -v[0], -v[1])


def reduced_basis(gens) -> LatticeBasis:
    """Lagrange-reduced basis with det > 0, lexicographically minimal.

    Among all reduced bases the one minimizing ``(|b1|^2, b1, |b2|^2, b2)``
    with positive determinant is returned.
    """
    lat = lattice_from_generators(gens)
    b1, b2 = gauss_reduce(lat.b1, lat.b2)
    cov = abs(det2(b1, b2))
    bound = norm2(b2)
    # all lattice vectors with norm <= |b2|; coefficients bounded since basis is reduced
    short = []
    for i, j in product(range(-3, 4), repeat=2):
        v = (i * b1[0] + j * b2[0], i * b1[1] + j * b2[1])
        if v != (0, 0) and norm2(v) <= bound:
            short.append(v)
    short.sort(key=_key)
    n1 = norm2(short[0])
    best = None
    for u in short:
        if norm2(u) != n1:
            break
        for w in short:
            d = det2(u, w)
            if d == cov:
                cand = (_key(u), _key(w), u, w)
                if best is None or cand[:2] < best[:2]:
                    best = cand
                break  # short is sorted, first hit is the minimum for this u
    return LatticeBasis(best[2], best[3])


def frequency_vector(direction_index: int, coefficient=1) -> Vec:
    """``coefficient * v_j`` of the true plane, expressed in the rescaled frame.

    The rescaled frame is ``y = diag(1/2, sqrt(3)/2) x``; the true basic
    frequency ``v_j`` equals ``diag(1/2, sqrt(3)/2) @ vtilde_j`` so its image is
    ``diag(1/4, 3/4) @ vtilde_j``.
    """
    a, b = BASIC_FREQUENCIES[direction_index]
    c = Fraction(coefficient)
    return (c * Fraction(a, 4), c * Fraction(3 * b, 4))


def lattice_from_frequencies(*terms) -> LatticeBasis:
    """Lattice ``sum_i c_i Z v_{j_i}`` from pairs ``(c_i, j_i)``."""
    return LatticeBasis(*[frequency_vector(j, c) for c, j in terms])
