"""Boundary segments of a zebra tiling on a finite patch and its translation lattice.

Segment endpoints are intersection points of zebra boundary lines
``2 y.v = c``; all of them lie on the grid ``Z^2 / K``.  Internally the
patch is stored as integer arrays of ``K``-scaled coordinates.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd, lcm, sqrt

import numpy as np

from .errors import DegenerateError, PatchTooSmallError
from .intlinalg import det2
from .lattice import LatticeBasis, lattice_from_generators, norm2, reduced_basis
from .zebra import ZebraPolynomial, evaluate_limit

log = logging.getLogger(__name__)

#: patch growth policy: start at INITIAL_FACTOR*K, double up to MAX_FACTOR*K
INITIAL_FACTOR = 8
MAX_FACTOR = 128


@dataclass(frozen=True)
class EdgeSegment:
    midpoint: tuple[Fraction, Fraction]
    source: tuple[Fraction, Fraction]
    target: tuple[Fraction, Fraction]
    vector: tuple[Fraction, Fraction]

    def to_json(self) -> str:
        def q(p):
            return [[c.numerator, c.denominator] for c in p]

        return json.dumps({"mid": q(self.midpoint), "src": q(self.source),
                           "tgt": q(self.target), "vec": q(self.vector)})


@dataclass(frozen=True, eq=False)
class Patch:
    """Oriented black/white boundary segments found in ``[0, N/K)^2``.

    ``src`` and ``tgt`` are ``(n, 2)`` integer arrays of K-scaled endpoints;
    walking from source to target the black region is on the right.
    """

    poly: ZebraPolynomial
    K: int
    N: int
    src: np.ndarray
    tgt: np.ndarray

    def __len__(self):
        return len(self.src)

    @cached_property
    def segments(self) -> list[EdgeSegment]:
        K = self.K
        out = []
        for (sx, sy), (tx, ty) in zip(self.src.tolist(), self.tgt.tolist()):
            s = (Fraction(sx, K), Fraction(sy, K))
            t = (Fraction(tx, K), Fraction(ty, K))
            out.append(EdgeSegment(((s[0] + t[0]) / 2, (s[1] + t[1]) / 2), s, t,
                                   (t[0] - s[0], t[1] - s[1])))
        return out

    def __iter__(self):
        return iter(self.segments)

    @cached_property
    def vertices(self) -> np.ndarray:
        pts = np.concatenate([self.src, self.tgt]) if len(self) else np.zeros((0, 2), np.int64)
        return np.unique(pts, axis=0)

    def dump_jsonl(self) -> str:
        return "\n".join(s.to_json() for s in self.segments)


def denominator_bound(poly: ZebraPolynomial) -> int:
    """K = lcm of ``2|det(v, v')| / gcd(entries)`` over independent frequency pairs."""
    vs = [tuple(int(c) for c in poly.V[:, j]) for j in range(poly.n_frequencies)]
    K = 1
    found = False
    for i in range(len(vs)):
        for j in range(i + 1, len(vs)):
            d = det2(vs[i], vs[j])
            if d:
                found = True
                g = gcd(*vs[i], *vs[j])
                K = lcm(K, 2 * abs(d) // g)
    if not found:
        raise DegenerateError("need two independent frequency directions for bounded faces")
    return K


def _direction_classes(poly: ZebraPolynomial) -> list[int]:
    """Index of the direction class (up to scaling) of each frequency."""
    classes: list[tuple[int, int]] = []
    out = []
    for j in range(poly.n_frequencies):
        a, b = int(poly.V[0, j]), int(poly.V[1, j])
        g = gcd(a, b)
        a, b = a // g, b // g
        if a < 0 or (a == 0 and b < 0):
            a, b = -a, -b
        if (a, b) not in classes:
            classes.append((a, b))
        out.append(classes.index((a, b)))
    return out


def scan_order(points: np.ndarray) -> np.ndarray:
    """Argsort of grid points ``(n, m)`` by ``n + m sqrt(2)``."""
    key = points[:, 0] + points[:, 1] * sqrt(2.0)
    return np.argsort(key, kind="stable")


def extract_edges(poly: ZebraPolynomial, N: int) -> Patch:
    """Oriented black/white boundary segments on the patch ``[0, N/K)^2``."""
    K = denominator_bound(poly)
    V = poly.V
    classes = np.array(_direction_classes(poly))
    n_classes = classes.max() + 1
    grid = np.stack(np.meshgrid(np.arange(N), np.arange(N), indexing="ij"), axis=-1).reshape(-1, 2)
    grid = grid[scan_order(grid)]
    S = 2 * (grid @ V)
    on = (S % K) == 0
    class_hits = np.zeros((len(grid), n_classes), dtype=bool)
    for c in range(n_classes):
        class_hits[:, c] = on[:, classes == c].any(axis=1)
    is_vertex = class_hits.sum(axis=1) >= 2
    X = grid[is_vertex]
    S = S[is_vertex]
    on = on[is_vertex]
    if len(X) == 0:
        return Patch(poly, K, N, np.zeros((0, 2), np.int64), np.zeros((0, 2), np.int64))

    pairs = []
    for j in range(poly.n_frequencies):
        rows = np.nonzero(on[:, j])[0]
        if len(rows) < 2:
            continue
        v = V[:, j]
        line = S[rows, j] // K
        along = X[rows] @ np.array([-v[1], v[0]])
        order = np.lexsort((along, line))
        rows, line = rows[order], line[order]
        same = line[1:] == line[:-1]
        a, b = rows[:-1][same], rows[1:][same]
        pairs.append(np.stack([a, b], axis=1))
    if not pairs:
        return Patch(poly, K, N, np.zeros((0, 2), np.int64), np.zeros((0, 2), np.int64))
    pairs = np.concatenate(pairs)
    pairs.sort(axis=1)
    pairs = np.unique(pairs, axis=0)
    # keep the scan order of the first endpoint
    pairs = pairs[np.lexsort((pairs[:, 1], pairs[:, 0]))]
    P, Q = X[pairs[:, 0]], X[pairs[:, 1]]
    d = Q - P
    right = np.stack([d[:, 1], -d[:, 0]], axis=1)
    mid2 = P + Q  # midpoints scaled by 2K
    black_right = evaluate_limit(poly, mid2, right, 2 * K)
    black_left = evaluate_limit(poly, mid2, -right, 2 * K)
    keep = black_right != black_left
    flip = (black_right == 0) & keep
    src = np.where(flip[:, None], Q, P)[keep]
    tgt = np.where(flip[:, None], P, Q)[keep]
    log.debug("patch N=%d K=%d: %d vertices, %d boundary segments", N, K, len(X), len(src))
    return Patch(poly, K, N, src.astype(np.int64), tgt.astype(np.int64))


def zebra_period_lattice(poly: ZebraPolynomial) -> LatticeBasis:
    """Translations ``t`` with ``t.v`` integral for every frequency ``v``.

    Every zebra, hence the polynomial, is invariant under this lattice.
    """
    gens = [tuple(int(c) for c in poly.V[:, j]) for j in range(poly.n_frequencies)]
    span = lattice_from_generators(gens)
    # dual basis: rows of inverse-transpose
    (a, b), (c, d) = span.b1, span.b2
    det = a * d - b * c
    return LatticeBasis((d / det, -c / det), (-b / det, a / det))


def _translation_preserves(patch: Patch, T: np.ndarray, segset: set) -> bool:
    lo, hi = 0, patch.N - 1
    s2, t2 = patch.src + T, patch.tgt + T
    inside = ((s2 >= lo) & (s2 <= hi) & (t2 >= lo) & (t2 <= hi)).all(axis=1)
    for s, t in zip(s2[inside].tolist(), t2[inside].tolist()):
        if (s[0], s[1], t[0], t[1]) not in segset:
            return False
    return True


def automorphism_lattice(poly: ZebraPolynomial, patch: Patch) -> LatticeBasis:
    """Reduced basis of the group of translations preserving the tiling.

    Candidates are differences of midpoints of segments parallel and equal to
    a reference segment near the centre of the patch.  A candidate is
    accepted when it maps every segment of the patch that stays inside the
    patch onto a segment with the same orientation.
    """
    if len(patch) == 0:
        raise DegenerateError("no boundary segments: the tiling has no vertices")
    K = patch.K
    period = zebra_period_lattice(poly)
    gens = [period.b1, period.b2]
    # the period lattice is always contained; its cell bounds the search radius
    pb1, pb2 = reduced_basis(gens).b1, reduced_basis(gens).b2
    radius2 = (sqrt(float(norm2(pb1))) + sqrt(float(norm2(pb2)))) ** 2 * K * K

    vecs = patch.tgt - patch.src
    mids = patch.src + patch.tgt
    centre = np.array([patch.N - 1, patch.N - 1])
    ref = int(np.argmin(((mids - centre) ** 2).sum(axis=1)))
    same = np.nonzero((vecs == vecs[ref]).all(axis=1))[0]
    T = patch.src[same] - patch.src[ref]
    T2 = (T ** 2).sum(axis=1)
    order = np.argsort(T2, kind="stable")
    segset = {tuple(r) for r in np.concatenate([patch.src, patch.tgt], axis=1).tolist()}
    current = reduced_basis(gens)
    for i in order:
        if T2[i] == 0 or T2[i] > radius2:
            continue
        tau = (Fraction(int(T[i, 0]), K), Fraction(int(T[i, 1]), K))
        if current.contains(tau):
            continue
        if _translation_preserves(patch, T[i], segset):
            gens.append(tau)
            current = reduced_basis(gens)
    basis = current
    bound = Fraction(patch.N, 3 * K)
    if any(abs(c) > bound for c in (*basis.b1, *basis.b2)):
        raise PatchTooSmallError(f"patch N={patch.N} too small for lattice {basis}")
    return basis


def tiling(poly: ZebraPolynomial, N: int | None = None) -> tuple[Patch, LatticeBasis]:
    """Extract segments and Aut lattice, growing the patch as needed."""
    K = denominator_bound(poly)
    if N is None:
        N = INITIAL_FACTOR * K
    while True:
        patch = extract_edges(poly, N)
        if len(patch) == 0:
            raise DegenerateError("tiling has no vertices (all boundary lines are parallel)")
        try:
            return patch, automorphism_lattice(poly, patch)
        except PatchTooSmallError:
            if N * 2 > MAX_FACTOR * K:
                raise
            N *= 2


@dataclass
class ConvexityReport:
    convex: bool
    unbounded_faces: list
    nonconvex_faces: list

    def __bool__(self):
        return self.convex


def check_convexity(faces_black, faces_white, omega) -> ConvexityReport:
    """Faces are cycles of edge indices; ``omega`` maps edge -> 2-vector.

    A face passes when its edge vectors sum to zero and consecutive cross
    products all have the strict sign of its orientation (clockwise for
    black faces, counter-clockwise for white ones).
    """
    unbounded, nonconvex = [], []
    for faces, sign, colour in ((faces_black, -1, "black"), (faces_white, 1, "white")):
        for face in faces:
            sx = sum(omega[e][0] for e in face)
            sy = sum(omega[e][1] for e in face)
            if sx != 0 or sy != 0:
                unbounded.append((colour, tuple(face)))
                continue
            crosses = [det2(omega[face[i]], omega[face[(i + 1) % len(face)]]) for i in range(len(face))]
            if any(c * sign <= 0 for c in crosses):
                nonconvex.append((colour, tuple(face)))
    total = len(faces_black) + len(faces_white)
    ok = total > 0 and not unbounded and not nonconvex
    return ConvexityReport(ok, unbounded, nonconvex)
