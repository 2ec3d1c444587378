"""Weight realizations, quadrangles, the realized lattice and the Newton embedding.

A weight realization ``(nu1, nu2, nu3)`` gives edge vectors
``omega = (nu1 - nu3, nu2 - nu3)`` and marking weights ``theta = nu3 / deg nu3``.
Every edge ``e`` then spans a quadrangle with corners ``s, b, t, w``: the
endpoints of the edge and the marked points of its black and white face.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import numpy as np

from .errors import InvariantViolation, LatticeError, PreconditionError
from .homology import as_fractions, rho_matrices
from .intlinalg import common_denominator, det2, rank_q, solve_left_q
from .lattice import LatticeBasis
from .matchings import (
    WeightFunction,
    enumerate_matchings,
    equivalence_classes,
    is_dimer_complete,
    vertex_vectors,
    weight_function,
)
from .superpotential import Superpotential, convexity, face_closure_failures

log = logging.getLogger(__name__)

Point = tuple[Fraction, Fraction]


@dataclass(frozen=True)
class WeightRealization:
    nu1: WeightFunction
    nu2: WeightFunction
    nu3: WeightFunction

    @classmethod
    def from_values(cls, S: Superpotential, nu1, nu2, nu3) -> "WeightRealization":
        return cls(weight_function(S, nu1), weight_function(S, nu2), weight_function(S, nu3))

    @property
    def n_edges(self) -> int:
        return len(self.nu3)

    @cached_property
    def omega(self) -> tuple[tuple[int, int], ...]:
        return tuple((a - c, b - c) for a, b, c in zip(self.nu1.values, self.nu2.values, self.nu3.values))

    @cached_property
    def theta(self) -> tuple[Fraction, ...]:
        if self.nu3.degree == 0:
            raise PreconditionError("nu3 has degree 0")
        return tuple(Fraction(v, self.nu3.degree) for v in self.nu3.values)

    def relabel(self, phi) -> "WeightRealization":
        """Transport along an edge bijection ``phi`` (edge e goes to ``phi[e]``)."""
        def move(nu):
            out = [0] * len(nu)
            for e, v in enumerate(nu.values):
                out[phi[e]] = v
            return WeightFunction(tuple(out), nu.degree)

        return WeightRealization(move(self.nu1), move(self.nu2), move(self.nu3))

    def to_json(self) -> dict:
        return {"nu1": list(self.nu1.values), "nu2": list(self.nu2.values), "nu3": list(self.nu3.values)}


def _sub(p, q):
    return (p[0] - q[0], p[1] - q[1])


@dataclass(frozen=True)
class Quadrangle:
    edge: int
    sb: Point
    sw: Point
    st: Point

    @property
    def qt(self) -> Point:
        return (self.st[0] / 2, self.st[1] / 2)

    @property
    def qb(self) -> Point:
        return _sub(self.sb, self.qt)

    @property
    def qw(self) -> Point:
        return _sub(self.sw, self.qt)

    @property
    def corners(self) -> tuple[Point, Point, Point, Point]:
        """``s, b, t, w`` relative to ``s``; counter-clockwise when convex."""
        zero = (Fraction(0), Fraction(0))
        return (zero, self.sb, self.st, self.sw)

    @property
    def area(self) -> Fraction:
        return (det2(self.sb, self.st) + det2(self.st, self.sw)) / 2

    def is_strictly_convex(self) -> bool:
        c = self.corners
        for i in range(4):
            a, b, d = c[i], c[(i + 1) % 4], c[(i + 2) % 4]
            if det2(_sub(b, a), _sub(d, b)) <= 0:
                return False
        return True

    def to_json(self) -> dict:
        def q(p):
            return [[x.numerator, x.denominator] for x in p]

        return {"e": self.edge + 1, "sb": q(self.sb), "sw": q(self.sw), "st": q(self.st)}


# -- marked points -------------------------------------------------------------------

def barycentric_theta(faces, n: int) -> tuple[Fraction, ...]:
    """``theta(e) = 1 / len(face of e)`` for one colour of faces."""
    out = [Fraction(0)] * n
    for f in faces:
        for e in f:
            out[e] = Fraction(1, len(f))
    return tuple(out)


def _face_offsets(faces, omega, theta, n) -> list[Point]:
    """For each edge, the vector from its source to the theta-marked point of its face."""
    out: list[Point | None] = [None] * n
    for f in faces:
        starts = []
        x = y = Fraction(0)
        for e in f:
            starts.append((x, y))
            x += omega[e][0]
            y += omega[e][1]
        mx = sum(Fraction(theta[e]) * (p[0] + Fraction(omega[e][0]) / 2) for e, p in zip(f, starts))
        my = sum(Fraction(theta[e]) * (p[1] + Fraction(omega[e][1]) / 2) for e, p in zip(f, starts))
        for e, p in zip(f, starts):
            out[e] = (mx - p[0], my - p[1])
    return out


def face_walk_quadrangles(S: Superpotential, omega, theta_black, theta_white=None) -> list[Quadrangle]:
    """Quadrangles from marked points computed by walking each face.

    Black and white faces may use different marking weights; this is what
    the barycentric fallback needs when there is no fractional matching.
    """
    if theta_white is None:
        theta_white = theta_black
    n = S.n_edges
    sb = _face_offsets(S.black_faces, omega, theta_black, n)
    sw = _face_offsets(S.white_faces, omega, theta_white, n)
    return [Quadrangle(e, sb[e], sw[e], (Fraction(omega[e][0]), Fraction(omega[e][1])))
            for e in range(n)]


def barycentric_quadrangles(S: Superpotential, omega) -> list[Quadrangle]:
    n = S.n_edges
    return face_walk_quadrangles(S, omega, barycentric_theta(S.black_faces, n),
                                 barycentric_theta(S.white_faces, n))


def _offset_matrix(S: Superpotential, faces_of, rho, theta) -> np.ndarray:
    """``B`` (or ``W``): row e is ``theta^t diag(beta_face(e)) (-I/2 + rho)``."""
    n = S.n_edges
    half = np.eye(n, dtype=object) * Fraction(-1, 2) + rho.astype(object)
    th = as_fractions(theta)
    rows = {}
    out = np.zeros((n, n), dtype=object)
    for e in range(n):
        face = faces_of[e]
        if face not in rows:
            beta = np.array([Fraction(int(faces_of[x] == face)) for x in range(n)], dtype=object)
            rows[face] = (th * beta) @ half
        out[e] = rows[face]
    return out


def _matrix_quadrangles(S: Superpotential, omega, theta, m: WeightFunction) -> list[Quadrangle]:
    pair = rho_matrices(S, m)
    n = S.n_edges
    I = np.eye(n, dtype=object)
    W = np.array([[Fraction(x), Fraction(y)] for x, y in omega], dtype=object)
    B = _offset_matrix(S, S.black_of, pair.rho1, theta)
    Wm = _offset_matrix(S, S.white_of, pair.rho0, theta)
    sb = (B + I - pair.rho1.astype(object)) @ W
    sw = (Wm + I - pair.rho0.astype(object)) @ W
    return [Quadrangle(e, (sb[e, 0], sb[e, 1]), (sw[e, 0], sw[e, 1]), (W[e, 0], W[e, 1]))
            for e in range(n)]


def quadrangles(S: Superpotential, wr: WeightRealization, m: WeightFunction | None = None,
                check_all: bool = False) -> list[Quadrangle]:
    """Quadrangles from the matrix formulas with auxiliary matching ``m``.

    The result does not depend on ``m``; this is asserted against the
    face-walk construction, and against every matching when ``check_all``.
    """
    matchings = enumerate_matchings(S) if (m is None or check_all) else [m]
    if not matchings:
        raise PreconditionError("no perfect matchings: use barycentric_quadrangles")
    if m is None:
        m = matchings[0]
    quads = _matrix_quadrangles(S, wr.omega, wr.theta, m)
    reference = face_walk_quadrangles(S, wr.omega, wr.theta)
    if quads != reference:
        raise InvariantViolation("matrix quadrangles disagree with the face walk")
    if check_all:
        for other in matchings:
            if _matrix_quadrangles(S, wr.omega, wr.theta, other) != quads:
                raise InvariantViolation("quadrangles depend on the auxiliary matching",
                                         {"matching": list(other.values)})
    return quads


def marked_point_consistent(S: Superpotential, quads: list[Quadrangle], omega) -> bool:
    """Offsets from every edge of a face point at one common marked point."""
    for faces, attr in ((S.black_faces, "sb"), (S.white_faces, "sw")):
        for f in faces:
            x = y = Fraction(0)
            points = set()
            for e in f:
                off = getattr(quads[e], attr)
                points.add((x + off[0], y + off[1]))
                x += omega[e][0]
                y += omega[e][1]
            if len(points) != 1:
                return False
    return True


def vertex_positions(S: Superpotential, omega) -> list[Point]:
    """A lift ``z_v`` of every vertex, with ``z_v0 = 0`` and ``z_t(e) = z_s(e) + omega(e)`` along a spanning tree."""
    nv = len(S.vertices)
    pos: list[Point | None] = [None] * nv
    pos[0] = (Fraction(0), Fraction(0))
    stack = [0]
    out_edges: dict[int, list] = {}
    for e in range(S.n_edges):
        out_edges.setdefault(S.source[e], []).append((e, S.target[e], 1))
        out_edges.setdefault(S.target[e], []).append((e, S.source[e], -1))
    while stack:
        v = stack.pop()
        for e, w, sign in out_edges.get(v, ()):
            if pos[w] is None:
                pos[w] = (pos[v][0] + sign * Fraction(omega[e][0]), pos[v][1] + sign * Fraction(omega[e][1]))
                stack.append(w)
    if any(p is None for p in pos):
        raise InvariantViolation("quiver is not connected")
    return pos


# -- validation ----------------------------------------------------------------------

@dataclass
class ValidationReport:
    ok: bool
    failures: dict = field(default_factory=dict)

    def __bool__(self):
        return self.ok


def validate_weight_realization(S: Superpotential, wr: WeightRealization) -> ValidationReport:
    """Positivity, cycle sums, face closure and strict convexity of faces and quadrangles."""
    failures: dict[str, list] = {}
    if wr.n_edges != S.n_edges:
        return ValidationReport(False, {"size": [wr.n_edges, S.n_edges]})
    for name in ("nu1", "nu2", "nu3"):
        nu = getattr(wr, name)
        bad = [e + 1 for e, v in enumerate(nu.values) if v <= 0]
        if bad:
            failures.setdefault("positivity", []).append({name: bad})
        sums = {sum(nu[e] for e in f) for f in S.white_faces + S.black_faces}
        if sums != {nu.degree}:
            failures.setdefault("cycle_sums", []).append(name)
    if failures.get("cycle_sums") or wr.nu3.degree <= 0:
        return ValidationReport(False, failures)
    omega = wr.omega
    closure = face_closure_failures(S, omega)
    if closure:
        # happens exactly when the degrees of nu1, nu2, nu3 differ
        failures["face_closure"] = [[c, [e + 1 for e in f]] for c, f in closure]
        return ValidationReport(False, failures)
    report = convexity(S, omega)
    if not report:
        failures["face_convexity"] = [[c, [e + 1 for e in f]] for c, f in report.nonconvex_faces]
    if "positivity" not in failures:
        quads = face_walk_quadrangles(S, omega, wr.theta)
        bad = [q.edge + 1 for q in quads if not q.is_strictly_convex()]
        if bad:
            failures["quadrangle_convexity"] = bad
    return ValidationReport(not failures, failures)


# -- lattice of the realization ---------------------------------------------------------

def _omega_matrix(S: Superpotential, omega) -> list[list[Fraction]]:
    alphas = vertex_vectors(S)[1:]
    return [[Fraction(omega[e][0]), Fraction(omega[e][1])] + [Fraction(a[e]) for a in alphas]
            for e in range(S.n_edges)]


def realization_lattice(S: Superpotential, omega_F, lattice_F: LatticeBasis, omega) -> LatticeBasis:
    """The period lattice of ``omega`` given that of a reference realization ``omega_F``.

    Solves ``Omega_omega = Omega_F G`` with ``Omega = [omega | alpha_v (v != v0)]``
    and maps ``[lambda_j | 0]`` through ``G``.
    """
    OF = _omega_matrix(S, omega_F)
    Ow = _omega_matrix(S, omega)
    k = len(OF[0])
    if rank_q(OF) != k or rank_q(Ow) != k:
        raise LatticeError("realization matrix is rank deficient")
    G = solve_left_q(OF, Ow)
    if G is None:
        raise LatticeError("realizations are not related by a linear change")
    out = []
    for lam in (lattice_F.b1, lattice_F.b2):
        row = [lam[0], lam[1]] + [Fraction(0)] * (k - 2)
        img = [sum(row[i] * G[i][j] for i in range(k)) for j in range(k)]
        if any(img[2:]):
            raise InvariantViolation("lattice vector does not map to a closed path")
        out.append((img[0], img[1]))
    return LatticeBasis(*out)


# -- Newton embedding --------------------------------------------------------------------

@dataclass(frozen=True)
class NewtonPoint:
    point: Point
    fiber: int
    members: tuple[int, ...]

    def to_json(self) -> dict:
        return {"point": [[c.numerator, c.denominator] for c in self.point], "fiber": self.fiber,
                "matchings": [i + 1 for i in self.members]}


def _newton_map(S: Superpotential, omega, m: WeightFunction) -> np.ndarray:
    """``(rho0 - rho1) omega`` as an exact |E| x 2 array."""
    pair = rho_matrices(S, m)
    W = np.array([[Fraction(x), Fraction(y)] for x, y in omega], dtype=object)
    return (pair.rho0 - pair.rho1).astype(object) @ W


def newton_point(S: Superpotential, omega, theta, mp: WeightFunction, m: WeightFunction) -> Point:
    """``(theta - m')^t (rho0 - rho1) omega``."""
    return _apply_newton(_newton_map(S, omega, m), theta, mp)


def _apply_newton(R, theta, mp) -> Point:
    diff = as_fractions([Fraction(t) - v for t, v in zip(theta, mp.values)])
    p = diff @ R
    return (Fraction(p[0]), Fraction(p[1]))


def newton_embedding(S: Superpotential, wr: WeightRealization, matchings=None,
                     m: WeightFunction | None = None) -> list[NewtonPoint]:
    """Class points of the matchings; constancy on classes and injectivity are asserted."""
    if matchings is None:
        matchings = enumerate_matchings(S)
    if not matchings:
        raise PreconditionError("no perfect matchings")
    if m is None:
        m = matchings[0]
    R = _newton_map(S, wr.omega, m)
    points = [_apply_newton(R, wr.theta, mp) for mp in matchings]
    out = []
    for cls in equivalence_classes(S, matchings):
        vals = {points[i] for i in cls}
        if len(vals) != 1:
            raise InvariantViolation("Newton embedding not constant on a class",
                                     {"class": [i + 1 for i in cls]})
        out.append(NewtonPoint(vals.pop(), len(cls), tuple(cls)))
    if len({p.point for p in out}) != len(out):
        raise InvariantViolation("Newton embedding is not injective on classes")
    return out


def affine_dimension(points) -> int:
    pts = [tuple(p) for p in points]
    if not pts:
        return -1
    base = pts[0]
    return rank_q([[p[0] - base[0], p[1] - base[1]] for p in pts[1:]]) if len(pts) > 1 else 0


def convex_hull(points) -> list[Point]:
    """Counter-clockwise hull vertices (monotone chain, exact)."""
    pts = sorted(set(tuple(p) for p in points))
    if len(pts) <= 2:
        return pts

    def half(seq):
        h = []
        for p in seq:
            while len(h) >= 2 and det2(_sub(h[-1], h[-2]), _sub(p, h[-1])) <= 0:
                h.pop()
            h.append(p)
        return h

    lower, upper = half(pts), half(reversed(pts))
    return lower[:-1] + upper[:-1]


# -- deformation and search -----------------------------------------------------------------

MAX_DOUBLINGS = 16


def deform(S: Superpotential, wr: WeightRealization, nu_prime, N: int = 1):
    """``(N nu_j + nu'_j - nu''_j)_j``, doubling ``N`` until the result is valid.

    ``nu_prime`` is a sequence of three pairs ``(nu'_j, nu''_j)`` of weight
    functions with equal degrees.  Returns ``(realization, N used)``.
    """
    pairs = list(nu_prime)
    if len(pairs) != 3:
        raise PreconditionError("need three pairs (nu', nu'')")
    for a, b in pairs:
        if a.degree != b.degree:
            raise PreconditionError("deg nu' must equal deg nu''")
    if N < 1:
        raise PreconditionError("N must be positive")
    start = N
    for _ in range(MAX_DOUBLINGS + 1):
        vals = []
        for nu, (a, b) in zip((wr.nu1, wr.nu2, wr.nu3), pairs):
            vals.append([N * x + y - z for x, y, z in zip(nu.values, a.values, b.values)])
        if all(v > 0 for vs in vals for v in vs):
            cand = WeightRealization.from_values(S, *vals)
            if validate_weight_realization(S, cand):
                return cand, N
        N *= 2
    raise PreconditionError(f"no valid deformation with N <= {start * 2 ** MAX_DOUBLINGS}")


def _from_omega(S, omega, nu, max_scale=64):
    """Try ``(omega_x + N nu, omega_y + N nu, N nu)`` for growing N."""
    N = 1
    while N <= max_scale:
        v3 = [N * x for x in nu.values]
        v1 = [o[0] + x for o, x in zip(omega, v3)]
        v2 = [o[1] + x for o, x in zip(omega, v3)]
        if min(v1) > 0 and min(v2) > 0:
            cand = WeightRealization.from_values(S, v1, v2, v3)
            if validate_weight_realization(S, cand):
                return cand
        N *= 2
    return None


def integer_omega(omega) -> list[tuple[int, int]]:
    """Clear denominators of a rational realization."""
    D = common_denominator([c for v in omega for c in v])
    return [(int(v[0] * D), int(v[1] * D)) for v in omega]


def search_weight_realization(S: Superpotential, matchings=None, omega_hint=None,
                              max_coeff: int = 4, limit: int = 200_000):
    """Heuristic search for a weight realization; None if nothing is found.

    With ``omega_hint`` (typically the zebra realization) the construction
    ``nu_3 = N sum(matchings)``, ``nu_{1,2} = omega + nu_3`` is tried first.
    Otherwise, or if that fails, combinations ``sum c_m m`` with
    ``c_m in 0..max_coeff`` are tried in lexicographic order, at most
    ``limit`` triples.
    """
    if matchings is None:
        matchings = enumerate_matchings(S)
    complete, _ = is_dimer_complete(S, matchings)
    if not complete:
        raise PreconditionError("superpotential is not dimer complete")
    total = matchings[0]
    for mm in matchings[1:]:
        total = total + mm
    if omega_hint is not None:
        found = _from_omega(S, integer_omega(omega_hint), total)
        if found is not None:
            return found

    def combo(cs):
        vals = [sum(c * mm[e] for c, mm in zip(cs, matchings)) for e in range(S.n_edges)]
        return vals, sum(cs)

    positive = []
    for cs in itertools.islice(itertools.product(range(max_coeff + 1), repeat=len(matchings)), limit):
        vals, deg = combo(cs)
        if min(vals) > 0:
            positive.append((vals, deg))
        if len(positive) > 2000:
            break
    tries = 0
    for (v1, d1), (v2, d2), (v3, d3) in itertools.product(positive, repeat=3):
        if not d1 == d2 == d3:
            continue
        tries += 1
        if tries > limit:
            break
        cand = WeightRealization(WeightFunction(tuple(v1), d1), WeightFunction(tuple(v2), d2),
                                 WeightFunction(tuple(v3), d3))
        if validate_weight_realization(S, cand):
            return cand
    log.info("no weight realization found after %d candidates", tries)
    return None


__all__ = [
    "WeightRealization", "Quadrangle", "ValidationReport", "NewtonPoint",
    "validate_weight_realization", "quadrangles", "vertex_positions", "face_walk_quadrangles",
    "barycentric_quadrangles", "barycentric_theta", "marked_point_consistent",
    "realization_lattice", "newton_point", "newton_embedding", "affine_dimension",
    "convex_hull", "deform", "search_weight_realization", "integer_omega",
]
