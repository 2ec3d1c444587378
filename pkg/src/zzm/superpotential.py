"""Finite superpotentials (E, sigma0, sigma1) and their realizations.

Edges are numbered ``0..n-1`` internally; text and JSON output uses
``1..n``.  ``sigma0`` walks white faces counter-clockwise and ``sigma1``
walks black faces clockwise, both mapping an edge to the next edge starting
at its target.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, cmp_to_key
from typing import Sequence

from . import perm
from .arrangement import Patch, check_convexity, tiling
from .errors import InvariantViolation, LatticeError, PreconditionError, ZZMError
from .intlinalg import common_denominator, det2, hnf
from .lattice import LatticeBasis
from .zebra import ZebraPolynomial, parse_polynomial


@dataclass(frozen=True, eq=False)
class Superpotential:
    sigma0: perm.Perm
    sigma1: perm.Perm
    labels: tuple[int, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "sigma0", tuple(self.sigma0))
        object.__setattr__(self, "sigma1", tuple(self.sigma1))
        if len(self.sigma0) != len(self.sigma1):
            raise PreconditionError("sigma0 and sigma1 act on sets of different size")
        if not (perm.is_permutation(self.sigma0) and perm.is_permutation(self.sigma1)):
            raise PreconditionError("sigma0 and sigma1 must be permutations")

    @classmethod
    def from_cycles(cls, sigma0_cycles, sigma1_cycles, one_based=True):
        off = 1 if one_based else 0
        c0 = [[x - off for x in c] for c in sigma0_cycles]
        c1 = [[x - off for x in c] for c in sigma1_cycles]
        n = sum(len(c) for c in c0)
        return cls(perm.from_cycles(c0, n), perm.from_cycles(c1, n))

    @property
    def n_edges(self) -> int:
        return len(self.sigma0)

    @cached_property
    def sigma2(self) -> perm.Perm:
        return perm.compose(perm.inverse(self.sigma1), self.sigma0)

    @cached_property
    def zigzag_perm(self) -> perm.Perm:
        # sigma1 first, then sigma0: the only order for which alpha_z is a cycle of the dual graph
        return perm.compose(self.sigma0, self.sigma1)

    @cached_property
    def white_faces(self):
        return perm.cycles(self.sigma0)

    @cached_property
    def black_faces(self):
        return perm.cycles(self.sigma1)

    @cached_property
    def vertices(self):
        return perm.cycles(self.sigma2)

    @cached_property
    def zigzags(self):
        return perm.cycles(self.zigzag_perm)

    @cached_property
    def target(self) -> tuple[int, ...]:
        """Index (into ``vertices``) of the target of each edge."""
        out = [0] * self.n_edges
        for i, cyc in enumerate(self.vertices):
            for e in cyc:
                out[e] = i
        return tuple(out)

    @cached_property
    def source(self) -> tuple[int, ...]:
        inv0 = perm.inverse(self.sigma0)
        return tuple(self.target[inv0[e]] for e in range(self.n_edges))

    @cached_property
    def white_of(self) -> tuple[int, ...]:
        return _face_index(self.white_faces, self.n_edges)

    @cached_property
    def black_of(self) -> tuple[int, ...]:
        return _face_index(self.black_faces, self.n_edges)

    def genus_counts(self) -> tuple[int, int, int, int]:
        return (len(self.white_faces), len(self.black_faces), len(self.vertices), self.n_edges)

    def genus_line(self) -> str:
        a, b, c, n = self.genus_counts()
        return f"{a}+{b}+{c}={n}"

    def relabel(self, phi: Sequence[int]) -> "Superpotential":
        """The same superpotential with edge ``e`` renamed ``phi[e]``."""
        return Superpotential(perm.conjugate(self.sigma0, phi), perm.conjugate(self.sigma1, phi))

    def __repr__(self):
        return (f"Superpotential(sigma0={perm.format_cycles(self.white_faces)}, "
                f"sigma1={perm.format_cycles(self.black_faces)})")


def _face_index(faces, n):
    out = [0] * n
    for i, cyc in enumerate(faces):
        for e in cyc:
            out[e] = i
    return tuple(out)


@dataclass(frozen=True, eq=False)
class Realization:
    """Edge vectors ``omega`` and the period lattice of the realized tiling."""

    omega: tuple[tuple[Fraction, Fraction], ...]
    lattice: LatticeBasis

    def __post_init__(self):
        object.__setattr__(self, "omega",
                           tuple((Fraction(x), Fraction(y)) for x, y in self.omega))


@dataclass(frozen=True, eq=False)
class Motive:
    """Superpotential built from a polynomial, with the geometry needed downstream."""

    poly: ZebraPolynomial | None
    superpotential: Superpotential
    realization: Realization
    aut: LatticeBasis | None = None
    lam: tuple[tuple[int, int], tuple[int, int]] = ((1, 0), (0, 1))
    # midpoint (Aut coordinates) of one original segment per edge
    anchors: tuple = ()
    # reduced Lambda-coordinates of every original segment midpoint -> edge
    segment_map: dict = field(default_factory=dict)

    @property
    def S(self) -> Superpotential:
        return self.superpotential

    @property
    def omega(self):
        return self.realization.omega


def genus_identity(S: Superpotential) -> bool:
    a, b, c, n = S.genus_counts()
    return a + b + c == n


def derived_cycles(S: Superpotential):
    """Vertex cycles of ``sigma1^-1 o sigma0`` and zigzags of ``sigma0 o sigma1``."""
    if not genus_identity(S):
        raise InvariantViolation("genus identity fails", {"counts": S.genus_counts()})
    return S.vertices, S.zigzags


def face_closure_failures(S: Superpotential, omega) -> list:
    bad = []
    for colour, faces in (("white", S.white_faces), ("black", S.black_faces)):
        for f in faces:
            if sum(omega[e][0] for e in f) != 0 or sum(omega[e][1] for e in f) != 0:
                bad.append((colour, f))
    return bad


def convexity(S: Superpotential, omega):
    return check_convexity(S.black_faces, S.white_faces, omega)


# -- construction from a tiling ------------------------------------------------

def _lambda_inverse(lam):
    (a, b), (c, d) = lam
    det = a * d - b * c
    if det == 0:
        raise LatticeError("Lambda has zero determinant")
    return ((Fraction(d, det), Fraction(-b, det)), (Fraction(-c, det), Fraction(a, det))), det


def _frac(x: Fraction) -> Fraction:
    return x - (x.numerator // x.denominator)


class _Reducer:
    """Reduction of Aut coordinates modulo Lambda (rows of ``lam`` in the Aut basis)."""

    def __init__(self, lam):
        self.lam = tuple(tuple(int(x) for x in r) for r in lam)
        self.inv, self.det = _lambda_inverse(self.lam)

    def key(self, p) -> tuple[Fraction, Fraction]:
        (a, b), (c, d) = self.inv
        return (_frac(p[0] * a + p[1] * c), _frac(p[0] * b + p[1] * d))

    def cosets(self) -> list[tuple[int, int]]:
        """Representatives of Z^2 / Lambda."""
        H = hnf([list(r) for r in self.lam])
        (p, q), (_, r) = H
        return [(i, j) for i in range(p) for j in range(r)]


def _angle_order(incoming, outgoing):
    """Sort outgoing vectors by counter-clockwise angle measured from ``-incoming``."""
    u = (-incoming[0], -incoming[1])

    def half(w):
        c = det2(u, w)
        if c > 0 or (c == 0 and u[0] * w[0] + u[1] * w[1] > 0):
            return 0
        return 1

    def cmp(a, b):
        ha, hb = half(a[1]), half(b[1])
        if ha != hb:
            return ha - hb
        c = det2(a[1], b[1])
        return -1 if c > 0 else (1 if c < 0 else 0)

    return [e for e, _ in sorted(outgoing, key=cmp_to_key(cmp))]


def build_superpotential(poly: ZebraPolynomial, patch: Patch, aut: LatticeBasis,
                         lam=((1, 0), (0, 1))) -> Motive:
    """Reduce the segments of ``patch`` modulo ``lam`` (integer rows in the Aut basis)."""
    red = _Reducer(lam)
    # one representative segment per Aut class, in scan order
    seen = {}
    reps = []
    aut_red = _Reducer(((1, 0), (0, 1)))
    for seg in patch.segments:
        m = aut.coordinates(seg.midpoint)
        k = aut_red.key(m)
        if k not in seen:
            seen[k] = len(reps)
            reps.append((m, aut.coordinates(seg.source), aut.coordinates(seg.target), seg.vector))

    # translate by coset representatives of Aut / Lambda
    edges = []  # (mid key, src key, tgt key, vec, anchor)
    for (ci, cj) in red.cosets():
        for m, s, t, v in reps:
            mm = (m[0] + ci, m[1] + cj)
            edges.append([red.key(mm), red.key((s[0] + ci, s[1] + cj)),
                          red.key((t[0] + ci, t[1] + cj)), v, mm])
    n = len(edges)
    out_at: dict = {}
    for i, (_, s, _, v, _) in enumerate(edges):
        out_at.setdefault(s, []).append((i, v))
    sigma0 = [0] * n
    sigma1 = [0] * n
    for i, (_, _, t, v, _) in enumerate(edges):
        succ = out_at.get(t)
        if not succ:
            raise InvariantViolation("edge target has no outgoing edge", {"edge": i})
        order = _angle_order(v, succ)
        sigma1[i] = order[0]
        sigma0[i] = order[-1]

    # fuse edges through vertices with a single outgoing edge
    alive = list(range(n))
    members = {i: [i] for i in range(n)}
    vecs = {i: edges[i][3] for i in range(n)}
    while True:
        e = next((x for x in alive if sigma0[x] == sigma1[x]), None)
        if e is None:
            break
        f = sigma0[e]
        if f == e:
            raise InvariantViolation("edge closes on itself through a valence-2 vertex", {"edge": e})
        # e* reuses the slot of e
        new0, new1 = sigma0[f], sigma1[f]
        for x in alive:
            if sigma0[x] == f:
                sigma0[x] = e
            if sigma1[x] == f:
                sigma1[x] = e
        sigma0[e], sigma1[e] = new0, new1
        vecs[e] = (vecs[e][0] + vecs[f][0], vecs[e][1] + vecs[f][1])
        members[e] = members[e] + members.pop(f)
        alive.remove(f)

    index = {old: new for new, old in enumerate(alive)}
    s0 = tuple(index[sigma0[x]] for x in alive)
    s1 = tuple(index[sigma1[x]] for x in alive)
    D = common_denominator([c for x in alive for c in edges[x][0]])
    labels = tuple(int(edges[x][0][0] * D) + D * int(edges[x][0][1] * D) for x in alive)
    S = Superpotential(s0, s1, labels)
    omega = tuple(vecs[x] for x in alive)
    lam_basis = aut.sublattice(red.lam)
    segment_map = {}
    for x in alive:
        for y in members[x]:
            segment_map[edges[y][0]] = index[x]
    anchors = tuple(edges[x][4] for x in alive)
    motive = Motive(poly, S, Realization(omega, lam_basis), aut, red.lam, anchors, segment_map)
    _check_built(motive)
    return motive


def _check_built(motive: Motive):
    S, omega = motive.superpotential, motive.omega
    if any(S.sigma0[e] == S.sigma1[e] for e in range(S.n_edges)):
        raise InvariantViolation("fusion left a valence-2 vertex")
    bad = face_closure_failures(S, omega)
    if bad:
        raise InvariantViolation("faces do not close", {"faces": [[c, list(f)] for c, f in bad]})


def motive_from_polynomial(text_or_poly, lam=((1, 0), (0, 1)), N: int | None = None) -> Motive:
    poly = parse_polynomial(text_or_poly) if isinstance(text_or_poly, str) else text_or_poly
    patch, aut = tiling(poly, N)
    return build_superpotential(poly, patch, aut, lam)


def deck_action(motive: Motive, tau) -> perm.Perm:
    """Permutation of edges induced by translating by ``tau`` (integer Aut coordinates)."""
    if motive.aut is None:
        raise PreconditionError("motive carries no Aut lattice")
    t = tuple(Fraction(x) for x in tau)
    if any(x.denominator != 1 for x in t):
        raise LatticeError(f"{tau} is not in Aut (coordinates must be integers)")
    red = _Reducer(motive.lam)
    out = []
    for a in motive.anchors:
        k = red.key((a[0] + t[0], a[1] + t[1]))
        out.append(motive.segment_map[k])
    if not perm.is_permutation(out):
        raise InvariantViolation("translation does not permute the edges")
    return tuple(out)


# -- isomorphism -------------------------------------------------------------------

def _components(S: Superpotential) -> list[list[int]]:
    n = S.n_edges
    seen = [False] * n
    comps = []
    for start in range(n):
        if seen[start]:
            continue
        comp, stack = [], [start]
        seen[start] = True
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in (S.sigma0[x], S.sigma1[x]):
                if not seen[y]:
                    seen[y] = True
                    stack.append(y)
        comps.append(sorted(comp))
    return comps


def _propagate(S, T, start, image, phi, used):
    """Extend ``phi`` from ``start -> image`` along sigma0/sigma1; None on conflict."""
    trial = {start: image}
    stack = [start]
    while stack:
        x = stack.pop()
        fx = trial[x]
        for s, t in ((S.sigma0, T.sigma0), (S.sigma1, T.sigma1)):
            y, fy = s[x], t[fx]
            if y in trial:
                if trial[y] != fy:
                    return None
            else:
                if fy in used:
                    return None
                trial[y] = fy
                stack.append(y)
    if len(set(trial.values())) != len(trial):
        return None
    return trial


def isomorphic(S: Superpotential, T: Superpotential) -> tuple[int, ...] | None:
    """A bijection ``phi`` with ``phi sigma_i = sigma_i' phi``, or None."""
    if S.n_edges != T.n_edges:
        return None
    if sorted(map(len, S.white_faces)) != sorted(map(len, T.white_faces)):
        return None
    if sorted(map(len, S.black_faces)) != sorted(map(len, T.black_faces)):
        return None
    comps = _components(S)
    phi: dict[int, int] = {}

    def solve(k, used):
        if k == len(comps):
            return True
        start = comps[k][0]
        for image in range(T.n_edges):
            if image in used:
                continue
            trial = _propagate(S, T, start, image, phi, used)
            if trial is None:
                continue
            phi.update(trial)
            if solve(k + 1, used | set(trial.values())):
                return True
            for x in trial:
                del phi[x]
        return False

    if not solve(0, frozenset()):
        return None
    return tuple(phi[e] for e in range(S.n_edges))


# -- motive JSON ---------------------------------------------------------------------

def _q(x: Fraction):
    x = Fraction(x)
    return [x.numerator, x.denominator]


def _unq(p) -> Fraction:
    if isinstance(p, list):
        return Fraction(p[0], p[1])
    return Fraction(p)


def motive_to_json(motive: Motive) -> dict:
    S = motive.superpotential
    doc = {
        "edges": [
            {"id": e + 1, "s": S.source[e] + 1, "t": S.target[e] + 1,
             "vec": [_q(c) for c in motive.omega[e]]}
            for e in range(S.n_edges)
        ],
        "sigma0": [[e + 1 for e in c] for c in S.white_faces],
        "sigma1": [[e + 1 for e in c] for c in S.black_faces],
        "lattice": [[_q(c) for c in b] for b in (motive.realization.lattice.b1,
                                                 motive.realization.lattice.b2)],
    }
    if motive.poly is not None:
        doc["polynomial"] = str(motive.poly)
    if motive.aut is not None:
        doc["aut"] = [[_q(c) for c in b] for b in (motive.aut.b1, motive.aut.b2)]
        doc["lambda"] = [list(r) for r in motive.lam]
    return doc


def motive_from_json(doc) -> Motive:
    """Rebuild a motive from the JSON produced by :func:`motive_to_json`."""
    if isinstance(doc, str):
        doc = json.loads(doc)
    try:
        S = Superpotential.from_cycles(doc["sigma0"], doc["sigma1"])
        ids = [e["id"] for e in doc["edges"]]
        if sorted(ids) != list(range(1, S.n_edges + 1)):
            raise PreconditionError("edge ids must be 1..n")
        omega = [None] * S.n_edges
        for e in doc["edges"]:
            omega[e["id"] - 1] = tuple(_unq(c) for c in e["vec"])
        lat = LatticeBasis(*[tuple(_unq(c) for c in b) for b in doc["lattice"]])
        aut = None
        if "aut" in doc:
            aut = LatticeBasis(*[tuple(_unq(c) for c in b) for b in doc["aut"]])
        lam = tuple(tuple(r) for r in doc.get("lambda", ((1, 0), (0, 1))))
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        if isinstance(exc, ZZMError):
            raise
        raise PreconditionError(f"malformed motive JSON: {exc}") from exc
    poly = parse_polynomial(doc["polynomial"]) if "polynomial" in doc else None
    motive = Motive(poly, S, Realization(tuple(omega), lat), aut, lam)
    bad = face_closure_failures(S, motive.omega)
    if bad:
        raise InvariantViolation("faces do not close", {"faces": [[c, [e + 1 for e in f]] for c, f in bad]})
    return motive
