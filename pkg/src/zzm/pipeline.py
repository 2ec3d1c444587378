"""Glue used by the command line and the demos: load inputs, find weights, run checks."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass

from .errors import PreconditionError, ZZMError
from .homology import h1_ranks, kernel_checks
from .jacobi import check_jacobi_relations
from .matchings import enumerate_matchings, is_dimer_complete
from .realization import (
    WeightRealization,
    affine_dimension,
    newton_embedding,
    quadrangles,
    realization_lattice,
    search_weight_realization,
    validate_weight_realization,
)
from .superpotential import (
    Motive,
    convexity,
    face_closure_failures,
    genus_identity,
    isomorphic,
    motive_from_json,
    motive_from_polynomial,
    motive_to_json,
)


#: auxiliary matchings used by run_checks (all of them for small inputs)
MAX_AUXILIARY = 32


def parse_lambda(text: str | None):
    """``"a,b;c,d"`` (rows in the Aut basis) or None for the identity."""
    if not text:
        return ((1, 0), (0, 1))
    try:
        rows = [tuple(int(x) for x in r.split(",")) for r in text.split(";")]
    except ValueError as exc:
        raise PreconditionError(f"cannot parse lattice {text!r}: expected 'a,b;c,d'") from exc
    if len(rows) != 2 or any(len(r) != 2 for r in rows):
        raise PreconditionError(f"cannot parse lattice {text!r}: expected 'a,b;c,d'")
    return tuple(rows)


def load_motive(source: str, lam=((1, 0), (0, 1))) -> Motive:
    """A polynomial string, or the path of a motive JSON file."""
    if source.endswith(".json") or os.path.isfile(source):
        try:
            with open(source) as fh:
                doc = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise PreconditionError(f"cannot read motive JSON {source!r}: {exc}") from exc
        return motive_from_json(doc)
    return motive_from_polynomial(source, lam)


def load_weights(motive: Motive, path: str) -> WeightRealization:
    try:
        with open(path) as fh:
            doc = json.load(fh)
        values = [doc["nu1"], doc["nu2"], doc["nu3"]]
    except (OSError, json.JSONDecodeError, KeyError, TypeError) as exc:
        raise PreconditionError(f"cannot read weights {path!r}: {exc}") from exc
    return WeightRealization.from_values(motive.S, *values)


def weights_for(motive: Motive, path: str | None = None, search: bool = False) -> WeightRealization:
    if path:
        wr = load_weights(motive, path)
    elif search:
        wr = search_weight_realization(motive.S, omega_hint=motive.omega)
        if wr is None:
            raise PreconditionError("weight search found nothing; pass --weights")
    else:
        raise PreconditionError("a weight realization is required: pass --weights FILE or --search")
    report = validate_weight_realization(motive.S, wr)
    if not report:
        raise PreconditionError(f"invalid weight realization: {report.failures}")
    return wr


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str = ""


def run_checks(motive: Motive) -> list[CheckResult]:
    """Every invariant that applies to the input; skips what needs dimer completeness."""
    S = motive.S
    out = [CheckResult("genus identity", genus_identity(S), S.genus_line())]
    out.append(CheckResult("face closure", not face_closure_failures(S, motive.omega)))
    conv = convexity(S, motive.omega)
    out.append(CheckResult("faces strictly convex", bool(conv),
                           "" if conv else f"{len(conv.nonconvex_faces)} non-convex"))
    try:
        r = h1_ranks(S)
        out.append(CheckResult("H1 ranks", True, f"{r[0]} {r[1]}"))
    except ZZMError as exc:
        out.append(CheckResult("H1 ranks", False, str(exc)))
    back = motive_from_json(json.loads(json.dumps(motive_to_json(motive))))
    out.append(CheckResult("JSON round trip", isomorphic(S, back.S) is not None))
    matchings = enumerate_matchings(S)
    complete, _ = is_dimer_complete(S, matchings)
    out.append(CheckResult("dimer complete", True, f"{len(matchings)} matchings, complete={complete}"))
    if not complete:
        return out
    k = kernel_checks(S, matchings, range(min(len(matchings), MAX_AUXILIARY)))
    out.append(CheckResult("kernel identities", k.ok, "" if k.ok else str(k.failures[:3])))
    wr = search_weight_realization(S, matchings, omega_hint=motive.omega)
    if wr is None:
        out.append(CheckResult("weight realization", True, "none found (heuristic search)"))
        return out
    out.append(CheckResult("weight realization", bool(validate_weight_realization(S, wr))))
    j = check_jacobi_relations(S, wr)
    out.append(CheckResult("Jacobi relations", j.ok, "" if j.ok else str(j.failures[:3])))
    quads = quadrangles(S, wr, check_all=len(matchings) <= MAX_AUXILIARY)
    area = sum(q.area for q in quads)
    lat = realization_lattice(S, motive.omega, motive.realization.lattice, wr.omega)
    out.append(CheckResult("quadrangle area", area == lat.covolume, f"{area}"))
    pts = newton_embedding(S, wr, matchings)
    dim = affine_dimension([p.point for p in pts])
    out.append(CheckResult("Newton polygon dimension", dim == 2, f"{len(pts)} class points"))
    return out
