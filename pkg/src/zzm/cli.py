"""Command line interface: ``zzm VERB INPUT [options]``.

INPUT is a zebra polynomial such as ``"z21+z41"`` or the path of a motive
JSON file written by ``zzm potential``.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction

from . import __version__
from .errors import InvariantViolation, ZZMError
from .homology import FORM_KINDS, h1_ranks, kernel_checks, poisson_forms, rho_matrices
from .jacobi import astar_matrix, check_jacobi_relations, master_binomials, potential_polynomial
from .matchings import (
    enumerate_matchings,
    equivalence_classes,
    is_dimer_complete,
    matching_edges,
    relation_lattice,
    weight_rank,
)
from .pipeline import load_motive, parse_lambda, run_checks, weights_for
from .realization import barycentric_quadrangles, newton_embedding, quadrangles, realization_lattice
from .render import PLAIN_FRAME, QuadrangleTiling, Scene, Style, render
from .superpotential import motive_to_json
from . import perm

VERBS = ("draw", "potential", "matchings", "newton", "quad", "jacobi", "forms", "check")
FORMATS = {
    "draw": ("svg",),
    "potential": ("json", "text"),
    "matchings": ("json", "text"),
    "newton": ("json", "svg"),
    "quad": ("json", "svg"),
    "jacobi": ("text", "json"),
    "forms": ("json", "text"),
    "check": ("text", "json"),
}


def _q(x) -> list[int]:
    x = Fraction(x)
    return [x.numerator, x.denominator]


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="zzm", description="Zhegalkin zebra motives.")
    p.add_argument("--version", action="version", version=f"zzm {__version__}")
    p.add_argument("verb", choices=VERBS)
    p.add_argument("input", help="zebra polynomial or motive JSON path")
    p.add_argument("--lambda", dest="lam", metavar="a,b;c,d",
                   help="sublattice of Aut as integer rows in the Aut basis (default: Aut itself)")
    p.add_argument("--format", "-f", help="output format (default depends on the verb)")
    p.add_argument("-o", "--output", help="write to this file instead of stdout")
    p.add_argument("--weights", help="JSON file {nu1: [...], nu2: [...], nu3: [...]}")
    p.add_argument("--search", action="store_true", help="search for a weight realization")
    p.add_argument("--barycentric", action="store_true",
                   help="quad: mark barycentres instead of using weights")
    p.add_argument("--window", type=int, nargs=2, default=(3, 3), metavar=("P", "Q"))
    p.add_argument("--quiver", action="store_true", help="draw: overlay the quiver")
    p.add_argument("--labels", action="store_true", help="label edges in drawings")
    p.add_argument("--stroke-width", type=float, default=0.03)
    p.add_argument("--black", default="#000000")
    p.add_argument("--white", default="#ffffff")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def _style(args) -> Style:
    return Style(stroke_width=args.stroke_width, black=args.black, white=args.white, labels=args.labels)


def _cmd_draw(args, motive, fmt):
    kind = "quiver" if args.quiver else "tiling"
    return render(Scene(kind, motive, tuple(args.window), _style(args)))


def _cmd_potential(args, motive, fmt):
    if fmt == "text":
        S = motive.S
        return (f"sigma0 = {perm.format_cycles(S.white_faces)}\n"
                f"sigma1 = {perm.format_cycles(S.black_faces)}\n"
                f"sigma2 = {perm.format_cycles(S.vertices)}\n"
                f"genus {S.genus_line()}\n")
    return motive_to_json(motive)


def _cmd_matchings(args, motive, fmt):
    S = motive.S
    ms = enumerate_matchings(S)
    complete, theta = is_dimer_complete(S, ms)
    doc = {
        "count": len(ms),
        "matchings": [[e + 1 for e in matching_edges(m)] for m in ms],
        "complete": complete,
        "theta": [_q(t) for t in theta] if theta else None,
    }
    if ms:
        doc["rank"] = weight_rank(ms)
        doc["classes"] = [[i + 1 for i in c] for c in equivalence_classes(S, ms)]
        doc["relations"] = list(relation_lattice(ms).binomials)
    if fmt == "text":
        lines = [f"{len(ms)} perfect matchings, dimer complete: {str(complete).lower()}"]
        lines += [f"m{i + 1}: {' '.join(map(str, m))}" for i, m in enumerate(doc["matchings"])]
        if theta:
            lines.append("theta: " + " ".join(str(t) for t in theta))
        return "\n".join(lines) + "\n"
    return doc


def _cmd_newton(args, motive, fmt):
    wr = weights_for(motive, args.weights, args.search)
    pts = newton_embedding(motive.S, wr)
    if fmt == "svg":
        return render(Scene("newton", pts, (1, 1), _style(args), PLAIN_FRAME))
    return [p.to_json() for p in pts]


def _cmd_quad(args, motive, fmt):
    S = motive.S
    if args.barycentric:
        omega = motive.omega
        quads = barycentric_quadrangles(S, omega)
        lattice = motive.realization.lattice
        frame = None
    else:
        wr = weights_for(motive, args.weights, args.search)
        omega = wr.omega
        quads = quadrangles(S, wr)
        lattice = realization_lattice(S, motive.omega, motive.realization.lattice, omega)
        frame = PLAIN_FRAME
    if fmt == "svg":
        tiling = QuadrangleTiling(S, tuple(quads), tuple(omega), lattice)
        if frame is None:
            return render(Scene("quadrangles", tiling, tuple(args.window), _style(args)))
        return render(Scene("quadrangles", tiling, tuple(args.window), _style(args), frame))
    return {"quadrangles": [q.to_json() for q in quads],
            "lattice": [[_q(c) for c in b] for b in (lattice.b1, lattice.b2)]}


def _cmd_jacobi(args, motive, fmt):
    S = motive.S
    wr = weights_for(motive, args.weights, args.search)
    A = astar_matrix(S, wr).matrix
    rel = check_jacobi_relations(S, wr)
    binoms = master_binomials(S)
    if fmt == "json":
        return {"matrix": A.to_json(), "jacobi_relations": rel.ok, "failures": rel.failures,
                "potential": potential_polynomial(S),
                "binomials": [{"e": b.edge + 1, "ordered": str(b), "commutative": b.commutative()}
                              for b in binoms],
                "weights": wr.to_json()}
    lines = [A.to_text(), f"F = {potential_polynomial(S)}",
             f"Jacobi relations: {'ok' if rel.ok else 'FAILED'}"]
    lines += [f"D({b.edge + 1}) = {b}" for b in binoms]
    return "\n".join(lines) + "\n"


def _cmd_forms(args, motive, fmt):
    S = motive.S
    ms = enumerate_matchings(S)
    complete, _ = is_dimer_complete(S, ms)
    doc = {"h1_ranks": list(h1_ranks(S)), "matchings": len(ms), "complete": complete}
    if ms:
        F = poisson_forms(S, ms[0])
        pair = rho_matrices(S, ms[0])
        doc["rho0"] = pair.rho0.tolist()
        doc["rho1"] = pair.rho1.tolist()
        doc["forms"] = {k: [[F.on_differences(k, ms)[i, j] for j in range(len(ms))] for i in range(len(ms))]
                        for k in FORM_KINDS}
        rep = kernel_checks(S, ms)
        doc["kernel_identities"] = rep.ok
        doc["failures"] = rep.failures
    if fmt == "text":
        lines = [f"H1 ranks {doc['h1_ranks'][0]} {doc['h1_ranks'][1]}", f"{len(ms)} matchings"]
        if ms:
            lines.append(f"kernel identities: {'ok' if doc['kernel_identities'] else 'FAILED'}")
            for k in FORM_KINDS:
                lines.append(f"eps_{k}:")
                lines += ["  " + " ".join(f"{x:3d}" for x in row) for row in doc["forms"][k]]
        return "\n".join(lines) + "\n"
    return doc


def _cmd_check(args, motive, fmt):
    results = run_checks(motive)
    if fmt == "json":
        return {"genus": motive.S.genus_line(),
                "checks": [{"name": r.name, "ok": r.ok, "detail": r.detail} for r in results]}
    lines = [motive.S.genus_line()]
    lines += [f"{'ok  ' if r.ok else 'FAIL'} {r.name}" + (f": {r.detail}" if r.detail else "") for r in results]
    return "\n".join(lines) + "\n"


COMMANDS = {
    "draw": _cmd_draw, "potential": _cmd_potential, "matchings": _cmd_matchings,
    "newton": _cmd_newton, "quad": _cmd_quad, "jacobi": _cmd_jacobi,
    "forms": _cmd_forms, "check": _cmd_check,
}


def _emit(result, path):
    text = result if isinstance(result, str) else json.dumps(result, indent=2) + "\n"
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    fmt = args.format or FORMATS[args.verb][0]
    try:
        if fmt not in FORMATS[args.verb]:
            raise ZZMError(f"format {fmt!r} not available for {args.verb}; "
                           f"choose from {', '.join(FORMATS[args.verb])}")
        motive = load_motive(args.input, parse_lambda(args.lam))
        result = COMMANDS[args.verb](args, motive, fmt)
    except InvariantViolation as exc:
        sys.stdout.write(json.dumps(exc.to_dict()) + "\n")
        return 2
    except ZZMError as exc:
        sys.stdout.write(json.dumps(exc.to_dict()) + "\n")
        return 1
    _emit(result, args.output)
    if args.verb == "check" and not all(r["ok"] for r in _check_flags(result)):
        return 2
    return 0


def _check_flags(result):
    if isinstance(result, dict):
        return result["checks"]
    return [{"ok": not line.startswith("FAIL")} for line in result.splitlines()[1:]]


if __name__ == "__main__":
    sys.exit(main())
