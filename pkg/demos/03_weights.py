"""Weight realizations: quadrangles, Newton polygons and the matrix A**.

Run:  python3 demos/03_weights.py      (SVGs land in demos/out/)
"""

import os

from zzm import (
    Scene,
    WeightRealization,
    astar_matrix,
    check_jacobi_relations,
    motive_from_polynomial,
    newton_embedding,
    quadrangles,
    realization_lattice,
    render,
    search_weight_realization,
)
from zzm.perm import format_cycles
from zzm.realization import convex_hull
from zzm.render import PLAIN_FRAME, QuadrangleTiling

OUT = os.path.join(os.path.dirname(os.path.abspath(__file__)), "out")
os.makedirs(OUT, exist_ok=True)

# ---------------------------------------------------------------
# Hand-picked weights on the triangle tiling
# ---------------------------------------------------------------
M = motive_from_polynomial("z21+z41+z61")
S = M.S
print("white face", format_cycles(S.white_faces), " black face", format_cycles(S.black_faces))
wr = search_weight_realization(S, omega_hint=M.omega)
print("weights found:", wr.to_json())
print("omega:", wr.omega)

quads = quadrangles(S, wr, check_all=True)
for q in quads:
    print(f"  edge {q.edge + 1}: s->b {tuple(map(str, q.sb))}  s->w {tuple(map(str, q.sw))}  area {q.area}")
lat = realization_lattice(S, M.omega, M.realization.lattice, wr.omega)
print("sum of areas", sum(q.area for q in quads), "= covolume", lat.covolume)

print()
print(astar_matrix(S, wr).matrix.to_text())
print("Jacobi relations:", check_jacobi_relations(S, wr).ok)

# ---------------------------------------------------------------
# The square with explicit weights
# ---------------------------------------------------------------
Msq = motive_from_polynomial("z21+z41")
wsq = search_weight_realization(Msq.S, omega_hint=Msq.omega)
print()
print(astar_matrix(Msq.S, wsq).matrix.to_text())
explicit = WeightRealization.from_values(Msq.S, *wsq.to_json().values())
assert explicit == wsq

# ---------------------------------------------------------------
# Newton polygons
# ---------------------------------------------------------------
print()
for text in ["z21+z41+z61", "z21+z31+z41+z61", "z11+z21+z31+z41+z51+z61"]:
    Mx = motive_from_polynomial(text)
    w = search_weight_realization(Mx.S, omega_hint=Mx.omega)
    pts = newton_embedding(Mx.S, w)
    hull = convex_hull([p.point for p in pts])
    fibers = {tuple(map(str, p.point)): p.fiber for p in pts if p.fiber > 1}
    print(f"{text}: {len(pts)} class points, {len(hull)} hull vertices, big fibres {fibers}")

# ---------------------------------------------------------------
# Pictures
# ---------------------------------------------------------------
tiling = QuadrangleTiling(S, tuple(quads), wr.omega, lat)
with open(os.path.join(OUT, "triangle_quadrangles.svg"), "w") as fh:
    fh.write(render(Scene("quadrangles", tiling, (3, 3), frame=PLAIN_FRAME)))
with open(os.path.join(OUT, "triangle_newton.svg"), "w") as fh:
    fh.write(render(Scene("newton", newton_embedding(S, wr), frame=PLAIN_FRAME)))
print("wrote demos/out/triangle_quadrangles.svg and demos/out/triangle_newton.svg")
