"""From a zebra polynomial to a superpotential on the torus.

Run:  python3 demos/01_tilings.py      (SVGs land in demos/out/)
"""

import os

from zzm import motive_from_polynomial, parse_polynomial, render, Scene
from zzm.perm import format_cycles
from zzm.render import Style

OUT = os.path.join(os.path.dirname(os.path.abspath(__file__)), "out")
os.makedirs(OUT, exist_ok=True)

# ---------------------------------------------------------------
# 1. Polynomials
# ---------------------------------------------------------------
# z{j}{k} is the zebra in direction j (1..6) with frequency k.
# Products are pointwise, sums are taken mod 2.
for text in ["z21+z41", "z41+z21", "z21+z21+z61", "z31*z42*z61+z21"]:
    print(f"{text:22s} -> {parse_polynomial(text)}")

# ---------------------------------------------------------------
# 2. The square and the triangle
# ---------------------------------------------------------------
for text in ["z21+z41", "z21+z41+z61"]:
    M = motive_from_polynomial(text)
    S = M.S
    print()
    print(text)
    print("  Aut basis      ", *[tuple(map(str, b)) for b in (M.aut.b1, M.aut.b2)])
    print("  white faces    ", format_cycles(S.white_faces))
    print("  black faces    ", format_cycles(S.black_faces))
    print("  vertices       ", format_cycles(S.vertices))
    print("  genus identity ", S.genus_line())

# ---------------------------------------------------------------
# 3. A bigger fundamental domain
# ---------------------------------------------------------------
# Lambda = 2 Aut x Aut doubles every count.
M2 = motive_from_polynomial("z21+z41+z61", ((2, 0), (0, 1)))
print()
print("z21+z41+z61 on 2Aut x Aut:", M2.S.genus_line())

# ---------------------------------------------------------------
# 4. Pictures
# ---------------------------------------------------------------
pictures = {
    "square_3x3.svg": Scene("tiling", motive_from_polynomial("z21+z41"), (3, 3)),
    "kagome_quiver.svg": Scene("quiver", motive_from_polynomial("z21+z41+z61+z62"), (2, 2)),
    "fig12_tiling.svg": Scene("tiling", motive_from_polynomial("z21+z31+z41+z61+z31*z42*z61"), (2, 2),
                              Style(black="#303050")),
}
for name, scene in pictures.items():
    with open(os.path.join(OUT, name), "w") as fh:
        fh.write(render(scene))
    print("wrote", os.path.join("demos", "out", name))
