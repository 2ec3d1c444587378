"""Perfect matchings, their classes, and the Poisson forms built from them.

Run:  python3 demos/02_matchings.py
"""

from zzm import enumerate_matchings, is_dimer_complete, kernel_checks, motive_from_polynomial, poisson_forms
from zzm.homology import FORM_KINDS, h1_ranks
from zzm.matchings import equivalence_classes, matching_edges, relation_lattice, weight_rank

# ---------------------------------------------------------------
# Matchings on the triangle tiling
# ---------------------------------------------------------------
S = motive_from_polynomial("z21+z41+z61").S
ms = enumerate_matchings(S)
complete, theta = is_dimer_complete(S, ms)
print("triangle:", len(ms), "matchings, complete =", complete, ", theta =", [str(t) for t in theta])

# The kagome tiling has no perfect matching at all: two black faces
# but only one white face.
K = motive_from_polynomial("z21+z41+z61+z62").S
print("kagome:  ", len(enumerate_matchings(K)), "matchings,", len(K.black_faces), "black vs",
      len(K.white_faces), "white faces")

# ---------------------------------------------------------------
# Classes and relations on F4
# ---------------------------------------------------------------
S4 = motive_from_polynomial("z21+z31+z41+z61").S
ms4 = enumerate_matchings(S4)
print()
print("F4:", len(ms4), "matchings of rank", weight_rank(ms4))
for cls in equivalence_classes(S4, ms4):
    print("  class", [i + 1 for i in cls], "edges of first:", [e + 1 for e in matching_edges(ms4[cls[0]])])
print("  first relations:", relation_lattice(ms4).binomials[:2])

# ---------------------------------------------------------------
# Forms
# ---------------------------------------------------------------
print()
print("H1 ranks of the triangle:", h1_ranks(S))
F = poisson_forms(S, ms[0])
for kind in FORM_KINDS:
    print(f"eps_{kind}")
    print(F.difference_matrix(kind, ms))

# The vertex and zigzag identities, checked for every auxiliary matching.
rep = kernel_checks(S4, ms4)
print("kernel identities on F4:", "ok" if rep.ok else rep.failures[:3])
