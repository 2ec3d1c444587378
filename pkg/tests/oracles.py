"""Independent reference implementations used to cross-check the package.

Nothing here imports the algorithms under test; only plain data goes in.
"""

import itertools
import math
from fractions import Fraction

FREQ = {1: (-3, 1), 2: (-1, 1), 3: (0, 2), 4: (1, 1), 5: (3, 1), 6: (2, 0)}


def parse_naive(text):
    """List of monomials, each a list of integer frequency vectors."""
    out = []
    for term in text.replace(" ", "").split("+"):
        mono = []
        for f in term.split("*"):
            j, k = int(f[1]), int(f[2:])
            a, b = FREQ[j]
            mono.append((k * a, k * b))
        out.append(mono)
    return out


def evaluate_naive(text, point):
    """floor(2 y.v) mod 2 per zebra, product per monomial, sum mod 2."""
    x, y = Fraction(point[0]), Fraction(point[1])
    total = 0
    for mono in parse_naive(text):
        value = 1
        for a, b in mono:
            value *= math.floor(2 * (x * a + y * b)) % 2
        total += value
    return total % 2


def is_period_naive(text, tau, points):
    return all(evaluate_naive(text, p) == evaluate_naive(text, (p[0] + tau[0], p[1] + tau[1]))
               for p in points)


def cycles_of(perm):
    seen, out = set(), []
    for s in range(len(perm)):
        if s not in seen:
            c, x = [], s
            while x not in seen:
                seen.add(x)
                c.append(x)
                x = perm[x]
            out.append(c)
    return out


def permanent_ryser(A):
    """Permanent of a square integer matrix by Ryser's formula."""
    n = len(A)
    if n == 0:
        return 1
    total = 0
    for r in range(1, n + 1):
        for cols in itertools.combinations(range(n), r):
            prod = 1
            for row in A:
                prod *= sum(row[c] for c in cols)
            total += (-1) ** r * prod
    return (-1) ** n * total


def matching_count(sigma0, sigma1):
    """Number of perfect matchings as the permanent of the white x black incidence counts."""
    white = cycles_of(sigma0)
    black = cycles_of(sigma1)
    if len(white) != len(black):
        return 0
    wof = {e: i for i, c in enumerate(white) for e in c}
    bof = {e: i for i, c in enumerate(black) for e in c}
    A = [[0] * len(black) for _ in white]
    for e in range(len(sigma0)):
        A[wof[e]][bof[e]] += 1
    return permanent_ryser(A)


def weight_functions(sigma0, sigma1, degree):
    """All non-negative integer edge weights with every face sum equal to ``degree``."""
    faces = cycles_of(sigma0) + cycles_of(sigma1)
    n = len(sigma0)
    for vals in itertools.product(range(degree + 1), repeat=n):
        if all(sum(vals[e] for e in f) == degree for f in faces):
            yield vals


def is_sum_of_matchings(vals, matchings, degree):
    for combo in itertools.combinations_with_replacement(range(len(matchings)), degree):
        acc = [0] * len(vals)
        for i in combo:
            acc = [a + b for a, b in zip(acc, matchings[i])]
        if tuple(acc) == tuple(vals):
            return True
    return False


def count_paths(edges, nv, length):
    """``[i][j]`` = number of edge paths of the given length from i to j (edges as (s, t))."""
    out = [[0] * nv for _ in range(nv)]

    def dfs(start, v, k):
        if k == length:
            out[start][v] += 1
            return
        for s, t in edges:
            if s == v:
                dfs(start, t, k + 1)

    for v in range(nv):
        dfs(v, v, 0)
    return out


def polygon_area(points):
    s = Fraction(0)
    for i in range(len(points)):
        (x1, y1), (x2, y2) = points[i], points[(i + 1) % len(points)]
        s += Fraction(x1) * Fraction(y2) - Fraction(x2) * Fraction(y1)
    return s / 2
