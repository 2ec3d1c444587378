"""Permutations of ``range(n)`` stored as image tuples.

Composition follows ``compose(f, g)[e] == f[g[e]]``.
"""

from __future__ import annotations

from typing import Iterable, Sequence

Perm = tuple[int, ...]


def identity(n: int) -> Perm:
    return tuple(range(n))


def compose(f: Sequence[int], g: Sequence[int]) -> Perm:
    return tuple(f[x] for x in g)


def inverse(f: Sequence[int]) -> Perm:
    inv = [0] * len(f)
    for i, x in enumerate(f):
        inv[x] = i
    return tuple(inv)


def is_permutation(f: Sequence[int]) -> bool:
    return sorted(f) == list(range(len(f)))


def cycles(f: Sequence[int]) -> list[tuple[int, ...]]:
    """Disjoint cycles, each starting at its smallest element, sorted by that element."""
    seen = [False] * len(f)
    out = []
    for start in range(len(f)):
        if seen[start]:
            continue
        cyc = []
        x = start
        while not seen[x]:
            seen[x] = True
            cyc.append(x)
            x = f[x]
        out.append(tuple(cyc))
    return out


def from_cycles(cycs: Iterable[Iterable[int]], n: int | None = None) -> Perm:
    cycs = [tuple(c) for c in cycs]
    if n is None:
        n = sum(len(c) for c in cycs)
    img = list(range(n))
    seen = set()
    for c in cycs:
        for i, x in enumerate(c):
            if x in seen or not 0 <= x < n:
                raise ValueError(f"invalid cycle entry {x}")
            seen.add(x)
            img[x] = c[(i + 1) % len(c)]
    return tuple(img)


def order(f: Sequence[int]) -> int:
    from math import lcm

    out = 1
    for c in cycles(f):
        out = lcm(out, len(c))
    return out


def power(f: Sequence[int], k: int) -> Perm:
    if k < 0:
        f, k = inverse(f), -k
    out = identity(len(f))
    for _ in range(k):
        out = compose(f, out)
    return out


def conjugate(f: Sequence[int], phi: Sequence[int]) -> Perm:
    """Return ``phi f phi^-1``, i.e. ``f`` relabelled through ``phi``."""
    return compose(phi, compose(f, inverse(phi)))


def format_cycles(cycs: Iterable[Sequence[int]], one_based: bool = True) -> str:
    off = 1 if one_based else 0
    return "".join("(" + ",".join(str(x + off) for x in c) + ")" for c in cycs)
