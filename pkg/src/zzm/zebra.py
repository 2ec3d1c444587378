"""Zhegalkin zebra polynomials: parsing and exact evaluation.

All coordinates live in the rescaled frame in which the six basic
frequencies become the integer vectors of ``BASIC_FREQUENCIES``.  A point
``y`` of this frame corresponds to the point ``diag(2, 2/sqrt(3)) @ y`` of the
true plane.  A zebra with integer frequency ``v`` takes the value
``floor(2 y.v) mod 2``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

import numpy as np

from .errors import DegenerateError, PolynomialSyntaxError

#: rescaled frequency vectors for direction indices 1..6
BASIC_FREQUENCIES = {
    1: (-3, 1),
    2: (-1, 1),
    3: (0, 2),
    4: (1, 1),
    5: (3, 1),
    6: (2, 0),
}


@dataclass(frozen=True, order=True)
class Frequency:
    direction_index: int
    multiplier: int = 1

    def __post_init__(self):
        if self.direction_index not in BASIC_FREQUENCIES:
            raise ValueError(f"direction index must be in 1..6, got {self.direction_index}")
        if self.multiplier < 1:
            raise ValueError(f"multiplier must be >= 1, got {self.multiplier}")

    @property
    def vector(self) -> tuple[int, int]:
        a, b = BASIC_FREQUENCIES[self.direction_index]
        return (self.multiplier * a, self.multiplier * b)

    def __str__(self):
        return f"z{self.direction_index}{self.multiplier}"


@dataclass(frozen=True)
class ZebraPolynomial:
    """A polynomial over F_2 in zebras.

    ``V`` is the 2 x n integer matrix of distinct frequency vectors and ``M``
    the n x m 0/1 matrix whose columns are the monomials.
    """

    frequencies: tuple[Frequency, ...]
    monomials: tuple[frozenset[int], ...]
    source_text: str = ""
    V: np.ndarray = field(init=False, repr=False, compare=False)
    M: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        vecs = [f.vector for f in self.frequencies]
        if len(set(vecs)) != len(vecs):
            raise ValueError("duplicate frequency vectors")
        if not self.monomials:
            raise DegenerateError("polynomial is the constant 0")
        if len(set(self.monomials)) != len(self.monomials):
            raise ValueError("duplicate monomials")
        used = set().union(*self.monomials)
        if used != set(range(len(vecs))):
            raise ValueError("every frequency must occur in some monomial")
        if any(not mono for mono in self.monomials):
            raise ValueError("constant monomials are not supported")
        V = np.array(vecs, dtype=np.int64).T.reshape(2, len(vecs))
        M = np.zeros((len(vecs), len(self.monomials)), dtype=np.int64)
        for j, mono in enumerate(self.monomials):
            for i in mono:
                M[i, j] = 1
        V.setflags(write=False)
        M.setflags(write=False)
        object.__setattr__(self, "V", V)
        object.__setattr__(self, "M", M)

    @property
    def n_frequencies(self) -> int:
        return len(self.frequencies)

    def __str__(self):
        terms = []
        for mono in self.monomials:
            terms.append("*".join(str(self.frequencies[i]) for i in sorted(mono)))
        return "+".join(terms)


_TOKEN = re.compile(r"z(\d)(\d+)")


def parse_polynomial(text: str) -> ZebraPolynomial:
    """Parse text such as ``"z21+z31*z42*z61"``.

    ``zjk`` is the zebra with frequency ``k`` times the j-th basic frequency;
    ``j`` is one digit, ``k`` may have several.  Whitespace is ignored and
    identical monomials cancel in pairs.
    """
    # keep a map from stripped positions back to the original text
    chars = [(i, c) for i, c in enumerate(text) if not c.isspace()]
    s = "".join(c for _, c in chars)

    def orig(pos):
        return chars[pos][0] if pos < len(chars) else len(text)

    if not s:
        raise PolynomialSyntaxError("empty polynomial", 0)

    freq_index: dict[Frequency, int] = {}
    freqs: list[Frequency] = []
    counts: dict[frozenset, int] = {}
    order: list[frozenset] = []
    pos = 0
    while True:
        factors = set()
        while True:
            m = _TOKEN.match(s, pos)
            if m is None:
                raise PolynomialSyntaxError("expected a factor 'z<j><k>'", orig(pos))
            j, k = int(m.group(1)), int(m.group(2))
            if not 1 <= j <= 6:
                raise PolynomialSyntaxError(f"direction index {j} not in 1..6", orig(pos + 1))
            if k == 0:
                raise PolynomialSyntaxError("multiplier must be positive", orig(pos + 2))
            f = Frequency(j, k)
            if f not in freq_index:
                freq_index[f] = len(freqs)
                freqs.append(f)
            # z*z = z over F_2
            factors.add(freq_index[f])
            pos = m.end()
            if pos < len(s) and s[pos] == "*":
                pos += 1
                continue
            break
        mono = frozenset(factors)
        if mono not in counts:
            counts[mono] = 0
            order.append(mono)
        counts[mono] += 1
        if pos == len(s):
            break
        if s[pos] != "+":
            raise PolynomialSyntaxError(f"unexpected character {s[pos]!r}", orig(pos))
        pos += 1

    monomials = [mono for mono in order if counts[mono] % 2 == 1]
    if not monomials:
        raise DegenerateError("polynomial cancels to the constant 0")
    # drop frequencies that only occurred in cancelled monomials
    used = sorted(set().union(*monomials))
    remap = {old: new for new, old in enumerate(used)}
    freqs = [freqs[i] for i in used]
    monomials = [frozenset(remap[i] for i in mono) for mono in monomials]
    return ZebraPolynomial(tuple(freqs), tuple(monomials), text)


def _combine(poly: ZebraPolynomial, zebra_values: np.ndarray) -> np.ndarray:
    # a monomial is 1 iff none of its factors is 0
    zeros = (zebra_values == 0).astype(np.int64)
    monomial_values = ((zeros @ poly.M) == 0).astype(np.int64)
    return monomial_values.sum(axis=1) % 2


def evaluate(poly: ZebraPolynomial, points, scale: int | None = None) -> np.ndarray:
    """Evaluate at the rows of ``points`` (1 = black, 0 = white).

    With ``scale`` given, ``points`` is an integer k x 2 array holding
    ``scale * y``.  Otherwise ``points`` may contain Fractions or ints and the
    scale is the lcm of their denominators.
    """
    if scale is None:
        rows = [(Fraction(x), Fraction(y)) for x, y in points]
        scale = 1
        for x, y in rows:
            scale = lcm(scale, x.denominator, y.denominator)
        pts = np.array([[int(x * scale), int(y * scale)] for x, y in rows], dtype=np.int64)
    else:
        pts = np.asarray(points, dtype=np.int64)
    pts = pts.reshape(-1, 2)
    if scale <= 0:
        raise ValueError("scale must be positive")
    zebra_values = np.floor_divide(2 * (pts @ poly.V), scale) % 2
    return _combine(poly, zebra_values)


def evaluate_limit(poly: ZebraPolynomial, points, directions, scale: int) -> np.ndarray:
    """Value of the polynomial at ``p + t*d`` for ``t -> 0+``.

    ``points`` are integers scaled by ``scale``; ``directions`` are integer
    vectors.  Points on a zebra boundary pick the side that ``d`` points to.
    """
    pts = np.asarray(points, dtype=np.int64).reshape(-1, 2)
    dirs = np.asarray(directions, dtype=np.int64).reshape(-1, 2)
    num = 2 * (pts @ poly.V)
    floor = np.floor_divide(num, scale)
    on_line = (num % scale) == 0
    slope = dirs @ poly.V
    floor = floor - (on_line & (slope < 0)).astype(np.int64)
    return _combine(poly, floor % 2)

