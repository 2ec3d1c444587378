"""Exact linear algebra over Z and Q on lists of Python ints / Fractions.

Matrices are lists of rows.  Everything here is small-scale (a few hundred
rows at most) so plain Python arithmetic is fine and avoids overflow.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

Matrix = list[list]


def _copy(A) -> Matrix:
    return [list(r) for r in A]


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def transpose(A) -> Matrix:
    A = list(A)
    if not A:
        return []
    return [list(col) for col in zip(*A)]


def matmul(A, B) -> Matrix:
    Bt = transpose(B)
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matvec(A, x) -> list:
    return [sum(a * b for a, b in zip(row, x)) for row in A]


def vecmat(x, A) -> list:
    """Row vector times matrix."""
    if not A:
        return []
    out = [0] * len(A[0])
    for xi, row in zip(x, A):
        if xi:
            for j, a in enumerate(row):
                out[j] += xi * a
    return out


def hnf(A: Sequence[Sequence[int]], with_transform: bool = False):
    """Row-style Hermite normal form.

    Returns ``H`` (the non-zero rows, pivots strictly increasing, pivots
    positive, entries above a pivot reduced into ``[0, pivot)``).  With
    ``with_transform`` also returns a unimodular ``U`` such that
    ``U @ A == H + zero rows`` (``H`` equals the first ``len(H)`` rows).
    """
    H = _copy(A)
    m = len(H)
    n = len(H[0]) if m else 0
    U = identity(m)
    row = 0
    for col in range(n):
        if row >= m:
            break
        # euclid on column col among rows row..m-1
        while True:
            nz = [i for i in range(row, m) if H[i][col] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(H[i][col]))
            if piv != row:
                H[row], H[piv] = H[piv], H[row]
                U[row], U[piv] = U[piv], U[row]
            done = True
            for i in range(row + 1, m):
                if H[i][col]:
                    q = H[i][col] // H[row][col]
                    if q:
                        H[i] = [a - q * b for a, b in zip(H[i], H[row])]
                        U[i] = [a - q * b for a, b in zip(U[i], U[row])]
                    if H[i][col]:
                        done = False
            if done:
                break
        if H[row][col] == 0:
            continue
        if H[row][col] < 0:
            H[row] = [-a for a in H[row]]
            U[row] = [-a for a in U[row]]
        p = H[row][col]
        for i in range(row):
            q = H[i][col] // p
            if q:
                H[i] = [a - q * b for a, b in zip(H[i], H[row])]
                U[i] = [a - q * b for a, b in zip(U[i], U[row])]
        row += 1
    if with_transform:
        return H[:row], U
    return H[:row]


def reduce_mod_hnf(H: Sequence[Sequence[int]], v: Sequence[int]) -> tuple[int, ...]:
    """Canonical representative of ``v`` modulo the row lattice of an HNF ``H``.

    Two vectors are congruent modulo the lattice iff their reductions agree.
    """
    rem = list(v)
    for hrow in H:
        c = next(j for j, a in enumerate(hrow) if a)
        q = rem[c] // hrow[c]
        if q:
            rem = [a - q * b for a, b in zip(rem, hrow)]
    return tuple(rem)


def integer_kernel(A: Sequence[Sequence[int]], ncols: int | None = None) -> Matrix:
    """Z-basis (in Hermite form, as rows) of ``{x in Z^n : A x = 0}``."""
    if ncols is None:
        ncols = len(A[0]) if A else 0
    if ncols == 0:
        return []
    if not A:
        return identity(ncols)
    # row-reduce A^T with transform: U A^T = [H; 0], rows of U under zeros span the kernel
    H, U = hnf(transpose(A), with_transform=True)
    kernel = U[len(H):]
    return hnf(kernel) if kernel else []


def rank_q(A) -> int:
    return len(rref(A)[1])


def rref(A):
    """Reduced row echelon form over Q. Returns (R, pivot_columns)."""
    R = [[Fraction(a) for a in row] for row in A]
    m = len(R)
    n = len(R[0]) if m else 0
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if R[i][c] != 0), None)
        if p is None:
            continue
        R[r], R[p] = R[p], R[r]
        inv = 1 / R[r][c]
        R[r] = [a * inv for a in R[r]]
        for i in range(m):
            if i != r and R[i][c] != 0:
                f = R[i][c]
                R[i] = [a - f * b for a, b in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return R, pivots


def solve_q(A, b):
    """One rational solution of ``A x = b`` (b a vector) or None."""
    m = len(A)
    aug = [list(A[i]) + [b[i]] for i in range(m)]
    R, piv = rref(aug)
    n = len(A[0]) if m else 0
    if n in piv:
        return None
    x = [Fraction(0)] * n
    for i, c in enumerate(piv):
        x[c] = R[i][n]
    return x


def solve_left_q(X, Y):
    """Rational G with ``X @ G == Y`` (X: r x k full column rank, Y: r x l)."""
    cols = []
    for j in range(len(Y[0])):
        col = solve_q(X, [row[j] for row in Y])
        if col is None:
            return None
        cols.append(col)
    return transpose(cols)


def nullspace_q(A, ncols: int | None = None) -> Matrix:
    if ncols is None:
        ncols = len(A[0]) if A else 0
    if not A:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    R, piv = rref(A)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, c in enumerate(piv):
            v[c] = -R[i][f]
        basis.append(v)
    return basis


def in_integer_span(rows: Sequence[Sequence[int]], v: Sequence[int]):
    """Integer coefficients ``c`` with ``c @ rows == v``, or None."""
    if not rows:
        return [] if all(x == 0 for x in v) else None
    H, U = hnf(rows, with_transform=True)
    rem = list(v)
    coeff = [0] * len(H)
    for i, hrow in enumerate(H):
        c = next(j for j, a in enumerate(hrow) if a)
        if any(rem[j] for j in range(c)):
            return None
        if rem[c] % hrow[c]:
            return None
        q = rem[c] // hrow[c]
        coeff[i] = q
        rem = [a - q * b for a, b in zip(rem, hrow)]
    if any(rem):
        return None
    return vecmat(coeff, U[: len(H)])


def common_denominator(values) -> int:
    d = 1
    for x in values:
        d = lcm(d, Fraction(x).denominator)
    return d


def det2(a, b):
    return a[0] * b[1] - a[1] * b[0]


def det(A) -> Fraction:
    R = [[Fraction(a) for a in row] for row in A]
    n = len(R)
    sign = 1
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if R[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            R[c], R[p] = R[p], R[c]
            sign = -sign
        d *= R[c][c]
        for i in range(c + 1, n):
            f = R[i][c] / R[c][c]
            if f:
                R[i] = [a - f * b for a, b in zip(R[i], R[c])]
    return sign * d
