"""Exact integer and rational matrix routines.

Matrices are plain nested sequences of Python ints (or Fractions where
noted), so entries never overflow.  Results come back as tuples of tuples.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

Matrix = tuple[tuple[int, ...], ...]
RationalMatrix = tuple[tuple[Fraction, ...], ...]


def freeze(rows) -> tuple:
    return tuple(tuple(r) for r in rows)


def identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def zeros(m: int, n: int) -> Matrix:
    return tuple((0,) * n for _ in range(m))


def transpose(A: Sequence[Sequence], ncols: int | None = None) -> tuple:
    if not A:
        return tuple(() for _ in range(ncols or 0))
    return tuple(zip(*A))


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> tuple:
    """Product of an m x k and a k x n matrix."""
    if not A:
        return ()
    Bt = transpose(B) if B else ()
    if not Bt:
        # k == 0 or n == 0
        n = len(B[0]) if B else 0
        return tuple((0,) * n for _ in A)
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in Bt) for row in A)


def matvec(A: Sequence[Sequence], x: Sequence) -> tuple:
    return tuple(sum(a * b for a, b in zip(row, x)) for row in A)


def vecmat(x: Sequence, A: Sequence[Sequence]) -> tuple:
    if not A:
        return ()
    return tuple(sum(xi * row[j] for xi, row in zip(x, A)) for j in range(len(A[0])))


def dot(x: Sequence, y: Sequence):
    return sum(a * b for a, b in zip(x, y))


def content(x: Sequence[int]) -> int:
    """gcd of the entries (0 for the zero vector)."""
    g = 0
    for a in x:
        g = gcd(g, a)
    return g


def is_symmetric(A: Sequence[Sequence]) -> bool:
    n = len(A)
    return all(len(row) == n for row in A) and all(
        A[i][j] == A[j][i] for i in range(n) for j in range(i + 1, n)
    )


def determinant(A: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free elimination."""
    n = len(A)
    if n == 0:
        return 1
    M = [list(r) for r in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        pk = M[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * pk - M[i][k] * M[k][j]) // prev
        prev = pk
    return sign * M[n - 1][n - 1]


def rational_inverse(A: Sequence[Sequence]) -> RationalMatrix:
    """Gauss-Jordan inverse over Q.  Raises ZeroDivisionError if singular."""
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(A)]
    for c in range(n):
        p = next((i for i in range(c, n) if M[i][c] != 0), None)
        if p is None:
            raise ZeroDivisionError("singular matrix")
        M[c], M[p] = M[p], M[c]
        inv = 1 / M[c][c]
        M[c] = [x * inv for x in M[c]]
        for i in range(n):
            if i != c and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    return tuple(tuple(row[n:]) for row in M)


def solve_left(B: Sequence[Sequence], x: Sequence) -> tuple[Fraction, ...] | None:
    """Return c with c . B == x over Q, or None if x is outside the row span.

    B must have linearly independent rows.
    """
    k = len(B)
    if k == 0:
        return () if all(a == 0 for a in x) else None
    n = len(B[0])
    # solve B^T c = x by elimination on the augmented n x (k+1) system
    M = [[Fraction(B[i][j]) for i in range(k)] + [Fraction(x[j])] for j in range(n)]
    row = 0
    for c in range(k):
        p = next((i for i in range(row, n) if M[i][c] != 0), None)
        if p is None:
            raise ValueError("basis rows are linearly dependent")
        M[row], M[p] = M[p], M[row]
        inv = 1 / M[row][c]
        M[row] = [a * inv for a in M[row]]
        for i in range(n):
            if i != row and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[row])]
        row += 1
    if any(M[i][k] != 0 for i in range(row, n)):
        return None
    return tuple(M[i][k] for i in range(k))


@dataclass(frozen=True)
class SmithDecomposition:
    """U . A . V == D with U, V unimodular and d1 | d2 | ... on the diagonal."""

    U: Matrix
    D: Matrix
    V: Matrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.D[i][i] for i in range(min(len(self.D), len(self.V))))

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)


def smith_normal_form(A: Sequence[Sequence[int]]) -> SmithDecomposition:
    """Smith normal form with a smallest-absolute-value pivot strategy."""
    m = len(A)
    n = len(A[0]) if m else 0
    D = [list(map(int, r)) for r in A]
    U = [list(r) for r in identity(m)]
    V = [list(r) for r in identity(n)]

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M in (D, V):
            for r in M:
                r[i], r[j] = r[j], r[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        D[dst] = [a + q * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for M in (D, V):
            for r in M:
                r[dst] += q * r[src]

    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                a = D[i][j]
                if a and (best is None or abs(a) < best[0]):
                    best = (abs(a), i, j)
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = D[t][t]
            dirty = False
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // p))
                    dirty = dirty or D[i][t] != 0
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // p))
                    dirty = dirty or D[t][j] != 0
            if dirty:
                # a remainder is now smaller than the pivot; promote it
                cand = [(abs(D[i][t]), i, t) for i in range(t + 1, m) if D[i][t]]
                cand += [(abs(D[t][j]), t, j) for j in range(t + 1, n) if D[t][j]]
                _, i, j = min(cand)
                if i != t:
                    swap_rows(t, i)
                else:
                    swap_cols(t, j)
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if D[t][t] < 0:
            D[t] = [-a for a in D[t]]
            U[t] = [-a for a in U[t]]
    return SmithDecomposition(freeze(U), freeze(D), freeze(V))


def hermite_normal_form(rows: Sequence[Sequence[int]], ncols: int | None = None) -> Matrix:
    """Row-style HNF of the Z-span of ``rows``; zero rows are dropped.

    Pivots are positive and entries above each pivot lie in [0, pivot).
    The result depends only on the lattice spanned, not on the generators.
    """
    A = [list(map(int, r)) for r in rows]
    m = len(A)
    n = len(A[0]) if m else (ncols or 0)
    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if A[i][c]]
            if not nz:
                break
            k = min(nz, key=lambda i: (abs(A[i][c]), i))
            A[r], A[k] = A[k], A[r]
            p = A[r][c]
            for i in range(r + 1, m):
                if A[i][c]:
                    q = A[i][c] // p
                    A[i] = [a - q * b for a, b in zip(A[i], A[r])]
            if all(A[i][c] == 0 for i in range(r + 1, m)):
                break
        if r < m and A[r][c]:
            if A[r][c] < 0:
                A[r] = [-a for a in A[r]]
            p = A[r][c]
            for i in range(r):
                q = A[i][c] // p
                if q:
                    A[i] = [a - q * b for a, b in zip(A[i], A[r])]
            r += 1
    return freeze(A[:r])


def integer_kernel(A: Sequence[Sequence[int]], ncols: int | None = None) -> Matrix:
    """HNF basis (as rows) of {x in Z^n : A x = 0}.  Always saturated."""
    n = len(A[0]) if A else (ncols or 0)
    if not A:
        return identity(n)
    snf = smith_normal_form(A)
    r = snf.rank
    cols = transpose(snf.V)
    return hermite_normal_form(cols[r:], n)


def saturate_rows(B: Sequence[Sequence[int]], n: int) -> Matrix:
    """HNF basis of (Q-span of rows) intersected with Z^n."""
    K = integer_kernel(B, n) if B else identity(n)
    if not K:
        return identity(n)
    return integer_kernel(K, n)


def intersect_saturated(B1: Sequence[Sequence[int]], B2: Sequence[Sequence[int]], n: int) -> Matrix:
    """HNF basis of Q-span(B1) & Q-span(B2) & Z^n."""
    K1 = integer_kernel(B1, n) if B1 else identity(n)
    K2 = integer_kernel(B2, n) if B2 else identity(n)
    K = tuple(K1) + tuple(K2)
    if not K:
        return identity(n)
    return integer_kernel(K, n)


def kernel_mod2(A: Sequence[Sequence[int]], ncols: int | None = None) -> tuple[tuple[int, ...], ...]:
    """Basis of the right kernel of A over GF(2), from the reduced echelon form."""
    n = len(A[0]) if A else (ncols or 0)
    M = [[a & 1 for a in row] for row in A]
    pivots: list[int] = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, len(M)) if M[i][c]), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        for i in range(len(M)):
            if i != r and M[i][c]:
                M[i] = [a ^ b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        x = [0] * n
        x[f] = 1
        for i, pc in enumerate(pivots):
            x[pc] = M[i][f]
        basis.append(tuple(x))
    return tuple(basis)
