"""Integral lattices given by symmetric Gram matrices.

Everything is exact: Gram entries are Python ints, dual and glue vectors are
``Fraction`` coordinates with respect to the lattice basis.  Values are
immutable; every operation is a pure function.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import gcd, prod
from typing import Sequence

from . import intmat
from .intmat import Matrix, SmithDecomposition, smith_normal_form  # noqa: F401  (re-export)


class PreconditionError(ValueError):
    """A mathematical precondition of an operation does not hold."""


class DegenerateFormError(PreconditionError):
    def __init__(self, msg: str = "degenerate form"):
        super().__init__(msg)


class GlueError(PreconditionError):
    pass


@dataclass(frozen=True)
class Lattice:
    gram: Matrix
    label: str | None = None
    degenerate: bool = False

    def __post_init__(self):
        g = intmat.freeze(self.gram)
        object.__setattr__(self, "gram", g)
        if not intmat.is_symmetric(g):
            raise ValueError("Gram matrix must be square and symmetric")
        if not all(isinstance(a, int) for row in g for a in row):
            raise TypeError("Gram entries must be integers")
        if not self.degenerate and intmat.determinant(g) == 0:
            raise DegenerateFormError("degenerate form (pass degenerate=True to allow)")

    @property
    def rank(self) -> int:
        return len(self.gram)

    @property
    def is_even(self) -> bool:
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    def pair(self, x: Sequence, y: Sequence):
        return intmat.dot(intmat.vecmat(x, self.gram), y) if self.rank else 0

    def norm(self, x: Sequence):
        return self.pair(x, x)

    def with_label(self, label: str | None) -> "Lattice":
        return Lattice(self.gram, label, self.degenerate)


def _require_nondegenerate(L: Lattice) -> None:
    if L.degenerate and intmat.determinant(L.gram) == 0:
        raise DegenerateFormError()


def determinant(L: Lattice) -> int:
    return intmat.determinant(L.gram)


def signature(L: Lattice) -> tuple[int, int]:
    """(positive, negative) inertia via rational congruence diagonalisation."""
    A = [[Fraction(a) for a in row] for row in L.gram]
    n = len(A)
    pos = neg = 0
    for k in range(n):
        if A[k][k] == 0:
            j = next((j for j in range(k + 1, n) if A[j][j] != 0), None)
            if j is not None:
                A[k], A[j] = A[j], A[k]
                for row in A:
                    row[k], row[j] = row[j], row[k]
            else:
                j = next((j for j in range(k + 1, n) if A[k][j] != 0), None)
                if j is None:
                    raise DegenerateFormError()
                # e_k -> e_k + e_j; new diagonal entry is 2*A[k][j] since both diagonals vanish
                A[k] = [a + b for a, b in zip(A[k], A[j])]
                for row in A:
                    row[k] += row[j]
        p = A[k][k]
        if p > 0:
            pos += 1
        else:
            neg += 1
        # row elimination leaves the trailing block equal to the (symmetric) Schur complement
        for i in range(k + 1, n):
            if A[i][k] != 0:
                f = A[i][k] / p
                A[i] = [a - f * b for a, b in zip(A[i], A[k])]
    return pos, neg


@dataclass(frozen=True)
class DualLattice:
    """L* described inside L (x) Q: basis rows are coordinates in the basis of L."""

    gram: intmat.RationalMatrix
    basis: intmat.RationalMatrix
    index: int


def dual_lattice(L: Lattice) -> DualLattice:
    _require_nondegenerate(L)
    inv = intmat.rational_inverse(L.gram)
    return DualLattice(gram=inv, basis=inv, index=abs(determinant(L)))


def _mod(q: Fraction, m: int) -> Fraction:
    return q - m * (q // m)


@dataclass(frozen=True)
class DiscriminantGroup:
    invariant_factors: tuple[int, ...]
    generators: intmat.RationalMatrix  # dual vectors in L-coordinates, entries in [0, 1)
    form_values: tuple[Fraction, ...]  # q(g) mod 2, in [0, 2)
    bilinear: intmat.RationalMatrix  # b(g_i, g_j) mod 1

    @property
    def order(self) -> int:
        return prod(self.invariant_factors)


def discriminant_group(L: Lattice) -> DiscriminantGroup:
    """L*/L via the Smith form of the Gram matrix.

    If U G V = D then the columns v_i / d_i of V are generators of L*/L.
    """
    _require_nondegenerate(L)
    if L.rank == 0:
        return DiscriminantGroup((), (), (), ())
    snf = smith_normal_form(L.gram)
    diag = snf.diagonal
    Vt = intmat.transpose(snf.V)
    factors, gens = [], []
    for d, col in zip(diag, Vt):
        if d > 1:
            factors.append(d)
            gens.append(tuple(_mod(Fraction(a, d), 1) for a in col))
    bil = tuple(tuple(_mod(L.pair(x, y), 1) for y in gens) for x in gens)
    vals = tuple(_mod(L.norm(x), 2) for x in gens)
    return DiscriminantGroup(tuple(factors), tuple(gens), vals, bil)


def discriminant_form_spectrum(L: Lattice, limit: int = 4096) -> tuple[tuple[Fraction, int], ...] | None:
    """Sorted (value, multiplicity) of q over all of L*/L; None if the group is too big.

    Values are taken mod 2 for even lattices and mod 1 otherwise, which is
    where they are well defined.  Independent of the choice of generators.
    """
    dg = discriminant_group(L)
    if dg.order > limit:
        return None
    gens = dg.generators
    k = len(gens)
    # exact Gram of the generators (not reduced), so that q is right mod 2
    B = [[L.pair(gens[i], gens[j]) for j in range(k)] for i in range(k)]
    modulus = 2 if L.is_even else 1
    counts: dict[Fraction, int] = {}
    for coeffs in product(*(range(d) for d in dg.invariant_factors)):
        q = sum(coeffs[i] * coeffs[j] * B[i][j] for i in range(k) for j in range(k))
        q = _mod(Fraction(q), modulus)
        counts[q] = counts.get(q, 0) + 1
    return tuple(sorted(counts.items()))


@dataclass(frozen=True)
class InvariantFingerprint:
    """Isometry invariants.  Equal fingerprints are necessary, not sufficient,
    for an isometry; for indefinite even lattices of small discriminant they
    determine the genus, which is all the comparisons here rely on.

    ``form_values`` are taken on the Smith generators and depend on that
    choice, so equality compares the full value spectrum instead.
    """

    rank: int
    signature: tuple[int, int]
    parity: str
    invariant_factors: tuple[int, ...]
    form_values: tuple[Fraction, ...] = field(compare=False)
    spectrum: tuple[tuple[Fraction, int], ...] | None = field(default=None, repr=False)

    @property
    def determinant_abs(self) -> int:
        return prod(self.invariant_factors)

    @property
    def unimodular(self) -> bool:
        return not self.invariant_factors


def fingerprint(L: Lattice) -> InvariantFingerprint:
    _require_nondegenerate(L)
    dg = discriminant_group(L)
    return InvariantFingerprint(
        rank=L.rank,
        signature=signature(L),
        parity="even" if L.is_even else "odd",
        invariant_factors=dg.invariant_factors,
        form_values=dg.form_values,
        spectrum=discriminant_form_spectrum(L),
    )


# -- sublattices -------------------------------------------------------------


@dataclass(frozen=True)
class SublatticeEmbedding:
    """Sublattice spanned by ``basis`` rows, written in ambient coordinates."""

    ambient: Lattice
    basis: Matrix
    induced_gram: Matrix = field(init=False)

    def __post_init__(self):
        B = intmat.freeze(self.basis)
        object.__setattr__(self, "basis", B)
        if any(len(r) != self.ambient.rank for r in B):
            raise ValueError("basis rows must have ambient rank length")
        if len(intmat.hermite_normal_form(B, self.ambient.rank)) != len(B):
            raise ValueError("basis rows must be linearly independent")
        G = intmat.matmul(intmat.matmul(B, self.ambient.gram), intmat.transpose(B)) if B else ()
        object.__setattr__(self, "induced_gram", intmat.freeze(G))

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def lattice(self) -> Lattice:
        return Lattice(self.induced_gram, degenerate=intmat.determinant(self.induced_gram) == 0)

    def to_ambient(self, coords: Sequence) -> tuple:
        return intmat.vecmat(coords, self.basis) if self.basis else (0,) * self.ambient.rank

    def coordinates(self, x: Sequence) -> tuple[Fraction, ...] | None:
        """Rational coordinates of an ambient vector, or None if outside the span."""
        return intmat.solve_left(self.basis, x)

    @property
    def is_saturated(self) -> bool:
        return saturation(self).basis == intmat.hermite_normal_form(self.basis, self.ambient.rank)


def saturation(E: SublatticeEmbedding) -> SublatticeEmbedding:
    n = E.ambient.rank
    if not E.basis:
        return E
    return SublatticeEmbedding(E.ambient, intmat.saturate_rows(E.basis, n))


def orthogonal_complement(ambient: Lattice, vectors: Sequence[Sequence[int]]) -> SublatticeEmbedding:
    """Saturated sublattice of ambient vectors orthogonal to all of ``vectors``."""
    vectors = [tuple(v) for v in vectors]
    if not vectors or all(not any(v) for v in vectors):
        raise PreconditionError("orthogonal complement of zero vectors")
    P = intmat.matmul(vectors, ambient.gram)
    return SublatticeEmbedding(ambient, intmat.integer_kernel(P, ambient.rank))


def intersection(E1: SublatticeEmbedding, E2: SublatticeEmbedding) -> SublatticeEmbedding:
    """Saturated intersection of the rational spans of two sublattices."""
    if E1.ambient.gram != E2.ambient.gram:
        raise ValueError("sublattices live in different ambients")
    n = E1.ambient.rank
    return SublatticeEmbedding(E1.ambient, intmat.intersect_saturated(E1.basis, E2.basis, n))


def divisibility(L: Lattice, x: Sequence[int]) -> int:
    """Positive generator of the ideal (x, L)."""
    if not any(x):
        raise PreconditionError("divisibility of the zero vector")
    return intmat.content(intmat.vecmat(x, L.gram))


def is_primitive(L: Lattice, x: Sequence[int]) -> bool:
    if not any(x):
        raise PreconditionError("primitivity of the zero vector")
    return intmat.content(x) == 1


# -- constructions -----------------------------------------------------------


def direct_sum(*lattices: Lattice) -> Lattice:
    n = sum(L.rank for L in lattices)
    G = [[0] * n for _ in range(n)]
    off = 0
    for L in lattices:
        for i in range(L.rank):
            G[off + i][off : off + L.rank] = L.gram[i]
        off += L.rank
    degenerate = any(L.degenerate for L in lattices) and intmat.determinant(G) == 0
    return Lattice(intmat.freeze(G), degenerate=degenerate)


def glue_basis(L: Lattice, glue: Sequence[Sequence]) -> intmat.RationalMatrix:
    """Basis, in L (x) Q coordinates, of the lattice generated by L and ``glue``."""
    glue = [tuple(Fraction(a) for a in g) for g in glue]
    n = L.rank
    for i, g in enumerate(glue):
        if len(g) != n:
            raise ValueError("glue vectors must have length rank(L)")
        if any(c.denominator != 1 for c in intmat.vecmat(g, L.gram)):
            raise GlueError(f"glue not integral: glue vector {i} is not in the dual lattice")
        for j in range(i + 1):
            if Fraction(L.pair(g, glue[j])).denominator != 1:
                raise GlueError(f"glue not integral: pairing of glue vectors {j}, {i}")
    gens = [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)] + glue
    den = 1
    for g in gens:
        for c in g:
            den = den * c.denominator // gcd(den, c.denominator)
    H = intmat.hermite_normal_form([[int(c * den) for c in g] for g in gens], n)
    return tuple(tuple(Fraction(a, den) for a in row) for row in H)


def overlattice_from_glue(L: Lattice, glue: Sequence[Sequence]) -> Lattice:
    """Overlattice generated by L and rational glue vectors in L*.

    Evenness is not required; check ``is_even`` on the result if it matters.
    """
    _require_nondegenerate(L)
    if not glue:
        return L
    B = glue_basis(L, glue)
    G = intmat.matmul(intmat.matmul(B, L.gram), intmat.transpose(B))
    if any(Fraction(a).denominator != 1 for row in G for a in row):
        raise GlueError("glue not integral")
    return Lattice(tuple(tuple(int(a) for a in row) for row in G), L.label)


def mod2_radical(L: Lattice) -> tuple[tuple[int, ...], ...]:
    """Kernel of the Gram matrix over GF(2)."""
    return intmat.kernel_mod2(L.gram, L.rank)


# -- standard lattices ------------------------------------------------------

_E8_EDGES = ((0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3))


def _e8() -> Matrix:
    G = [[2 if i == j else 0 for j in range(8)] for i in range(8)]
    for i, j in _E8_EDGES:
        G[i][j] = G[j][i] = -1
    return intmat.freeze(G)


def scaled(L: Lattice, k: int) -> Lattice:
    return Lattice(tuple(tuple(k * a for a in row) for row in L.gram), degenerate=L.degenerate)


def _mukai(middle: Lattice) -> Lattice:
    """(r, H^2, s) coordinates: H^0 and H^4 pair to -1 with each other."""
    n = middle.rank + 2
    G = [[0] * n for _ in range(n)]
    G[0][n - 1] = G[n - 1][0] = -1
    for i in range(middle.rank):
        G[i + 1][1 : n - 1] = middle.gram[i]
    return Lattice(intmat.freeze(G))


_Z_NAME = re.compile(r"^Z\((-?\d+)\)$")


def standard_lattice(name: str) -> Lattice:
    """Named lattices with a fixed basis order.

    ``mukai_k3`` and ``mukai_abelian`` use Mukai coordinates (r, H^2, s) with
    ((r,x,s),(r',x',s')) = x.x' - r s' - s r'; they are isometric to
    U^4 + E8(-1)^2 and U^4.
    """
    U = Lattice(((0, 1), (1, 0)), "U")
    if name == "U":
        return U
    if name == "E8_minus":
        return scaled(Lattice(_e8()), -1).with_label(name)
    if name == "E8":
        return Lattice(_e8(), name)
    if name == "A2_minus":
        return Lattice(((-2, 1), (1, -2)), name)
    m = _Z_NAME.match(name)
    if m:
        k = int(m.group(1))
        if k == 0:
            raise ValueError("Z(0) is degenerate")
        return Lattice(((k,),), name)
    if name == "k3_lattice":
        e8m = standard_lattice("E8_minus")
        return direct_sum(U, U, U, e8m, e8m).with_label(name)
    if name == "abelian_h2":
        return direct_sum(U, U, U).with_label(name)
    if name == "mukai_k3":
        return _mukai(standard_lattice("k3_lattice")).with_label(name)
    if name == "mukai_abelian":
        return _mukai(standard_lattice("abelian_h2")).with_label(name)
    raise ValueError(f"unknown lattice name: {name!r}")


# -- JSON -------------------------------------------------------------------


def fraction_to_json(q) -> dict:
    q = Fraction(q)
    return {"num": q.numerator, "den": q.denominator}


def fraction_from_json(obj) -> Fraction:
    if isinstance(obj, int):
        return Fraction(obj)
    return Fraction(int(obj["num"]), int(obj["den"]))


def lattice_to_json(L: Lattice) -> dict:
    out = {"rank": L.rank, "gram": [list(r) for r in L.gram]}
    if L.label is not None:
        out["label"] = L.label
    return out


def lattice_from_json(obj: dict, allow_degenerate: bool = False) -> Lattice:
    gram = obj["gram"]
    if int(obj.get("rank", len(gram))) != len(gram):
        raise ValueError("rank does not match the Gram matrix size")
    return Lattice(intmat.freeze(gram), obj.get("label"), degenerate=allow_degenerate)


def fingerprint_to_json(fp: InvariantFingerprint) -> dict:
    return {
        "rank": fp.rank,
        "signature": list(fp.signature),
        "parity": fp.parity,
        "invariant_factors": list(fp.invariant_factors),
        "form_values": [fraction_to_json(q) for q in fp.form_values],
    }
