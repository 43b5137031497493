"""Index of factoriality of M_v and K_v, and the lattices behind it.

The verdict table needs only the algebraic Mukai lattice.  The lattice
constructions (Gamma_v, H_v, Beauville lattices) and the mod-2 criterion need
a primitive embedding of NS(S) into H^2(S, Z).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from . import intmat
from .lattice import (
    Lattice,
    PreconditionError,
    SublatticeEmbedding,
    determinant,
    direct_sum,
    discriminant_group,
    divisibility,
    glue_basis,
    intersection,
    orthogonal_complement,
    overlattice_from_glue,
    standard_lattice,
)
from .mukai import (
    MukaiVector,
    EmbeddingRequiredError,
    SurfaceKind,
    SurfaceModel,
    algebraic_embedding,
    algebraic_mukai_lattice,
    full_coords,
    full_mukai_lattice,
    is_mukai_vector,
    mukai_pairing,
    primitive_decomposition,
    require_ols,
    v_perp_algebraic,
    v_perp_full,
)


class Target(enum.Enum):
    MODULI_M = "m"
    ALBANESE_FIBER_K = "k"
    RESOLUTION_M_TILDE = "m-tilde"
    RESOLUTION_K_TILDE = "k-tilde"


class Outcome(enum.Enum):
    DEGENERATE_EMPTY_OR_POINT = "DegenerateEmptyOrPoint"
    SMOOTH_LOCALLY_FACTORIAL = "SmoothLocallyFactorial"
    LOCALLY_FACTORIAL = "LocallyFactorial"
    TWO_FACTORIAL = "TwoFactorial"
    INDETERMINATE_ASSUMPTION_MISSING = "IndeterminateAssumptionMissing"


@dataclass(frozen=True)
class TraceStep:
    rule: str
    anchor: str


@dataclass(frozen=True)
class Verdict:
    outcome: Outcome
    trace: tuple[TraceStep, ...]

    def to_json(self) -> dict:
        return {
            "outcome": self.outcome.value,
            "trace": [{"rule": t.rule, "anchor": t.anchor} for t in self.trace],
        }


_K_TARGETS = (Target.ALBANESE_FIBER_K, Target.RESOLUTION_K_TILDE)


def _check_target(M: SurfaceModel, target: Target) -> None:
    if M.kind is SurfaceKind.K3 and target in _K_TARGETS:
        raise PreconditionError(f"target {target.value!r} only exists for abelian surfaces")


def classify(M: SurfaceModel, v: MukaiVector, target: Target = Target.MODULI_M,
             effective_oracle=None) -> Verdict:
    target = Target(target)
    _check_target(M, target)
    if not v:
        raise PreconditionError("v must be nonzero")
    trace: list[TraceStep] = []
    if not M.generic_polarization:
        trace.append(TraceStep("assumption-generic", "all verdicts assume a v-generic polarization; flag not set"))
        return Verdict(Outcome.INDETERMINATE_ASSUMPTION_MISSING, tuple(trace))
    mv = is_mukai_vector(M, v, effective_oracle)
    if mv is False:
        raise PreconditionError("not a Mukai vector (rank < 0, or rank 0 with c1 = 0 and s <= 0, or c1 not effective)")
    if mv is None:
        trace.append(TraceStep("assumption-effective", "rank 0 with c1 != 0 needs an effectivity oracle for c1"))
        return Verdict(Outcome.INDETERMINATE_ASSUMPTION_MISSING, tuple(trace))

    m, w = primitive_decomposition(v)
    w2 = mukai_pairing(M, w, w)
    trace.append(TraceStep("decompose", f"v = {m}·w with w primitive, w² = {w2}"))

    if target in (Target.RESOLUTION_M_TILDE, Target.RESOLUTION_K_TILDE):
        require_ols(M, v)
        trace.append(TraceStep("resolution-smooth", "the symplectic resolution of an OLS moduli space is smooth"))
        return Verdict(Outcome.SMOOTH_LOCALLY_FACTORIAL, tuple(trace))

    if w2 < 0:
        trace.append(TraceStep("w2-negative", "w² < 0: M_v is empty or a single point"))
        return Verdict(Outcome.DEGENERATE_EMPTY_OR_POINT, tuple(trace))
    if m == 1:
        trace.append(TraceStep("m1-smooth", "m = 1, w² ≥ 0: every semistable sheaf is stable, M_v is smooth"))
        return Verdict(Outcome.SMOOTH_LOCALLY_FACTORIAL, tuple(trace))
    if w2 == 0:
        if target is Target.ALBANESE_FIBER_K:
            anchor = "m ≥ 2, w² = 0: K_v is the fibre over 0 of the sum map Sym^m(M_w) → M_w, which is 2-factorial"
        else:
            anchor = "m ≥ 2, w² = 0: M_v ≅ Sym^m(M_w), and symmetric products of surfaces are 2-factorial"
        trace.append(TraceStep("w2-zero-symmetric-product", anchor))
        return Verdict(Outcome.TWO_FACTORIAL, tuple(trace))
    if m == 2 and w2 == 2:
        require_ols(M, v)
        if M.kind is SurfaceKind.ABELIAN:
            trace.append(TraceStep("ols-abelian", "OLS triple on an abelian surface: M_v and K_v are 2-factorial"))
            return Verdict(Outcome.TWO_FACTORIAL, tuple(trace))
        if criterion_gamma(M, w):
            trace.append(TraceStep("ols-k3-gamma", "OLS triple on a K3: some algebraic γ has (γ, w) = 1, so M_v is 2-factorial"))
            return Verdict(Outcome.TWO_FACTORIAL, tuple(trace))
        trace.append(TraceStep("ols-k3-gamma", "OLS triple on a K3: (γ, w) is even for all algebraic γ, so M_v is locally factorial"))
        return Verdict(Outcome.LOCALLY_FACTORIAL, tuple(trace))
    trace.append(TraceStep("kls", "m = 2, w² ≥ 4 or m ≥ 3, w² ≥ 2: locally factorial"))
    return Verdict(Outcome.LOCALLY_FACTORIAL, tuple(trace))


def _require_w(M: SurfaceModel, w: MukaiVector) -> None:
    if not w or intmat.content(w.coords()) != 1:
        raise PreconditionError("w must be primitive")
    if mukai_pairing(M, w, w) != 2:
        raise PreconditionError("w² must be 2")


def criterion_gamma(M: SurfaceModel, w: MukaiVector) -> bool:
    """Is there an algebraic class pairing to 1 with w?"""
    _require_w(M, w)
    return divisibility(algebraic_mukai_lattice(M), w.coords()) == 1


def gamma_witness(M: SurfaceModel, w: MukaiVector) -> MukaiVector | None:
    """An algebraic class with (gamma, w) = 1, or None when none exists."""
    _require_w(M, w)
    A = algebraic_mukai_lattice(M)
    pairings = intmat.vecmat(w.coords(), A.gram)
    g, coeffs = 0, [0] * len(pairings)
    for i, p in enumerate(pairings):
        g2, a, b = _xgcd(g, p)
        coeffs = [a * c for c in coeffs]
        coeffs[i] = b
        g = g2
    if g != 1:
        return None
    return MukaiVector.from_coords(coeffs)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with a x + b y = g >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def algebraic_part(M: SurfaceModel, V: SublatticeEmbedding) -> SublatticeEmbedding:
    """V intersected with the span of the algebraic classes, saturated."""
    A = SublatticeEmbedding(V.ambient, algebraic_embedding(M))
    return intersection(V, A)


def beta_witness(M: SurfaceModel, v: MukaiVector) -> tuple[int, ...] | None:
    """A primitive algebraic beta in v-perp with (beta, v-perp) in 2Z, in full coordinates."""
    require_ols(M, v)
    V = v_perp_full(M, v)
    Valg = algebraic_part(M, V)
    G = V.ambient.gram
    P = intmat.matmul(intmat.matmul(Valg.basis, G), intmat.transpose(V.basis))
    # c . P = 0 mod 2  <=>  c-combination of the algebraic basis pairs evenly with all of V
    ker = intmat.kernel_mod2(intmat.transpose(P), Valg.rank)
    if not ker:
        return None
    c = list(ker[0])
    # odd content keeps beta outside 2 V_alg; dividing by it leaves the pairings even
    n = intmat.content(c)
    assert n % 2 == 1
    c = [a // n for a in c]
    return Valg.to_ambient(c)


def criterion_beta(M: SurfaceModel, v: MukaiVector) -> bool:
    """Mod-2 criterion on v-perp: needs the full embedding."""
    return beta_witness(M, v) is not None


# -- Gamma_v ----------------------------------------------------------------


@dataclass(frozen=True)
class GammaExtension:
    """Index-2 extension of base + Z.sigma, sigma^2 = -6, glued by (delta, sigma/2).

    ``result`` has basis (base basis, glue); ``sigma`` gives sigma's
    coordinates in that basis.
    """

    base: Lattice
    delta: tuple[Fraction, ...]
    result: Lattice
    sigma: tuple[int, ...]

    @property
    def glue(self) -> tuple[tuple[Fraction, ...], Fraction]:
        return self.delta, Fraction(1, 2)


SIGMA_SQUARE = -6


def gamma_extension(L: Lattice) -> GammaExtension:
    if not L.is_even:
        raise PreconditionError("base lattice must be even")
    det = determinant(L)
    if abs(det) != 2:
        raise PreconditionError("discriminant group not Z/2")
    dg = discriminant_group(L)
    delta = dg.generators[0]
    if dg.form_values[0] != Fraction(3, 2):
        raise PreconditionError("extension would be odd: discriminant form value must be -1/2 mod 2")
    cross = intmat.vecmat(delta, L.gram)
    g2 = L.norm(delta) + Fraction(SIGMA_SQUARE, 4)
    assert all(Fraction(c).denominator == 1 for c in cross) and Fraction(g2).denominator == 1
    G = [list(row) + [int(cross[i])] for i, row in enumerate(L.gram)]
    G.append([int(c) for c in cross] + [int(g2)])
    result = Lattice(intmat.freeze(G), "Gamma")
    # sigma = 2 * glue - 2 * delta, and 2 delta lies in L
    sigma = tuple(int(-2 * d) for d in delta) + (2,)
    assert result.norm(sigma) == SIGMA_SQUARE and 4 * determinant(result) == SIGMA_SQUARE * det
    return GammaExtension(L, delta, result, sigma)


# -- H_v --------------------------------------------------------------------


@dataclass(frozen=True)
class HvOverlattice:
    """(v-perp) + Z.w glued by (delta, w/2).

    ``basis`` is the overlattice basis in the ambient coordinates.
    """

    perp: SublatticeEmbedding
    w: tuple[int, ...]
    lattice: Lattice
    basis: intmat.RationalMatrix


def hv_lattice(ambient: Lattice, w) -> HvOverlattice:
    """Rebuild the ambient as an index-2 overlattice of w-perp + Z.w (needs w^2 = 2)."""
    w = tuple(w)
    if not any(w) or intmat.content(w) != 1:
        raise PreconditionError("w must be primitive")
    if ambient.norm(w) != 2:
        raise PreconditionError("w² must be 2")
    P = orthogonal_complement(ambient, [w])
    base = direct_sum(P.lattice, Lattice(((2,),)))
    dg = discriminant_group(P.lattice)
    if dg.invariant_factors != (2,):
        raise PreconditionError("w-perp must have discriminant group Z/2")
    glue = tuple(dg.generators[0]) + (Fraction(1, 2),)
    H = overlattice_from_glue(base, [glue])
    B = glue_basis(base, [glue])
    embed = tuple(P.basis) + (w,)
    amb_basis = intmat.matmul(B, embed)
    return HvOverlattice(P, w, H.with_label("H_v"), amb_basis)


def hv_overlattice(M: SurfaceModel, w: MukaiVector) -> Lattice:
    _require_w(M, w)
    if M.full_embedding is None:
        raise EmbeddingRequiredError()
    return hv_lattice(full_mukai_lattice(M.kind), full_coords(M, w)).lattice


# -- Beauville lattices -----------------------------------------------------


def beauville_lattice(M: SurfaceModel, v: MukaiVector, target: Target) -> Lattice:
    """Lattice of H^2 of the (resolved) moduli space, as a Gram matrix."""
    target = Target(target)
    require_ols(M, v)
    k3 = M.kind is SurfaceKind.K3
    if k3 and target is Target.RESOLUTION_M_TILDE:
        return gamma_extension(v_perp_full(M, v).lattice).result.with_label("H2(M~_v)")
    if not k3 and target is Target.RESOLUTION_K_TILDE:
        return direct_sum(v_perp_full(M, v).lattice, standard_lattice("Z(-2)")).with_label("H2(K~_v)")
    if k3 and target is Target.MODULI_M:
        return v_perp_full(M, v).lattice.with_label("H2(M_v)")
    if not k3 and target is Target.ALBANESE_FIBER_K:
        return v_perp_full(M, v).lattice.with_label("H2(K_v)")
    raise PreconditionError(f"no Beauville lattice for target {target.value!r} on a {M.kind.value} surface")


def picard_lattice(M: SurfaceModel, v: MukaiVector) -> Lattice:
    """Pic(M_v) (K3) or Pic(K_v) (abelian): the algebraic part of v-perp."""
    require_ols(M, v)
    label = "Pic(M_v)" if M.kind is SurfaceKind.K3 else "Pic(K_v)"
    return v_perp_algebraic(M, v).lattice.with_label(label)


# -- defect groups ----------------------------------------------------------


@dataclass(frozen=True)
class DefectGroup:
    """Invariant factors of A^1/Pic; () is trivial, (2,) is Z/2."""

    invariant_factors: tuple[int, ...]

    @property
    def order(self) -> int:
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out


def defect_group(M: SurfaceModel, v: MukaiVector, target: Target = Target.MODULI_M) -> DefectGroup:
    target = Target(target)
    _check_target(M, target)
    w = require_ols(M, v)
    if target in (Target.RESOLUTION_M_TILDE, Target.RESOLUTION_K_TILDE):
        return DefectGroup(())
    if M.kind is SurfaceKind.ABELIAN:
        return DefectGroup((2,))
    return DefectGroup((2,) if criterion_gamma(M, w) else ())


def defect_group_from_lattices(M: SurfaceModel, v: MukaiVector) -> DefectGroup:
    """(Gamma_v)^{1,1} / ((v-perp)^{1,1} + Z.sigma), computed directly (K3, embedded)."""
    if M.kind is not SurfaceKind.K3:
        raise PreconditionError("defined for K3 surfaces")
    require_ols(M, v)
    V = v_perp_full(M, v)
    ext = gamma_extension(V.lattice)
    n = V.rank
    # Gamma coordinates (c, t) have v-perp (x) Q component c.V + t.delta;
    # it is algebraic iff it is dot-orthogonal to the kernel of the algebraic embedding
    K_alg = intmat.integer_kernel(algebraic_embedding(M))
    rows = list(V.basis) + [intmat.vecmat(ext.delta, V.basis)]
    cond = [[int(2 * x) for x in r] for r in intmat.matmul(rows, intmat.transpose(K_alg))]
    gamma_alg = intmat.integer_kernel(intmat.transpose(cond))
    perp_alg = intmat.integer_kernel(intmat.transpose(cond[:n]))
    sub = [tuple(r) + (0,) for r in perp_alg] + [ext.sigma]
    coords = []
    for x in sub:
        c = intmat.solve_left(gamma_alg, x)
        assert c is not None and all(a.denominator == 1 for a in c)
        coords.append([int(a) for a in c])
    snf = intmat.smith_normal_form(coords)
    assert snf.rank == len(gamma_alg)
    return DefectGroup(tuple(d for d in snf.diagonal if d != 1))


# -- Betti numbers ----------------------------------------------------------

_ABELIAN_SURFACE_BETTI = (1, 4, 6, 4, 1)


def _kunneth_b2(a, b) -> int:
    return sum(a[i] * b[2 - i] for i in range(3))


def b2_of_resolution(M: SurfaceModel, v: MukaiVector, target: Target) -> int:
    """Second Betti number of the symplectic resolution."""
    target = Target(target)
    require_ols(M, v)
    perp_rank = full_mukai_lattice(M.kind).rank - 1
    if M.kind is SurfaceKind.K3 and target is Target.RESOLUTION_M_TILDE:
        return perp_rank + 1
    if M.kind is SurfaceKind.ABELIAN and target is Target.RESOLUTION_K_TILDE:
        return perp_rank + 1
    if M.kind is SurfaceKind.ABELIAN and target is Target.RESOLUTION_M_TILDE:
        # b2(S x S^) + b2(K~_v): the Albanese fibration splits H^2 rationally
        return _kunneth_b2(_ABELIAN_SURFACE_BETTI, _ABELIAN_SURFACE_BETTI) + perp_rank + 1
    raise PreconditionError(f"no symplectic resolution for target {target.value!r} on a {M.kind.value} surface")

