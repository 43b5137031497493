"""Surface models, Mukai vectors and the lattices v-perp."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable, Sequence

from . import intmat
from .lattice import (
    Lattice,
    PreconditionError,
    SublatticeEmbedding,
    lattice_from_json,
    lattice_to_json,
    orthogonal_complement,
    signature,
    standard_lattice,
)


class SurfaceKind(enum.Enum):
    K3 = "k3"
    ABELIAN = "abelian"


class EmbeddingRequiredError(PreconditionError):
    def __init__(self, msg: str = "full embedding required"):
        super().__init__(msg)


def second_cohomology(kind: SurfaceKind) -> Lattice:
    """H^2(S, Z): U^3 + E8(-1)^2 for K3, U^3 for abelian surfaces."""
    return standard_lattice("k3_lattice" if kind is SurfaceKind.K3 else "abelian_h2")


def full_mukai_lattice(kind: SurfaceKind) -> Lattice:
    return standard_lattice("mukai_k3" if kind is SurfaceKind.K3 else "mukai_abelian")


@dataclass(frozen=True)
class SurfaceModel:
    """Lattice data of a surface: NS(S), optionally embedded in H^2(S, Z).

    ``generic_polarization`` records the assumption that the polarization is
    generic with respect to the Mukai vector in play; it is never verified.
    """

    kind: SurfaceKind
    ns: Lattice
    ns_labels: tuple[str, ...] = ()
    full_embedding: intmat.Matrix | None = None
    generic_polarization: bool = False

    def __post_init__(self):
        if isinstance(self.kind, str):
            object.__setattr__(self, "kind", SurfaceKind(self.kind))
        labels = tuple(self.ns_labels) or tuple(f"h{i}" for i in range(self.ns.rank))
        if len(labels) != self.ns.rank:
            raise ValueError("ns_labels must have one entry per NS basis vector")
        object.__setattr__(self, "ns_labels", labels)
        if self.ns.rank == 0:
            raise PreconditionError("NS lattice must be nonzero")
        if signature(self.ns)[0] != 1:
            raise PreconditionError("NS lattice must have exactly one positive direction")
        if self.full_embedding is not None:
            E = intmat.freeze(self.full_embedding)
            object.__setattr__(self, "full_embedding", E)
            self._check_embedding(E)

    def _check_embedding(self, E: intmat.Matrix) -> None:
        H2 = second_cohomology(self.kind)
        if len(E) != self.ns.rank or any(len(r) != H2.rank for r in E):
            raise PreconditionError(
                f"full_embedding must be {self.ns.rank} x {H2.rank} for a {self.kind.value} surface"
            )
        G = intmat.matmul(intmat.matmul(E, H2.gram), intmat.transpose(E))
        if G != self.ns.gram:
            raise PreconditionError("full_embedding does not preserve the NS Gram matrix")
        if intmat.saturate_rows(E, H2.rank) != intmat.hermite_normal_form(E, H2.rank):
            raise PreconditionError("full_embedding image is not saturated (embedding not primitive)")

    @property
    def rho(self) -> int:
        return self.ns.rank


@dataclass(frozen=True)
class MukaiVector:
    r: int
    c1: tuple[int, ...]
    s: int

    def __post_init__(self):
        object.__setattr__(self, "c1", tuple(int(a) for a in self.c1))

    def coords(self) -> tuple[int, ...]:
        """Coordinates in the algebraic Mukai lattice Z + NS + Z."""
        return (self.r, *self.c1, self.s)

    @classmethod
    def from_coords(cls, x: Sequence[int]) -> "MukaiVector":
        return cls(x[0], tuple(x[1:-1]), x[-1])

    def __add__(self, other: "MukaiVector") -> "MukaiVector":
        if len(self.c1) != len(other.c1):
            raise ValueError("c1 length mismatch")
        return MukaiVector(self.r + other.r, tuple(a + b for a, b in zip(self.c1, other.c1)), self.s + other.s)

    def __mul__(self, k: int) -> "MukaiVector":
        return MukaiVector(k * self.r, tuple(k * a for a in self.c1), k * self.s)

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return any(self.coords())

    def to_json(self) -> dict:
        return {"r": self.r, "c1": list(self.c1), "s": self.s}

    @classmethod
    def from_json(cls, obj: dict) -> "MukaiVector":
        return cls(int(obj["r"]), tuple(int(a) for a in obj["c1"]), int(obj["s"]))


@dataclass(frozen=True)
class ChernCharacter:
    r: int
    c1: tuple[int, ...]
    ch2: int

    def __add__(self, other: "ChernCharacter") -> "ChernCharacter":
        return ChernCharacter(self.r + other.r, tuple(a + b for a, b in zip(self.c1, other.c1)), self.ch2 + other.ch2)


def algebraic_mukai_lattice(M: SurfaceModel) -> Lattice:
    """Z + NS(S) + Z with basis ((1,0,0), NS basis, (0,0,1))."""
    n = M.rho + 2
    G = [[0] * n for _ in range(n)]
    G[0][n - 1] = G[n - 1][0] = -1
    for i in range(M.rho):
        G[i + 1][1 : n - 1] = M.ns.gram[i]
    return Lattice(intmat.freeze(G), "algebraic Mukai lattice")


def _check_dims(M: SurfaceModel, *vs: MukaiVector) -> None:
    for v in vs:
        if len(v.c1) != M.rho:
            raise ValueError(f"c1 has {len(v.c1)} coordinates but NS has rank {M.rho}")


def mukai_pairing(M: SurfaceModel, v: MukaiVector, w: MukaiVector) -> int:
    _check_dims(M, v, w)
    xi = M.ns.pair(v.c1, w.c1)
    return xi - v.r * w.s - v.s * w.r


def mukai_vector_of_sheaf(kind: SurfaceKind, ch: ChernCharacter) -> MukaiVector:
    """ch(F) * sqrt(td(S)); sqrt(td) is (1, 0, 1) on a K3 and 1 on an abelian surface."""
    if kind is SurfaceKind.K3:
        return MukaiVector(ch.r, ch.c1, ch.ch2 + ch.r)
    return MukaiVector(ch.r, ch.c1, ch.ch2)


EffectiveOracle = Callable[[tuple[int, ...]], bool]


def is_mukai_vector(M: SurfaceModel, v: MukaiVector, effective_oracle: EffectiveOracle | None = None) -> bool | None:
    """True/False, or None when rank is 0, c1 != 0 and no effectivity oracle is given."""
    _check_dims(M, v)
    if v.r < 0:
        return False
    if v.r > 0:
        return True
    if any(v.c1):
        if effective_oracle is None:
            return None
        return bool(effective_oracle(v.c1))
    return v.s > 0


def primitive_decomposition(v: MukaiVector) -> tuple[int, MukaiVector]:
    """v = m w with m > 0 and w primitive."""
    m = intmat.content(v.coords())
    if m == 0:
        raise PreconditionError("zero Mukai vector")
    return m, MukaiVector(v.r // m, tuple(a // m for a in v.c1), v.s // m)


@dataclass(frozen=True)
class OLSReport:
    ok: bool
    failures: tuple[str, ...] = field(default=())


def check_ols(M: SurfaceModel, v: MukaiVector) -> OLSReport:
    """Lattice-level conditions for v = 2w, w primitive, w^2 = 2 (+ the rank-zero rule).

    Genericity of the polarization is only recorded as an assumption flag.
    """
    _check_dims(M, v)
    if not v:
        return OLSReport(False, ("v=0",))
    fails = []
    m, w = primitive_decomposition(v)
    if m != 2:
        fails.append(f"m={m}, expected m=2")
    if mukai_pairing(M, w, w) != 2:
        fails.append("w²≠2")
    if w.r == 0 and w.s == 0:
        fails.append("a=0 with r=0")
    if not M.generic_polarization:
        fails.append("generic polarization not assumed")
    return OLSReport(not fails, tuple(fails))


def require_ols(M: SurfaceModel, v: MukaiVector) -> MukaiVector:
    """Return w = v/2, or raise PreconditionError listing what fails."""
    rep = check_ols(M, v)
    if not rep.ok:
        raise PreconditionError("not an OLS triple: " + "; ".join(rep.failures))
    return primitive_decomposition(v)[1]


def v_perp_algebraic(M: SurfaceModel, v: MukaiVector) -> SublatticeEmbedding:
    """v-perp inside Z + NS + Z (the algebraic classes of v-perp)."""
    _check_dims(M, v)
    if not v:
        raise PreconditionError("v must be nonzero")
    return orthogonal_complement(algebraic_mukai_lattice(M), [v.coords()])


def algebraic_embedding(M: SurfaceModel) -> intmat.Matrix:
    """Rows: images of the algebraic Mukai basis in the full Mukai lattice."""
    if M.full_embedding is None:
        raise EmbeddingRequiredError()
    N = second_cohomology(M.kind).rank + 2
    rows = [(1,) + (0,) * (N - 1)]
    rows += [(0, *e, 0) for e in M.full_embedding]
    rows.append((0,) * (N - 1) + (1,))
    return intmat.freeze(rows)


def full_coords(M: SurfaceModel, v: MukaiVector) -> tuple[int, ...]:
    """v in the full Mukai lattice coordinates (r, H^2, s)."""
    _check_dims(M, v)
    return intmat.vecmat(v.coords(), algebraic_embedding(M))


def v_perp_full(M: SurfaceModel, v: MukaiVector) -> SublatticeEmbedding:
    """v-perp inside the full Mukai lattice H*(S, Z)."""
    if M.full_embedding is None:
        raise EmbeddingRequiredError()
    if not v:
        raise PreconditionError("v must be nonzero")
    return orthogonal_complement(full_mukai_lattice(M.kind), [full_coords(M, v)])


# -- JSON -------------------------------------------------------------------


def surface_to_json(M: SurfaceModel) -> dict:
    out = {
        "kind": M.kind.value,
        "ns": lattice_to_json(M.ns),
        "ns_labels": list(M.ns_labels),
        "generic_polarization": M.generic_polarization,
    }
    if M.full_embedding is not None:
        out["full_embedding"] = [list(r) for r in M.full_embedding]
    return out


def surface_from_json(obj: dict) -> SurfaceModel:
    emb = obj.get("full_embedding")
    return SurfaceModel(
        kind=SurfaceKind(obj["kind"]),
        ns=lattice_from_json(obj["ns"]),
        ns_labels=tuple(obj.get("ns_labels", ())),
        full_embedding=intmat.freeze(emb) if emb is not None else None,
        generic_polarization=bool(obj.get("generic_polarization", False)),
    )


def rank_one_model(kind: SurfaceKind | str, degree: int, *, embed: bool = True, generic: bool = True,
                   label: str = "H") -> SurfaceModel:
    """NS = Z.H with H^2 = degree (even, positive), embedded in one U factor as e + (degree/2) f."""
    kind = SurfaceKind(kind)
    if degree <= 0 or degree % 2:
        raise ValueError("degree must be positive and even")
    emb = None
    if embed:
        n = second_cohomology(kind).rank
        emb = ((1, degree // 2) + (0,) * (n - 2),)
    return SurfaceModel(kind, Lattice(((degree,),), "NS"), (label,), emb, generic)

