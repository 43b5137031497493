"""Seeded random models and the criterion cross-check harness.

Every case draws from its own ``random.Random(f"{seed}:{index}")`` so a case
can be replayed alone and results do not depend on evaluation order.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import gcd

from . import intmat
from .factoriality import criterion_beta, criterion_gamma, hv_overlattice
from .lattice import (
    Lattice,
    direct_sum,
    divisibility,
    fingerprint,
    signature,
    standard_lattice,
)
from .mukai import MukaiVector, SurfaceKind, SurfaceModel, full_mukai_lattice, mukai_pairing, second_cohomology


def case_rng(seed: int, index: int) -> random.Random:
    return random.Random(f"{seed}:{index}")


def _divisors(n: int) -> list[int]:
    n = abs(n)
    return [d for d in range(1, n + 1) if n % d == 0]


def random_unimodular(rng: random.Random, n: int, steps: int | None = None, bound: int = 2) -> intmat.Matrix:
    """Product of random elementary integer row operations (determinant +-1)."""
    P = [list(r) for r in intmat.identity(n)]
    if n < 2:
        return intmat.freeze(P)
    for _ in range(steps if steps is not None else 2 * n):
        i, j = rng.sample(range(n), 2)
        q = rng.choice([k for k in range(-bound, bound + 1) if k])
        P[i] = [a + q * b for a, b in zip(P[i], P[j])]
    if rng.random() < 0.5:
        i = rng.randrange(n)
        P[i] = [-a for a in P[i]]
    return intmat.freeze(P)


def transform(L: Lattice, P) -> Lattice:
    return Lattice(intmat.matmul(intmat.matmul(P, L.gram), intmat.transpose(P)), L.label)


# -- NS models --------------------------------------------------------------


def _random_h2_vector(rng: random.Random, n: int, density: float = 0.3, bound: int = 2) -> list[int]:
    return [rng.randint(-bound, bound) if rng.random() < density else 0 for _ in range(n)]


def random_embedded_model(rng: random.Random, kind: SurfaceKind = SurfaceKind.K3, max_rank: int = 2,
                          bound: int = 2) -> SurfaceModel:
    """Random NS of rank <= max_rank, primitively embedded in H^2, signature (1, rho-1)."""
    H2 = second_cohomology(kind)
    n = H2.rank
    while True:
        rho = rng.randint(1, max_rank)
        vecs = []
        for _ in range(rho):
            x = _random_h2_vector(rng, n, bound=bound)
            # keep one hyperbolic coordinate nonzero so positive classes are common
            x[0] = rng.randint(1, bound)
            x[1] = rng.randint(-bound, 3 * bound)
            vecs.append(x)
        E = intmat.saturate_rows(vecs, n)
        if len(E) != rho:
            continue
        G = intmat.matmul(intmat.matmul(E, H2.gram), intmat.transpose(E))
        if intmat.determinant(G) == 0:
            continue
        ns = Lattice(G, "NS")
        if signature(ns) != (1, rho - 1):
            continue
        return SurfaceModel(kind, ns, tuple(f"h{i}" for i in range(rho)), E, True)


def gamma_by_gcd(M: SurfaceModel, w: MukaiVector) -> bool:
    """gcd(r, s, div_NS(xi)) == 1, the closed form of the gamma criterion."""
    d = divisibility(M.ns, w.c1) if any(w.c1) else 0
    return gcd(gcd(w.r, w.s), d) == 1


def w_candidates(M: SurfaceModel, box: int = 3) -> list[MukaiVector]:
    """All primitive w = (r, xi, s) with w^2 = 2, r >= 0, xi in a small coordinate box."""
    out = []
    rho = M.rho

    def boxes(k):
        if k == 0:
            yield ()
            return
        for t in boxes(k - 1):
            for a in range(-box, box + 1):
                yield t + (a,)

    for xi in boxes(rho):
        k2 = M.ns.norm(xi)
        rs = (k2 - 2) // 2
        if rs == 0:
            pairs = [(r, 0) for r in range(1, box + 1)] + [(0, s) for s in range(-box, box + 1) if s]
        else:
            pairs = [(r, rs // r) for r in _divisors(rs)]
        for r, s in pairs:
            if r * s != rs:
                continue
            if intmat.content((r, *xi, s)) != 1:
                continue
            if r == 0 and s == 0:
                continue
            out.append(MukaiVector(r, xi, s))
    return out


def random_ols_case(rng: random.Random, max_rank: int = 2) -> tuple[SurfaceModel, MukaiVector]:
    """A random embedded K3 model and primitive w^2 = 2; half the draws aim for gamma = False."""
    want = rng.random() < 0.5
    while True:
        M = random_embedded_model(rng, SurfaceKind.K3, max_rank)
        cands = w_candidates(M)
        if not cands:
            continue
        pool = [w for w in cands if gamma_by_gcd(M, w) == want] or cands
        return M, rng.choice(pool)


def random_w2_vector(rng: random.Random, ambient: Lattice, bound: int = 2) -> tuple[int, ...]:
    """Random primitive (r, x, s) with square 2 in a Mukai lattice with (r, H^2, s) coordinates."""
    n = ambient.rank
    mid = Lattice(tuple(row[1:-1] for row in ambient.gram[1:-1]))
    while True:
        x = _random_h2_vector(rng, n - 2, density=0.4, bound=bound)
        rs = (mid.norm(x) - 2) // 2
        if rs == 0:
            r, s = rng.choice([(0, rng.choice([-3, -2, -1, 1, 2, 3])), (rng.randint(1, 3), 0)])
        else:
            r = rng.choice(_divisors(rs))
            s = rs // r
            if rng.random() < 0.5:
                r, s = -r, -s
        w = (r, *x, s)
        if intmat.content(w) == 1 and ambient.norm(w) == 2:
            return w


_E7_EDGES = ((0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (1, 3))


def _e7() -> Lattice:
    G = [[2 * (i == j) for j in range(7)] for i in range(7)]
    for i, j in _E7_EDGES:
        G[i][j] = G[j][i] = -1
    return Lattice(intmat.freeze(G), "E7")


def random_det2_lattice(rng: random.Random) -> Lattice:
    """Even, |det| = 2, discriminant form -1/2 mod 2, in a scrambled basis."""
    core = rng.choice([standard_lattice("Z(-2)"), _e7()])
    extra = [rng.choice(["U", "U", "E8_minus", "E8"]) for _ in range(rng.randint(0, 2))]
    L = direct_sum(core, *(standard_lattice(x) for x in extra))
    return transform(L, random_unimodular(rng, L.rank, steps=L.rank + 4, bound=1)).with_label(None)


# -- harness ----------------------------------------------------------------


@dataclass(frozen=True)
class FuzzCase:
    index: int
    ns_gram: intmat.Matrix
    w: MukaiVector
    gamma: bool
    beta: bool
    hv_ok: bool

    @property
    def ok(self) -> bool:
        return self.gamma == self.beta and self.hv_ok


@dataclass(frozen=True)
class FuzzReport:
    seed: int
    cases: tuple[FuzzCase, ...] = field(default=())

    @property
    def disagreements(self) -> tuple[FuzzCase, ...]:
        return tuple(c for c in self.cases if c.gamma != c.beta)

    @property
    def hv_failures(self) -> tuple[FuzzCase, ...]:
        return tuple(c for c in self.cases if not c.hv_ok)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.cases)

    def to_json(self) -> dict:
        return {
            "seed": self.seed,
            "cases": len(self.cases),
            "gamma_true": sum(c.gamma for c in self.cases),
            "disagreements": [_case_json(c) for c in self.disagreements],
            "hv_failures": [_case_json(c) for c in self.hv_failures],
            "ok": self.ok,
        }


def _case_json(c: FuzzCase) -> dict:
    return {
        "index": c.index,
        "ns_gram": [list(r) for r in c.ns_gram],
        "w": c.w.to_json(),
        "gamma": c.gamma,
        "beta": c.beta,
        "hv_ok": c.hv_ok,
    }


def run_case(seed: int, index: int) -> FuzzCase:
    rng = case_rng(seed, index)
    M, w = random_ols_case(rng)
    assert mukai_pairing(M, w, w) == 2
    g = criterion_gamma(M, w)
    b = criterion_beta(M, w * 2)
    H = hv_overlattice(M, w)
    hv_ok = fingerprint(H) == fingerprint(full_mukai_lattice(M.kind))
    return FuzzCase(index, M.ns.gram, w, g, b, hv_ok)


def run_fuzz(seed: int = 0, cases: int = 100) -> FuzzReport:
    return FuzzReport(seed, tuple(run_case(seed, i) for i in range(cases)))
