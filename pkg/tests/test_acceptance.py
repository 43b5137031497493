"""Acceptance suite: one PASS/FAIL line per criterion, each with its own time budget."""

import random
import time

from conftest import ACCEPTANCE_LINES
from fixtures_maps import apply, k6_reference, og10_reference
from mukaifact import intmat
from mukaifact.factoriality import (
    Outcome,
    Target,
    b2_of_resolution,
    beauville_lattice,
    classify,
    criterion_beta,
    criterion_gamma,
    gamma_extension,
    hv_lattice,
)
from mukaifact.fuzz import case_rng, random_det2_lattice, random_ols_case, random_w2_vector
from mukaifact.lattice import (
    Lattice,
    SublatticeEmbedding,
    determinant,
    discriminant_group,
    fingerprint,
    overlattice_from_glue,
    saturation,
    signature,
    standard_lattice,
)
from mukaifact.mukai import MukaiVector, rank_one_model, v_perp_full

SEED = 20241015


def report(number, title, ok, detail, elapsed, limit):
    within = limit is None or elapsed < limit
    budget = f"{elapsed:.2f} s" + (f" < {limit} s" if limit is not None else "")
    if limit is not None and not within:
        budget = f"{elapsed:.2f} s exceeds {limit} s"
    line = f"[{'PASS' if ok and within else 'FAIL'}] criterion {number} {title}: {detail} ({budget})"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line
    assert within, line


def mv(r, c1, s):
    return MukaiVector(r, tuple(c1), s)


def test_criterion_1_verdict_table():
    t0 = time.perf_counter()
    k3 = rank_one_model("k3", 2)
    ab = rank_one_model("abelian", 2)
    fixtures = [
        ("rank 2, c1 = 0 on degree-2 K3", k3, mv(2, [0], -2), Target.MODULI_M, Outcome.TWO_FACTORIAL),
        ("family n=m=2", rank_one_model("k3", 10), mv(4, [2], 4), Target.MODULI_M, Outcome.LOCALLY_FACTORIAL),
        ("family n=1, m=1", rank_one_model("k3", 4), mv(2, [2], 2), Target.MODULI_M, Outcome.TWO_FACTORIAL),
        ("family n=1, m=2", rank_one_model("k3", 6), mv(2, [2], 4), Target.MODULI_M, Outcome.TWO_FACTORIAL),
        ("abelian OLS, M", ab, mv(2, [0], -2), Target.MODULI_M, Outcome.TWO_FACTORIAL),
        ("abelian OLS, K", ab, mv(2, [0], -2), Target.ALBANESE_FIBER_K, Outcome.TWO_FACTORIAL),
        ("abelian m=3 w²=2, K", ab, mv(3, [0], -3), Target.ALBANESE_FIBER_K, Outcome.LOCALLY_FACTORIAL),
        ("m=1", k3, mv(1, [0], -1), Target.MODULI_M, Outcome.SMOOTH_LOCALLY_FACTORIAL),
        ("w²<0", k3, mv(1, [0], 1), Target.MODULI_M, Outcome.DEGENERATE_EMPTY_OR_POINT),
    ]
    bad = [name for name, M, v, t, want in fixtures if classify(M, v, t).outcome is not want]
    elapsed = time.perf_counter() - t0
    report(1, "verdict table", not bad, f"{len(fixtures) - len(bad)}/{len(fixtures)} fixtures match"
           + (f", mismatched: {bad}" if bad else ""), elapsed, 1)


def test_criterion_2_og10_beauville_lattice():
    t0 = time.perf_counter()
    M = rank_one_model("k3", 2)
    B = beauville_lattice(M, mv(2, [0], -2), Target.RESOLUTION_M_TILDE)
    invariants = (B.rank, signature(B), abs(determinant(B)), B.is_even)
    G, T, expected = og10_reference()
    block_ok = G.gram == B.gram and abs(intmat.determinant(T)) == 1 and apply(T, G) == expected.gram
    ok = invariants == (24, (3, 21), 3, True) and block_ok
    elapsed = time.perf_counter() - t0
    report(2, "OG10 Beauville lattice", ok,
           f"rank {invariants[0]}, signature {invariants[1]}, |det| {invariants[2]}, even {invariants[3]}; "
           f"unimodular basis change to H2(K3) + [[-6,3],[3,-2]] exact: {block_ok}", elapsed, 1)


def test_criterion_3_k6_lattice():
    t0 = time.perf_counter()
    M = rank_one_model("abelian", 2)
    v = mv(2, [0], -2)
    B = beauville_lattice(M, v, Target.RESOLUTION_K_TILDE)
    V = v_perp_full(M, v)
    invariants = (B.rank, signature(B), abs(determinant(B)))
    split = B.gram == intmat.freeze(
        [list(r) + [0] for r in V.induced_gram] + [[0] * V.rank + [-2]])
    T, expected = k6_reference(V)
    iso = abs(intmat.determinant(T)) == 1 and apply(T, B) == expected.gram
    ok = invariants == (8, (3, 5), 4) and split and iso
    elapsed = time.perf_counter() - t0
    report(3, "K6 lattice", ok,
           f"rank {invariants[0]}, signature {invariants[1]}, |det| {invariants[2]}; "
           f"v-perp + Z(-2) split: {split}; A²=-2, (A,B)=2, B²=-4 isometry: {iso}", elapsed, 1)


def test_criterion_4_hv_reconstruction():
    t0 = time.perf_counter()
    failures, total = [], 0
    for name in ("mukai_k3", "mukai_abelian"):
        ambient = standard_lattice(name)
        sig = signature(ambient)
        for i in range(100):
            w = random_w2_vector(case_rng(SEED + 4, f"{name}:{i}"), ambient)
            H = hv_lattice(ambient, w).lattice
            total += 1
            if not (H.is_even and abs(determinant(H)) == 1 and H.rank == ambient.rank and signature(H) == sig):
                failures.append((name, w))
    elapsed = time.perf_counter() - t0
    report(4, "H_v reconstruction", not failures,
           f"{total} random w (100 K3, 100 abelian), {len(failures)} failures", elapsed, 30)


def test_criterion_5_criterion_equivalence():
    t0 = time.perf_counter()
    disagreements, n_true = [], 0
    cases = 100
    for i in range(cases):
        M, w = random_ols_case(case_rng(SEED + 5, i))
        g = criterion_gamma(M, w)
        n_true += g
        if criterion_beta(M, w * 2) != g:
            disagreements.append(i)
    elapsed = time.perf_counter() - t0
    report(5, "criterion equivalence", not disagreements,
           f"{cases} embedded models ({n_true} with gamma true), {len(disagreements)} disagreements", elapsed, 60)


def test_criterion_6_example_family_sweep():
    t0 = time.perf_counter()
    wrong = []
    for n in range(1, 7):
        for m in range(1, 7):
            M = rank_one_model("k3", 2 + 2 * n * m, embed=False, label="xi")
            got = classify(M, mv(2 * n, [2], 2 * m)).outcome
            want = Outcome.LOCALLY_FACTORIAL if n % 2 == 0 and m % 2 == 0 else Outcome.TWO_FACTORIAL
            if got is not want:
                wrong.append((n, m))
    elapsed = time.perf_counter() - t0
    report(6, "example-family sweep", not wrong, f"36 pairs (n, m), {len(wrong)} wrong", elapsed, 1)


def test_criterion_7_gamma_extension_law():
    t0 = time.perf_counter()
    failures = []
    for i in range(200):
        L = random_det2_lattice(case_rng(SEED + 7, i))
        ext = gamma_extension(L)
        R = ext.result
        if not (R.is_even and 4 * determinant(R) == -6 * determinant(L) and R.norm(ext.sigma) == -6):
            failures.append(i)
    fixture = gamma_extension(standard_lattice("Z(-2)"))
    fixture_ok = fixture.result.gram == ((-2, -1), (-1, -2)) and fixture.result.norm(fixture.sigma) == -6
    elapsed = time.perf_counter() - t0
    report(7, "Gamma-extension law", not failures and fixture_ok,
           f"200 random lattices, {len(failures)} failures; Z(-2) -> A2(-1): {fixture_ok}", elapsed, 10)


def _random_square(rng, n, bound=9):
    return [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(n)]


def _random_symmetric(rng, n, bound=5):
    G = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            G[i][j] = G[j][i] = rng.randint(-bound, bound)
    return G


def test_criterion_8_lattice_core_properties():
    t0 = time.perf_counter()
    rng = random.Random(SEED + 8)
    counts = dict.fromkeys(("snf", "saturation", "disc", "overlattice"), 0)
    failures = []

    while counts["snf"] < 200:
        m, n = rng.randint(1, 6), rng.randint(1, 6)
        A = [[rng.randint(-20, 20) for _ in range(n)] for _ in range(m)]
        snf = intmat.smith_normal_form(A)
        d = [x for x in snf.diagonal if x]
        ok = (intmat.matmul(intmat.matmul(snf.U, A), snf.V) == snf.D
              and abs(intmat.determinant(snf.U)) == 1 and abs(intmat.determinant(snf.V)) == 1
              and all(b % a == 0 for a, b in zip(d, d[1:])))
        if m == n:
            prod = 1
            for x in snf.diagonal:
                prod *= x
            ok = ok and prod == abs(intmat.determinant(A))
        counts["snf"] += 1
        failures += [] if ok else [("snf", A)]

    ambient = standard_lattice("mukai_abelian")
    while counts["saturation"] < 200:
        k = rng.randint(1, 4)
        rows = [[rng.randint(-3, 3) * rng.choice((1, 2, 3)) for _ in range(8)] for _ in range(k)]
        if len(intmat.hermite_normal_form(rows, 8)) != k:
            continue
        S = saturation(SublatticeEmbedding(ambient, rows))
        ok = saturation(S).basis == S.basis and S.rank == k and all(S.coordinates(r) is not None for r in rows)
        counts["saturation"] += 1
        failures += [] if ok else [("saturation", rows)]

    while counts["disc"] < 200:
        G = _random_symmetric(rng, rng.randint(1, 5))
        if intmat.determinant(G) == 0:
            continue
        L = Lattice(intmat.freeze(G))
        counts["disc"] += 1
        if discriminant_group(L).order != abs(determinant(L)):
            failures.append(("disc", G))

    while counts["overlattice"] < 200:
        # L = P M P^T sits in M with index |det P|; glue L back up to M with the rows of P^-1
        n = rng.randint(1, 4)
        G = _random_symmetric(rng, n, 3)
        P = _random_square(rng, n, 3)
        k = intmat.determinant(P)
        if intmat.determinant(G) == 0 or k == 0 or abs(k) > 50:
            continue
        L = Lattice(intmat.matmul(intmat.matmul(P, G), intmat.transpose(P)))
        glue = intmat.rational_inverse(P)
        out = overlattice_from_glue(L, glue)
        counts["overlattice"] += 1
        ok = determinant(out) * k * k == determinant(L) and fingerprint(out) == fingerprint(Lattice(intmat.freeze(G)))
        failures += [] if ok else [("overlattice", G, P)]

    elapsed = time.perf_counter() - t0
    detail = ", ".join(f"{name} {c}" for name, c in counts.items())
    report(8, "lattice_core property suite", not failures, f"{detail} instances, {len(failures)} failures", elapsed, 30)


def test_criterion_9_betti_numbers():
    t0 = time.perf_counter()
    v = mv(2, [0], -2)
    got = (
        b2_of_resolution(rank_one_model("k3", 2), v, Target.RESOLUTION_M_TILDE),
        b2_of_resolution(rank_one_model("abelian", 2), v, Target.RESOLUTION_K_TILDE),
        b2_of_resolution(rank_one_model("abelian", 2), v, Target.RESOLUTION_M_TILDE),
    )
    elapsed = time.perf_counter() - t0
    report(9, "Betti fixtures", got == (24, 8, 36), f"b2 = {got[0]} (K3 M~), {got[1]} (abelian K~), {got[2]} (abelian M~)",
           elapsed, None)
