"""Walk through the rank-two, c1 = 0 case on a degree-2 K3: verdict, v-perp, the index-2 extension."""

from mukaifact import intmat
from mukaifact.factoriality import Target, beauville_lattice, classify, defect_group, gamma_extension
from mukaifact.lattice import determinant, fingerprint, signature
from mukaifact.mukai import MukaiVector, rank_one_model, v_perp_full


def show(name, L):
    fp = fingerprint(L)
    print(f"{name:>12}: rank {L.rank}, signature {signature(L)}, det {determinant(L)}, "
          f"{'even' if L.is_even else 'odd'}, discriminant {fp.invariant_factors}")


def main():
    M = rank_one_model("k3", 2)
    v = MukaiVector(2, (0,), -2)

    verdict = classify(M, v)
    print("verdict:", verdict.outcome.value)
    for step in verdict.trace:
        print(f"  {step.rule}: {step.anchor}")
    print("defect group:", defect_group(M, v).invariant_factors)

    V = v_perp_full(M, v)
    show("v-perp", V.lattice)

    ext = gamma_extension(V.lattice)
    show("extension", ext.result)
    delta, half = ext.glue
    support = {i: str(x) for i, x in enumerate(delta) if x}
    print(f"  glue = delta + {half}.sigma, delta supported at {support}")
    print("  sigma^2 =", ext.result.norm(ext.sigma))
    assert 4 * determinant(ext.result) == -6 * determinant(V.lattice)

    B = beauville_lattice(M, v, Target.RESOLUTION_M_TILDE)
    print("resolution H2 basis matches the extension:", B.gram == ext.result.gram)
    print("determinant of B:", intmat.determinant(B.gram))


if __name__ == "__main__":
    main()
