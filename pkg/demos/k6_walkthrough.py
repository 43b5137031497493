"""The abelian-surface case: v-perp, the extra (-2) class, and the resolution Betti numbers."""

from mukaifact.factoriality import Target, b2_of_resolution, beauville_lattice, classify, defect_group
from mukaifact.lattice import determinant, fingerprint, signature
from mukaifact.mukai import MukaiVector, rank_one_model, v_perp_full

M = rank_one_model("abelian", 2)
v = MukaiVector(2, (0,), -2)

for target in (Target.MODULI_M, Target.ALBANESE_FIBER_K):
    print(f"{target.value:>2}: {classify(M, v, target).outcome.value}, "
          f"defect {defect_group(M, v, target).invariant_factors}")

V = v_perp_full(M, v).lattice
print("v-perp:", V.rank, signature(V), determinant(V))

B = beauville_lattice(M, v, Target.RESOLUTION_K_TILDE)
print("H2 of the resolution of K:", B.rank, signature(B), determinant(B), fingerprint(B).invariant_factors)

for target in (Target.RESOLUTION_K_TILDE, Target.RESOLUTION_M_TILDE):
    print(f"b2 ({target.value}):", b2_of_resolution(M, v, target))
