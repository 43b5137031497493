"""Explicit integral basis changes onto the reference bases of H^2 of the two resolutions."""

from fractions import Fraction

from mukaifact import intmat
from mukaifact.factoriality import gamma_extension
from mukaifact.lattice import Lattice, direct_sum, standard_lattice
from mukaifact.mukai import MukaiVector, rank_one_model, v_perp_full

OG10_BLOCK = ((-6, 3), (3, -2))
K6_BLOCK = ((-2, 2), (2, -4))


def _int_coords(E, x):
    c = E.coordinates(x)
    assert c is not None and all(Fraction(a).denominator == 1 for a in c), x
    return [int(a) for a in c]


def og10_reference():
    """Rows: mu(basis of H^2), Sigma, B in the basis (v-perp basis, glue) of Gamma_v.

    Gamma_v sits in (v-perp)* + Q.sigma.  With delta0 = (1/2, 0, 1/2):
    Sigma = sigma and B = delta0 - sigma/2 = (delta0 + delta) - glue.
    """
    M = rank_one_model("k3", 2)
    V = v_perp_full(M, MukaiVector(2, (0,), -2))
    ext = gamma_extension(V.lattice)
    N = V.ambient.rank
    rows = []
    for i in range(N - 2):
        mu = [0] * N
        mu[i + 1] = 1
        rows.append(_int_coords(V, mu) + [0])
    rows.append(list(ext.sigma))
    delta_amb = intmat.vecmat(ext.delta, V.basis)
    delta0 = [Fraction(1, 2)] + [0] * (N - 2) + [Fraction(1, 2)]
    rows.append(_int_coords(V, [a + b for a, b in zip(delta0, delta_amb)]) + [-1])
    expected = direct_sum(standard_lattice("k3_lattice"), Lattice(OG10_BLOCK))
    return ext.result, intmat.freeze(rows), expected


def k6_reference(V):
    """Rows: mu(basis of H^2), A, B in the basis (v-perp basis, A) of v-perp + Z.A.

    (n, alpha, n) maps to n.B + n.A + mu(alpha), so B = (1, 0, 1) - A.
    """
    N = V.ambient.rank
    rows = []
    for i in range(N - 2):
        mu = [0] * N
        mu[i + 1] = 1
        rows.append(_int_coords(V, mu) + [0])
    rows.append([0] * V.rank + [1])
    rows.append(_int_coords(V, [1] + [0] * (N - 2) + [1]) + [-1])
    expected = direct_sum(standard_lattice("abelian_h2"), Lattice(K6_BLOCK))
    return intmat.freeze(rows), expected


def apply(T, L: Lattice) -> intmat.Matrix:
    return intmat.matmul(intmat.matmul(T, L.gram), intmat.transpose(T))
