"""Sweep v = (2n, xi, 2m) on a K3 with NS = Z.xi, xi^2 = 2 + 2nm, and print the verdict grid."""

import argparse

from mukaifact.factoriality import classify
from mukaifact.mukai import MukaiVector, rank_one_model

SHORT = {"TwoFactorial": "2F", "LocallyFactorial": "LF"}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max", type=int, default=6)
    args = ap.parse_args()

    print("n\\m " + " ".join(f"{m:>3}" for m in range(1, args.max + 1)))
    for n in range(1, args.max + 1):
        cells = []
        for m in range(1, args.max + 1):
            M = rank_one_model("k3", 2 + 2 * n * m, embed=False, label="xi")
            outcome = classify(M, MukaiVector(2 * n, (2,), 2 * m)).outcome.value
            cells.append(f"{SHORT.get(outcome, outcome):>3}")
        print(f"{n:>3} " + " ".join(cells))


if __name__ == "__main__":
    main()
