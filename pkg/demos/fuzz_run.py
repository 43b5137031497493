"""Run the randomized cross-check and summarize it; any disagreement is printed with its replay index."""

import argparse
import time

from mukaifact.fuzz import run_fuzz


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--cases", type=int, default=50)
    args = ap.parse_args()

    t0 = time.perf_counter()
    report = run_fuzz(args.seed, args.cases)
    dt = time.perf_counter() - t0
    print(f"{args.cases} cases in {dt:.1f} s, ok={report.ok}")
    for d in report.to_json()["disagreements"]:
        print("  disagreement:", d)


if __name__ == "__main__":
    main()
