"""Run every registered identity check against a few doubling towers.

    python3 scripts/identity_survey.py --samples 100 --seed 3
"""
import argparse
import time

from cayley.dickson import CDSpec
from cayley.rings import BaseRing
from cayley.verify import IDENTITIES, check_identity

TOWERS = [(-1, -1), (-1, -1, -1), (1, 1, 1), (2, 3, 5), (-1, -1, -1, -1)]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--samples", type=int, default=50)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    names = list(IDENTITIES)
    print("tower".ljust(22) + "".join(n.ljust(20) for n in names))
    for mus in TOWERS:
        spec = CDSpec(BaseRing(), mus)
        row = []
        start = time.perf_counter()
        for name in names:
            report = check_identity(name, spec, args.samples, args.seed)
            row.append("holds" if report.passed else "FAILS")
        print(str(mus).ljust(22) + "".join(r.ljust(20) for r in row)
              + f"  ({time.perf_counter() - start:.1f} s)")


if __name__ == "__main__":
    main()
