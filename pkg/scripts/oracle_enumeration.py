"""Compare the normalizer with the doubling-tower oracle on every word up to a length.

    python3 scripts/oracle_enumeration.py --max-len 6
    python3 scripts/oracle_enumeration.py --max-len 5 --mode torus --nvars 4
"""
import argparse
import time
from collections import Counter

from cayley.expr import iter_words
from cayley.normalizer import evaluate_oracle, normalize_word, to_cd


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-len", type=int, default=6)
    ap.add_argument("--mode", choices=["poly", "torus"], default="poly")
    ap.add_argument("--nvars", type=int, default=3, help="generators t1..tn used in the words")
    args = ap.parse_args()

    gens = list(range(1, args.nvars + 1))
    total, bad = 0, 0
    for length in range(1, args.max_len + 1):
        start = time.perf_counter()
        count, mismatches, labels = 0, 0, Counter()
        for w in iter_words(length, gens):
            canon = normalize_word(w, args.mode, args.nvars)
            if to_cd(canon) != evaluate_oracle(w, args.mode, args.nvars):
                mismatches += 1
            labels[next(iter(canon.components))] += 1
            count += 1
        total += count
        bad += mismatches
        print(f"length {length}: {count:7d} words, {mismatches} mismatches, "
              f"{len(labels)} basis labels hit, {time.perf_counter() - start:.2f} s")
    print(f"total: {total} words, {bad} mismatches")
    raise SystemExit(1 if bad else 0)


if __name__ == "__main__":
    main()
