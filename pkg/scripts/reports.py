"""Print the JSON reports of the demonstrations (Dorofeev triples, the
twelve-generator ring over F[z], its central closure, the sedenion control).

    python3 scripts/reports.py example43 closure
"""
import argparse
import json

from cayley import verify

REPORTS = {
    "dorofeev": lambda seed: verify.dorofeev_demo(seed),
    "example43": lambda seed: verify.example43_report(),
    "closure": lambda seed: verify.central_closure_demo(),
    "sedenion": lambda seed: verify.sedenion_demo(),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("names", nargs="*", help=f"any of {', '.join(REPORTS)} (default: all)")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    unknown = set(args.names) - set(REPORTS)
    if unknown:
        ap.error(f"unknown report(s): {', '.join(sorted(unknown))}")
    ok = True
    for name in args.names or REPORTS:
        report = REPORTS[name](args.seed)
        ok &= bool(report.get("passed", True))
        print(f"== {name}")
        print(json.dumps(report, indent=2, default=str))
    raise SystemExit(0 if ok else 1)


if __name__ == "__main__":
    main()
