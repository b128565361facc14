"""Worst exponent margin of the minor-arc case analysis over Omega, for a range of n."""

from __future__ import annotations

import argparse
import json

from quartic_delta.bounds import minor_arc_scan, optimisation_cases


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", default="29,30,32,35,40")
    ap.add_argument("--denominator", type=int, default=32)
    args = ap.parse_args()
    rows = []
    for n in map(int, args.n.split(",")):
        rep = minor_arc_scan(n, args.denominator)
        cases = optimisation_cases(n)
        rows.append(
            {
                "n": n,
                "scan": rep.to_json(),
                "verdicts": {k: {"value": str(c.value), "passed": c.passed} for k, c in cases.items()},
            }
        )
    print(json.dumps(rows, indent=2))


if __name__ == "__main__":
    main()
