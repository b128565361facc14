"""Scan the bump shape parameters and theta for the smallest delta truncation error at small Q."""

from __future__ import annotations

import argparse
import itertools
import json

from quartic_delta.delta import BumpChoice, verify_delta


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--Q", type=int, default=5)
    ap.add_argument("--beta-w", default="1,3,9")
    ap.add_argument("--alpha-w", default="0.25,0.5,1")
    ap.add_argument("--beta-u", default="1")
    ap.add_argument("--alpha-u", default="0.25,1")
    ap.add_argument("--theta", default="0.8,0.9")
    args = ap.parse_args()
    grid = itertools.product(*(map(float, s.split(",")) for s in (args.beta_w, args.alpha_w, args.beta_u, args.alpha_u, args.theta)))
    rows = []
    for bw, aw, bu, au, th in grid:
        try:
            b = BumpChoice(bw, aw, bu, au)
            err = verify_delta(args.Q, th, bumps=b).max_error
        except ValueError as exc:
            rows.append({"beta_w": bw, "alpha_w": aw, "beta_u": bu, "alpha_u": au, "theta": th, "error": str(exc)})
            continue
        rows.append({"beta_w": bw, "alpha_w": aw, "beta_u": bu, "alpha_u": au, "theta": th, "max_error": err})
    rows.sort(key=lambda r: r.get("max_error", float("inf")))
    print(json.dumps(rows, indent=2))


if __name__ == "__main__":
    main()
