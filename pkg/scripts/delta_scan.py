"""Truncation error of the delta symbol and flatness of the arc weights p_q(z) across Q."""

from __future__ import annotations

import argparse
import json
import time

import numpy as np

from quartic_delta.delta import DeltaKernel, verify_delta


def error_table(Qs: list[int], theta: float) -> list[dict]:
    rows = []
    for Q in Qs:
        row = {"Q": Q}
        for mode in ("exact", "one"):
            t = time.perf_counter()
            rep = verify_delta(Q, theta, cq_mode=mode)
            row[f"max_error_{mode}"] = rep.max_error
            row[f"argmax_{mode}"] = rep.argmax
            row[f"seconds_{mode}"] = round(time.perf_counter() - t, 3)
        rows.append(row)
    return rows


def flatness_table(Qs: list[int], theta: float, exponents=(0.25, 0.5)) -> list[dict]:
    """max over q <= Q^e and |z| <= Q^-2 of |p_q(z) - 1|, and max |p_q| over the arcs."""
    rows = []
    for Q in Qs:
        k = DeltaKernel(Q, theta)
        z = np.linspace(-1 / Q**2, 1 / Q**2, 41)
        row = {"Q": Q}
        for e in exponents:
            qs = range(1, int(Q**e) + 1)
            row[f"flat_q<=Q^{e}"] = float(max(np.max(np.abs(k.p_q(q, z) - 1)) for q in qs))
        sup = 0.0
        for q in range(1, Q + 1):
            zz = np.linspace(-k.Z(q), k.Z(q), 201)
            sup = max(sup, float(np.max(np.abs(k.p_q(q, zz)))))
        row["max_abs_p_q"] = sup
        rows.append(row)
    return rows


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--Q", default="5,10,20,30")
    ap.add_argument("--flat-Q", default="20,40,80,160")
    ap.add_argument("--theta", type=float, default=0.9)
    args = ap.parse_args()
    out = {
        "errors": error_table([int(x) for x in args.Q.split(",")], args.theta),
        "flatness": flatness_table([int(x) for x in args.flat_Q.split(",")], args.theta),
    }
    print(json.dumps(out, indent=2))


if __name__ == "__main__":
    main()
