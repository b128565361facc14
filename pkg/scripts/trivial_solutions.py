"""Split counts for x1^4+x2^4+x3^4 = x4^4+x5^4+x6^4 into permutation solutions and the rest.

Solutions with {|x4|,|x5|,|x6|} a rearrangement of {|x1|,|x2|,|x3|} number about P^3
and swamp the P^2 main term at any reachable P.  This script counts them
separately, both in the box and with the centred smooth weight.
"""

from __future__ import annotations

import argparse
import itertools
import json
from collections import Counter
from fractions import Fraction

import numpy as np

from quartic_delta import count, local
from quartic_delta.poly import IntPolynomial
from quartic_delta.weights import WeightSpec, eval_weight

F6 = IntPolynomial.diagonal([1, 1, 1, -1, -1, -1])
W6 = WeightSpec((Fraction(1, 2),) * 6)


def box_split(P: int) -> dict:
    """Affine solutions in [-P, P]^6: all of them, and those with no rearrangement structure."""
    r = np.arange(-P, P + 1)
    cube = r.astype(np.int64) ** 4
    sums = Counter()
    by_multiset = Counter()
    for a, b, c in itertools.product(range(len(r)), repeat=3):
        s = int(cube[a] + cube[b] + cube[c])
        sums[s] += 1
        by_multiset[(s, tuple(sorted((abs(int(r[a])), abs(int(r[b])), abs(int(r[c]))))))] += 1
    total = sum(v * v for v in sums.values())
    trivial = sum(v * v for v in by_multiset.values())
    return {"P": P, "affine": total, "rearrangements": trivial, "other": total - trivial}


def weighted_split(P: int) -> dict:
    """N_W split the same way; the weight is symmetric so W(sigma x) = W(x)."""
    lo, hi = int(np.ceil(P / 4)), int(np.floor(3 * P / 4))
    xs = np.arange(lo, hi + 1)
    w1 = eval_weight(WeightSpec((Fraction(1, 2),)), (xs / P)[:, None])
    trivial = 0.0
    for i, j, k in itertools.product(range(len(xs)), repeat=3):
        w = w1[i] * w1[j] * w1[k]
        perms = len(set(itertools.permutations((i, j, k))))
        trivial += w * w * perms
    total = count.count_smoothed(F6, W6, P)
    return {"P": P, "N_W": total, "rearrangements": trivial, "other": total - trivial}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--box", default="10,20,30,40")
    ap.add_argument("--weighted", default="20,40,60")
    args = ap.parse_args()
    S = local.singular_series(F6, 200, "diagonal-fast").value
    I = local.singular_integral(F6, W6, 50).value
    out = {"series": S, "integral": I, "box": [], "weighted": []}
    for P in map(int, args.box.split(",")):
        out["box"].append(box_split(P))
    for P in map(int, args.weighted.split(",")):
        row = weighted_split(P)
        row["main_term"] = local.main_term(S, I, P, 6)
        out["weighted"].append(row)
    print(json.dumps(out, indent=2))


if __name__ == "__main__":
    main()
