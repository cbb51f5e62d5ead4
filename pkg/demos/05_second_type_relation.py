"""The degree-6 second-type relation on the quaternionic projective space.

Solves for the lower-order right side D' of
    D10^2 - D4 D5 D9 - 2 D6 D7 D8 + D9 D6^2 + D4 D8^2 + D5 D7^2 = D'
at n = 3 (about 20 s) and, with --n 4, at n = 4 (about a minute).
The solution is unique (nullity 0); coefficients that change with n scale
with n(n-1).
"""
from __future__ import annotations

import argparse
import time

from invdiff.relations import discover

LHS = "D10*D10 - D4*D5*D9 - 2*D6*D7*D8 + D9*D6*D6 + D4*D8*D8 + D5*D7*D7"

ap = argparse.ArgumentParser()
ap.add_argument("--n", type=int, default=3)
args = ap.parse_args()

t0 = time.perf_counter()
res = discover(LHS, "quat", args.n, 7)
print(f"n={args.n}: consistent {res.consistent}, nullity {res.nullity}, "
      f"{len(res.coefficients)} terms, {time.perf_counter() - t0:.0f}s")
print("D' =", res.expression())
