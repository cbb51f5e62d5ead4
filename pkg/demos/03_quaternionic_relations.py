"""Commutation relations on the quaternionic projective space.

Verifies the shipped relation table, fits n-dependent coefficients and
rediscovers a right side from scratch.
"""
from __future__ import annotations

from invdiff.relations import discover, interpolate_n, verify, verify_suite

rep = verify_suite("quat", [2, 3])
print("quat n=2,3:", rep.summary())

print(verify("[D1,D4] = 2*D7", "quat", 3).status)
print(verify("[D1,D4] = 2*D7 + 1", "quat", 3).residual.strip())

fit = interpolate_n("[D1,D9]", "quat", [2, 3, 4])
for term, fitted, shipped in fit.terms:
    print(f"  {term}: fitted {fitted}, table {shipped}")

res = discover("[D3,D8]", "quat", 3, 4)
print("[D3,D8] =", res.expression(), f"(rank {res.rank}, nullity {res.nullity})")
