"""Octonions, triality and the 52-dimensional algebra f4.

Builds f4 twice, from octonion bracket rules and from derivations of the
27-dimensional Jordan algebra, and shows both give the same constants.
"""
from __future__ import annotations

from invdiff.liealg import build_algebra, compare_constants, f4_from_derivations, structure_audit
from invdiff.octonion import (
    basis,
    fano_table,
    jordan_identity_check,
    oct_identities_check,
    triality_check,
)

e = basis()
print("e1 e2 =", e[1] * e[2])
print("(e1 e2) e4 =", (e[1] * e[2]) * e[4], " e1 (e2 e4) =", e[1] * (e[2] * e[4]))

for rep in (oct_identities_check(1000, seed=1), triality_check(), jordan_identity_check(200, seed=1)):
    print(rep.summary())

g = build_algebra("f4")
print(structure_audit(g).summary())
print("bracket-rule and derivation constants differ at", len(compare_constants(g, f4_from_derivations())), "pairs")

# an independent labelling of the units gives the same audit
print(structure_audit(build_algebra("f4", 2, fano_table())).summary().splitlines()[0])
