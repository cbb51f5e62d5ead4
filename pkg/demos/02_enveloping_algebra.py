"""PBW normal forms and reduction modulo the left ideal U(g)k0.

Straightens a word in U(so(4)), reduces invariant operators on the unit
sphere bundle of S^3 and checks that a commutator of invariants is again
invariant.
"""
from __future__ import annotations

from invdiff.generators import build_generators
from invdiff.liealg import build_algebra
from invdiff.reduction import coset_equal, ideal_reduce, is_invariant
from invdiff.uea import UEA

g = build_algebra("sphere", 3)
U = UEA(g)
p12, p23 = g.index("Psi12"), g.index("Psi23")
print("Psi23 Psi12 =", U.normal_form((p23, p12)).to_text().strip().replace("\n", " + "))
print("leftmost rewriting agrees:", U.normal_form((p23, p12), strategy="leftmost") == U.normal_form((p23, p12)))

gs = build_generators("sphere", 3)
for name in gs.order:
    print(f"{name}: degree {gs.degrees[name]}, invariant {bool(is_invariant(gs[name]))}")

c = gs.U.commutator(gs["D1"], gs["D3"])
print("[D1, D3] invariant:", bool(is_invariant(c)))
ok, residual = coset_equal(c, -gs.U.anticommutator(gs["D0"], gs["D1"]))
print("[D1, D3] = -{D0, D1} modulo the ideal at n = 3:", ok)
print("reduced [D1, D3] has", len(ideal_reduce(c)), "terms")
