"""Three printed values that the exact computation corrects.

1. The octonionic D9 needs the prefactor 1/16; with 1/8 twelve relations fail.
2. In the complex table the [D2,D4] slot repeats [D1,D4] = SQ; the engine gives -SQ.
3. [Ups12, Omg12] in u_H(3) is (The11 + The22)/2, not 2 The12.
"""
from __future__ import annotations

from invdiff.generators import build_generators, oct_d9_printed
from invdiff.liealg import build_algebra
from invdiff.relations import Evaluator, discover, suite_relations, verify

gs = oct_d9_printed(build_generators("f4"))
ev = Evaluator(gs)
bad = [r.id for r in suite_relations("f4", 2) if verify(r, "f4", 2, evaluator=ev).status == "failed"]
print(f"D9 with prefactor 1/8: {len(bad)} failures: {', '.join(bad)}")

print("[D2,D4] =", discover("[D2,D4]", "complex", 3, 2).expression())

g = build_algebra("quat", 2)
out = g.bracket(g.vec("Ups12"), g.vec("Omg12"))
print("[Ups12, Omg12] =", " + ".join(f"{c}*{g.labels[k]}" for k, c in sorted(out.items())),
      "  (sumThe - The33 = The11 + The22)")
