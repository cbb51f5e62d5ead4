"""Reduction modulo the left ideal U(g)k0 and K0-invariance.

With k0 last in the basis order every PBW word factors as ``(p~ word)(k0
word)``, so a coset of U(g)k0 is represented by the words free of k0
letters.  The quotient ``U(g)/U(g)k0`` is a left U(g)-module; :class:`Quotient`
implements that module action directly on reduced words:

    k in k0:    k * ()  = 0
                k * w   = [k, w0] w' + w0 (k w')
    x in p~:    as in U(g)

For an invariant ``b`` the reduced product ``red(a b)`` only depends on
``red(a)`` and ``red(b)``, so invariant arithmetic never leaves the reduced
space.  The full-straightening route (:func:`ideal_reduce` of a product in
U(g)) stays available as a cross-check.
"""
from __future__ import annotations

import random
from typing import Mapping

from gmpy2 import mpq

from .linsolve import axpy
from .uea import UEA, DegreeCapExceeded, UEAElement

__all__ = [
    "ReducedElement",
    "Quotient",
    "ideal_reduce",
    "is_invariant",
    "coset_equal",
    "InvarianceResult",
    "coset_independence_check",
]


class ReducedElement(UEAElement):
    """Coset representative: no word contains a k0 letter."""

    __slots__ = ()


def ideal_reduce(a: UEAElement) -> ReducedElement:
    """Drop every normal-form word whose last letter lies in k0."""
    g = a.uea.g
    k0 = g.k0_start
    return ReducedElement({w: c for w, c in a.terms.items() if not w or w[-1] < k0}, a.uea)


class InvarianceResult:
    __slots__ = ("invariant", "witness", "residual")

    def __init__(self, invariant: bool, witness: str | None = None, residual: UEAElement | None = None):
        self.invariant = invariant
        self.witness = witness
        self.residual = residual

    def __bool__(self):
        return self.invariant

    def __repr__(self):
        if self.invariant:
            return "InvarianceResult(invariant)"
        return f"InvarianceResult(not invariant, witness={self.witness})"


def is_invariant(a: UEAElement) -> InvarianceResult:
    """``[f, a] = 0`` in U(g) for every k0 basis element ``f``."""
    U = a.uea
    for f in range(U.g.k0_start, U.g.dim):
        r = U.commutator(U.gen(f), a)
        if not r.is_zero():
            return InvarianceResult(False, U.g.labels[f], r)
    return InvarianceResult(True)


def coset_equal(a: UEAElement, b: UEAElement) -> tuple[bool, ReducedElement]:
    r = ideal_reduce(a - b)
    return r.is_zero(), r


class Quotient:
    """The left U(g)-module U(g)/U(g)k0 on reduced words."""

    def __init__(self, uea: UEA):
        self.U = uea
        self.g = uea.g
        self.k0 = uea.g.k0_start
        self._lm: dict = {}

    def wrap(self, terms: Mapping) -> ReducedElement:
        return ReducedElement(terms, self.U)

    def reduce(self, a: UEAElement) -> ReducedElement:
        return ideal_reduce(a)

    def left_mul(self, x: int, w: tuple) -> dict:
        key = (x, w)
        hit = self._lm.get(key)
        if hit is not None:
            return hit
        brk = self.g.brk
        if x >= self.k0:
            if not w:
                res = {}
            else:
                w0, rest = w[0], w[1:]
                res = {}
                for k, c in brk[x][w0]:
                    axpy(res, c, self.left_mul(k, rest))
                for u, c in self.left_mul(x, rest).items():
                    axpy(res, c, self.left_mul(w0, u))
        elif not w or x <= w[0]:
            if len(w) + 1 > self.U.cap:
                raise DegreeCapExceeded(f"filtration degree {len(w) + 1} exceeds cap {self.U.cap}")
            res = {(x,) + w: mpq(1)}
        else:
            w0, rest = w[0], w[1:]
            res = {}
            for u, c in self.left_mul(x, rest).items():
                axpy(res, c, self.left_mul(w0, u))
            for k, c in brk[x][w0]:
                axpy(res, c, self.left_mul(k, rest))
        self._lm[key] = res
        return res

    def act(self, left: Mapping, right: Mapping) -> dict:
        """``left * right`` in the module; ``left`` is any U(g) element (as
        normal-form or reduced terms), ``right`` a reduced element."""
        out: dict = {}
        trie: dict = {}
        for w, c in left.items():
            node = trie
            for x in reversed(w):
                node = node.setdefault(x, {})
            node[None] = node.get(None, 0) + c

        def walk(node, cur):
            c = node.get(None)
            if c:
                axpy(out, c, cur)
            for x, child in node.items():
                if x is None:
                    continue
                nxt: dict = {}
                for w, d in cur.items():
                    axpy(nxt, d, self.left_mul(x, w))
                if nxt:
                    walk(child, nxt)

        walk(trie, dict(right))
        return out

    def _degree_guard(self, a: UEAElement, b: UEAElement):
        if a.terms and b.terms and a.degree() + b.degree() > self.U.cap:
            raise DegreeCapExceeded(f"product degree {a.degree() + b.degree()} exceeds cap {self.U.cap}")

    def mul(self, a: UEAElement, b: UEAElement) -> ReducedElement:
        """``red(a b)`` from reduced ``a`` and reduced invariant ``b``."""
        self._degree_guard(a, b)
        return self.wrap(self.act(a.terms, b.terms))

    def commutator(self, a: UEAElement, b: UEAElement) -> ReducedElement:
        """``red([a, b])`` for invariants ``a, b`` given by reduced representatives."""
        self._degree_guard(a, b)
        out = self.act(a.terms, b.terms)
        axpy(out, -1, self.act(b.terms, a.terms))
        return self.wrap(out)

    def anticommutator(self, a: UEAElement, b: UEAElement) -> ReducedElement:
        self._degree_guard(a, b)
        out = self.act(a.terms, b.terms)
        axpy(out, 1, self.act(b.terms, a.terms))
        return self.wrap(out)

    def cache_size(self) -> int:
        return len(self._lm)


def coset_independence_check(Q: Quotient, invariants: list, samples: int, seed: int = 0):
    """Adding a random element ``x k`` of U(g)k0 to ``a`` changes neither the
    reduction of ``a`` nor the reduced product with an invariant ``b``; the
    module action agrees with reducing the full product."""
    from .octonion import CheckReport
    from .uea import random_element

    rng = random.Random(seed)
    U = Q.U
    rep = CheckReport(f"coset independence ({U.g.name})")
    k0 = list(range(Q.k0, U.g.dim))
    if not k0:
        raise ValueError("algebra has no k0 part")
    for _ in range(samples):
        a = random_element(U, rng, 2)
        x = random_element(U, rng, 2)
        pert = x * U.gen(rng.choice(k0), mpq(rng.randint(1, 5), rng.randint(1, 3)))
        b = rng.choice(invariants)
        rep.checked += 1
        if not ideal_reduce(pert).is_zero():
            rep.fail(("perturbation not in ideal", pert))
            continue
        ra = ideal_reduce(a)
        if ideal_reduce(a + pert) != ra:
            rep.fail(("reduction moved", a, pert))
        want = ideal_reduce((a + pert) * b)
        if Q.mul(ra, ideal_reduce(b)) != want or ideal_reduce(a * b) != want:
            rep.fail(("product moved", a, pert))
    return rep
