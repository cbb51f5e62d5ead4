"""The universal enveloping algebra U(g) in PBW normal form.

Elements are sparse maps from nondecreasing index words to coefficients.
Products are computed with a memoised left multiplication by one basis
letter, ``x * w`` for a sorted word ``w``:

    x <= w[0]:  prepend
    otherwise:  x w0 w' = w0 (x w') + [x, w0] w'

A literal rewriting loop (swap one adjacent inversion at a time, leftmost or
rightmost first) is kept alongside as an independent normal-form routine.
"""
from __future__ import annotations

import os
import random
from itertools import permutations
from math import factorial
from typing import Iterable, Mapping, Sequence

from gmpy2 import mpq

from .exactcoeff import as_coeff, format_coeff, parse_coeff
from .linsolve import axpy
from .liealg import LieAlgebra

__all__ = [
    "DEFAULT_DEGREE_CAP",
    "DEGREE_OF_ZERO",
    "DegreeCapExceeded",
    "degree_cap",
    "UEA",
    "UEAElement",
    "random_word",
    "random_element",
    "confluence_check",
    "associativity_check",
    "commutator_identities_check",
]

DEFAULT_DEGREE_CAP = 10
DEGREE_OF_ZERO = -1


class DegreeCapExceeded(RuntimeError):
    """A product would exceed the configured filtration degree cap."""


def degree_cap() -> int:
    raw = os.environ.get("ENGINE_DEGREE_CAP")
    if raw is None or raw.strip() == "":
        return DEFAULT_DEGREE_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise ValueError(f"ENGINE_DEGREE_CAP must be an integer, got {raw!r}") from None
    if cap < 1:
        raise ValueError("ENGINE_DEGREE_CAP must be positive")
    return cap


class UEAElement:
    """Immutable-by-convention sum of PBW words with exact coefficients."""

    __slots__ = ("terms", "uea")

    def __init__(self, terms: Mapping, uea: "UEA"):
        self.terms = {w: c for w, c in terms.items() if c != 0}
        self.uea = uea

    # algebra ---------------------------------------------------------------
    def _wrap(self, terms):
        return type(self)(terms, self.uea)

    def __add__(self, other):
        other = self.uea.coerce(other)
        out = dict(self.terms)
        axpy(out, 1, other.terms)
        return self._wrap(out)

    __radd__ = __add__

    def __neg__(self):
        return self._wrap({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        other = self.uea.coerce(other)
        out = dict(self.terms)
        axpy(out, -1, other.terms)
        return self._wrap(out)

    def __rsub__(self, other):
        return self.uea.coerce(other) - self

    def scale(self, s):
        s = as_coeff(s)
        if s == 0:
            return self._wrap({})
        return self._wrap({w: s * c for w, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, UEAElement):
            return self.uea.multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    # queries ---------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=DEGREE_OF_ZERO)

    def __eq__(self, other):
        if isinstance(other, UEAElement):
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __len__(self):
        return len(self.terms)

    def sorted_terms(self) -> list:
        return sorted(self.terms.items())

    def to_text(self) -> str:
        return self.uea.serialize(self)

    def __repr__(self):
        body = self.to_text().strip().replace("\n", " + ")
        return f"{type(self).__name__}({body or '0'})"


class UEA:
    """U(g) for a fixed :class:`LieAlgebra` (basis order = PBW order)."""

    def __init__(self, g: LieAlgebra, cap: int | None = None):
        self.g = g
        self.cap = degree_cap() if cap is None else cap
        self._lm: dict = {}
        self._label_index = {lab: i for i, lab in enumerate(g.labels)}

    # construction ------------------------------------------------------------
    def zero(self) -> UEAElement:
        return UEAElement({}, self)

    def one(self) -> UEAElement:
        return UEAElement({(): mpq(1)}, self)

    def scalar(self, c) -> UEAElement:
        return UEAElement({(): as_coeff(c)}, self)

    def gen(self, label_or_index, coef=1) -> UEAElement:
        i = label_or_index if isinstance(label_or_index, int) else self.g.index(label_or_index)
        return UEAElement({(i,): as_coeff(coef)}, self)

    def from_vector(self, vec: Mapping) -> UEAElement:
        """Degree-one element from a Lie algebra vector ``index -> coef``."""
        return UEAElement({(i,): c for i, c in vec.items()}, self)

    def coerce(self, x) -> UEAElement:
        if isinstance(x, UEAElement):
            if x.uea is not self and x.uea.g is not self.g:
                raise ValueError("elements live in different enveloping algebras")
            return x
        return self.scalar(x)

    # core products -------------------------------------------------------------
    def _check_len(self, n: int):
        if n > self.cap:
            raise DegreeCapExceeded(f"filtration degree {n} exceeds cap {self.cap}")

    def left_mul(self, x: int, w: tuple) -> dict:
        """Normal form of ``x * w`` for a sorted word ``w`` (memoised)."""
        key = (x, w)
        hit = self._lm.get(key)
        if hit is not None:
            return hit
        if not w or x <= w[0]:
            self._check_len(len(w) + 1)
            res = {(x,) + w: mpq(1)}
        else:
            w0, rest = w[0], w[1:]
            res = {}
            for u, c in self.left_mul(x, rest).items():
                axpy(res, c, self.left_mul(w0, u))
            for k, c in self.g.brk[x][w0]:
                axpy(res, c, self.left_mul(k, rest))
        self._lm[key] = res
        return res

    def apply_word(self, word: Sequence[int], terms: Mapping) -> dict:
        """``word * terms`` with ``terms`` in normal form, ``word`` arbitrary."""
        cur = dict(terms)
        for x in reversed(word):
            nxt: dict = {}
            for w, c in cur.items():
                axpy(nxt, c, self.left_mul(x, w))
            cur = nxt
        return cur

    def multiply(self, a: UEAElement, b: UEAElement) -> UEAElement:
        a, b = self.coerce(a), self.coerce(b)
        if a.degree() + b.degree() > self.cap and a.terms and b.terms:
            raise DegreeCapExceeded(
                f"product degree {a.degree() + b.degree()} exceeds cap {self.cap}"
            )
        return UEAElement(self._act(a.terms, b.terms), self)

    def _act(self, left: Mapping, right: Mapping) -> dict:
        """Left action sharing common word suffixes of ``left``."""
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

    def commutator(self, a, b) -> UEAElement:
        return self.multiply(a, b) - self.multiply(b, a)

    def anticommutator(self, a, b) -> UEAElement:
        return self.multiply(a, b) + self.multiply(b, a)

    # normal forms ---------------------------------------------------------------
    def normal_form(self, word: Sequence[int], coef=1, strategy: str | None = None) -> UEAElement:
        """Normal form of ``coef * word``.  ``strategy`` None uses the memoised
        left multiplication; ``leftmost``/``rightmost`` run the rewriting loop
        resolving the first or last adjacent inversion each step."""
        for x in word:
            if not 0 <= x < self.g.dim:
                raise IndexError(f"basis index {x} out of range")
        self._check_len(len(word))
        if strategy is None:
            return UEAElement({w: as_coeff(coef) * c for w, c in self.apply_word(word, {(): mpq(1)}).items()}, self)
        if strategy not in ("leftmost", "rightmost"):
            raise ValueError("strategy must be leftmost or rightmost")
        return UEAElement(self._rewrite({tuple(word): as_coeff(coef)}, strategy), self)

    def _rewrite(self, terms: dict, strategy: str) -> dict:
        done: dict = {}
        todo = dict(terms)
        brk = self.g.brk
        while todo:
            w, c = todo.popitem()
            pos = None
            rng = range(len(w) - 1) if strategy == "leftmost" else range(len(w) - 2, -1, -1)
            for i in rng:
                if w[i] > w[i + 1]:
                    pos = i
                    break
            if pos is None:
                axpy(done, c, {w: mpq(1)})
                continue
            x, y = w[pos], w[pos + 1]
            swapped = w[:pos] + (y, x) + w[pos + 2:]
            axpy(todo, c, {swapped: mpq(1)})
            for k, d in brk[x][y]:
                axpy(todo, c * d, {w[:pos] + (k,) + w[pos + 2:]: mpq(1)})
        return done

    def element(self, terms: Mapping) -> UEAElement:
        """Normal form of an arbitrary map ``word -> coef`` (words unsorted)."""
        out: dict = {}
        for w, c in terms.items():
            axpy(out, as_coeff(c), self.apply_word(tuple(w), {(): mpq(1)}))
        return UEAElement(out, self)

    def symmetrize(self, word: Sequence[int]) -> UEAElement:
        """``(1/p!) * sum over orderings`` of the factors; factors must avoid k0."""
        word = tuple(word)
        for x in word:
            if self.g.is_k0(x):
                raise ValueError(f"symmetrisation factor {self.g.labels[x]} lies in k0")
        p = len(word)
        out: dict = {}
        for perm in permutations(word):
            axpy(out, mpq(1), self.apply_word(perm, {(): mpq(1)}))
        inv = mpq(1, factorial(p))
        return UEAElement({w: c * inv for w, c in out.items()}, self)

    def degree(self, a: UEAElement) -> int:
        return a.degree()

    # text ------------------------------------------------------------------------
    def word_text(self, w: tuple) -> str:
        return ".".join(self.g.labels[x] for x in w) if w else "1"

    def serialize(self, a: UEAElement) -> str:
        lines = [f"{format_coeff(c)} * {self.word_text(w)}" for w, c in sorted(a.terms.items())]
        return "\n".join(lines) + ("\n" if lines else "")

    def parse(self, text: str) -> UEAElement:
        terms: dict = {}
        for line in text.splitlines():
            line = line.strip()
            if not line:
                continue
            coef, _, word = line.rpartition(" * ")
            if not coef:
                raise ValueError(f"malformed term line {line!r}")
            w = () if word == "1" else tuple(self._label_index[lab] for lab in word.split("."))
            axpy(terms, parse_coeff(coef), {w: mpq(1)})
        return self.element(terms)

    def cache_size(self) -> int:
        return len(self._lm)

    def clear_cache(self) -> None:
        self._lm.clear()


def sum_elements(items: Iterable[UEAElement], uea: UEA) -> UEAElement:
    out: dict = {}
    for e in items:
        axpy(out, 1, e.terms)
    return UEAElement(out, uea)


# ---------------------------------------------------------------------------
# randomized property checks


def random_word(rng: random.Random, dim: int, max_len: int = 5) -> tuple:
    return tuple(rng.randrange(dim) for _ in range(rng.randint(0, max_len)))


def random_element(U: UEA, rng: random.Random, max_degree: int = 2, terms: int = 3) -> UEAElement:
    """Random element built from unsorted words, then normal-formed."""
    raw: dict = {}
    for _ in range(terms):
        w = random_word(rng, U.g.dim, max_degree)
        raw[w] = raw.get(w, 0) + mpq(rng.randint(-4, 4), rng.randint(1, 3))
    return U.element(raw)


def _report(name: str):
    from .octonion import CheckReport

    return CheckReport(name)


def confluence_check(U: UEA, samples: int, seed: int = 0, max_len: int = 5):
    """The memoised product and both rewriting orders give one normal form."""
    rng = random.Random(seed)
    rep = _report(f"PBW confluence ({U.g.name})")
    for _ in range(samples):
        w = random_word(rng, U.g.dim, max_len)
        rep.checked += 1
        a = U.normal_form(w)
        if a != U.normal_form(w, strategy="leftmost") or a != U.normal_form(w, strategy="rightmost"):
            rep.fail(U.word_text(w))
    return rep


def associativity_check(U: UEA, samples: int, seed: int = 0, max_degree: int = 2):
    rng = random.Random(seed)
    rep = _report(f"associativity ({U.g.name})")
    for _ in range(samples):
        a, b, c = (random_element(U, rng, max_degree) for _ in range(3))
        rep.checked += 1
        if (a * b) * c != a * (b * c):
            rep.fail((a, b, c))
    return rep


def commutator_identities_check(U: UEA, samples: int, seed: int = 0, max_degree: int = 2):
    """For random ``A, B, C``:

        [A,{B,C}]            = {[A,B],C} + {B,[A,C]}
        {{A,B},C} - {A,{B,C}} = [B,[A,C]]
        {{A,B},C}            = 2{B,C}A + {[A,B],C} + {[A,C],B} + [B,[A,C]]
    """
    rng = random.Random(seed)
    rep = _report(f"commutator identities ({U.g.name})")
    cm, an = U.commutator, U.anticommutator
    for _ in range(samples):
        A, B, C = (random_element(U, rng, max_degree) for _ in range(3))
        rep.checked += 1
        if cm(A, an(B, C)) != an(cm(A, B), C) + an(B, cm(A, C)):
            rep.fail(("first", A, B, C))
        bac = cm(B, cm(A, C))
        if an(an(A, B), C) - an(A, an(B, C)) != bac:
            rep.fail(("second", A, B, C))
        if an(an(A, B), C) != 2 * (an(B, C) * A) + an(cm(A, B), C) + an(cm(A, C), B) + bac:
            rep.fail(("third", A, B, C))
    return rep
