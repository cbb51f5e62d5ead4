"""Finite-dimensional Lie algebras with exact structure constants.

Every algebra carries a reductive split: each basis element is tagged with
one of ``a, p_l, p_2l, k_l, k_2l, k0`` and the basis is ordered in exactly
that sequence, so the stationary subalgebra ``k0`` comes last.

Families
    real     so(n+1)          (sphere, real projective space)
    complex  su(n+1)          (complex projective space)
    quat     u_H(n+1)         (quaternionic projective space)
    oct      f4, n = 2        (Cayley plane)
and their noncompact duals obtained by multiplying the ``p`` part by ``i``.

The classical algebras are generated from the bracket formulas of the
matrix units ``Psi_kj, Ups_kj, Omg_kj, The_kj`` (skew real, and symmetric
times ``i, j, k``).  f4 is assembled from octonion data in two independent
ways (abstract bracket rules, and 27x27 derivations of h3(Ca)); both give
constants in the same distinguished basis.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Hashable, Iterable, Sequence

from gmpy2 import mpq

from .exactcoeff import I, as_coeff, format_coeff, gauss, is_real
from .linsolve import Echelon, axpy
from .octonion import (
    CheckReport,
    JordanElement,
    MultiplicationTable,
    Octonion,
    ad_y,
    basis as oct_basis,
    c_operator,
    default_table,
    jordan_basis,
    op_commutator,
    rotation,
    spinor_op,
)

__all__ = [
    "PARTS",
    "P_PARTS",
    "LieAlgebra",
    "SpaceSpec",
    "resolve_space",
    "build_algebra",
    "structure_from_vectors",
    "so_algebra",
    "su_algebra",
    "uh_algebra",
    "f4_algebra",
    "f4_from_derivations",
    "so8_dictionary",
    "noncompact_twist",
    "AuditReport",
    "structure_audit",
    "compare_constants",
    "kappa_derivation_check",
    "f4_derivation_matrices",
    "twist_phase",
    "CANONICAL",
    "matrix_unit_label",
    "frame_gram",
]

PARTS = ("a", "p_l", "p_2l", "k_l", "k_2l", "k0")
P_PARTS = frozenset(("a", "p_l", "p_2l"))
HALF = mpq(1, 2)


# ---------------------------------------------------------------------------
# the algebra container


class LieAlgebra:
    """Ordered basis, tags, and ``brk[i][j] = ((k, c), ...)`` for ``[x_i, x_j]``.

    ``frame`` holds the distinguished vectors ``Lambda`` and the lists
    ``e1, f1, e2, f2`` (for ``e_lambda, f_lambda, e_2lambda, f_2lambda``)
    as sparse vectors in this basis.
    """

    def __init__(self, name: str, labels: Sequence[str], tags: Sequence[str], brk, frame: dict,
                 family: str, n: int, twisted: bool = False):
        self.name = name
        self.labels = tuple(labels)
        self.tags = tuple(tags)
        self.brk = tuple(tuple(tuple(row_ij) for row_ij in row) for row in brk)
        self.frame = frame
        self.family = family
        self.n = n
        self.twisted = twisted
        self._index = {lab: i for i, lab in enumerate(self.labels)}
        if len(self._index) != len(self.labels):
            raise ValueError("basis labels must be unique")
        order = [PARTS.index(t) for t in self.tags]
        if order != sorted(order):
            raise ValueError("basis must be ordered a, p_l, p_2l, k_l, k_2l, k0")
        self.k0_start = next((i for i, t in enumerate(self.tags) if t == "k0"), self.dim)

    @property
    def dim(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise KeyError(f"{self.name} has no basis element {label!r}") from None

    def vec(self, label: str, coef=1) -> dict:
        return {self.index(label): as_coeff(coef)}

    def is_k0(self, i: int) -> bool:
        return i >= self.k0_start

    def in_p(self, i: int) -> bool:
        return self.tags[i] in P_PARTS

    def part(self, tag: str) -> list[int]:
        return [i for i, t in enumerate(self.tags) if t == tag]

    def bracket_basis(self, i: int, j: int) -> dict:
        return dict(self.brk[i][j])

    def bracket(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for i, a in x.items():
            row = self.brk[i]
            for j, b in y.items():
                ab = a * b
                for k, c in row[j]:
                    s = out.get(k, 0) + ab * c
                    if s == 0:
                        out.pop(k, None)
                    else:
                        out[k] = s
        return out

    def counts(self) -> dict:
        return {t: self.tags.count(t) for t in PARTS}

    def dump_constants(self) -> str:
        """Sorted ``i j k coef`` lines for ``i < j``."""
        lines = []
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                for k, c in self.brk[i][j]:
                    lines.append(f"{i} {j} {k} {format_coeff(c)}")
        return "\n".join(lines) + "\n"

    def with_constants(self, brk, name: str | None = None) -> "LieAlgebra":
        return LieAlgebra(name or self.name, self.labels, self.tags, brk, self.frame,
                          self.family, self.n, self.twisted)

    def corrupted(self, i: int, j: int, k: int, delta=1) -> "LieAlgebra":
        """Copy with ``c_ij^k`` shifted by ``delta`` (antisymmetry kept)."""
        brk = [[dict(c) for c in row] for row in self.brk]
        for a, b, s in ((i, j, 1), (j, i, -1)):
            v = brk[a][b].get(k, 0) + s * as_coeff(delta)
            if v == 0:
                brk[a][b].pop(k, None)
            else:
                brk[a][b][k] = v
        return self.with_constants(
            [[tuple(sorted(c.items())) for c in row] for row in brk], self.name + " (corrupted)"
        )

    def __repr__(self):
        return f"LieAlgebra({self.name}, dim={self.dim})"


def structure_from_vectors(
    labels: Sequence[str],
    tags: Sequence[str],
    vectors: Sequence[dict],
    raw_bracket: Callable[[Hashable, Hashable], dict],
) -> list:
    """Constants of the span of ``vectors`` (sparse over raw keys) under the
    bilinear extension of ``raw_bracket``; fails if the span is not closed."""
    ech = Echelon()
    for t, v in enumerate(vectors):
        if not ech.add(v, t):
            raise ValueError(f"basis vector {labels[t]} is linearly dependent")
    cache: dict = {}

    def rb(p, q):
        key = (p, q)
        if key not in cache:
            cache[key] = raw_bracket(p, q)
        return cache[key]

    dim = len(vectors)
    brk = [[() for _ in range(dim)] for _ in range(dim)]
    for i in range(dim):
        for j in range(i + 1, dim):
            out: dict = {}
            for p, a in vectors[i].items():
                for q, b in vectors[j].items():
                    axpy(out, a * b, rb(p, q))
            res = ech.solve(out)
            if not res.consistent:
                raise ValueError(f"[{labels[i]}, {labels[j]}] leaves the span")
            row = tuple(sorted(res.coefficients.items()))
            brk[i][j] = row
            brk[j][i] = tuple((k, -c) for k, c in row)
    return brk


# ---------------------------------------------------------------------------
# matrix-unit bracket rules for so, su, u_H

_NEXT = {"U": "O", "O": "T", "T": "U"}
_RAW_NAME = {"P": "Psi", "U": "Ups", "O": "Omg", "T": "The"}


def _rkey(t: str, k: int, j: int):
    """Normalised raw key and sign; ``None`` for ``Psi_kk``."""
    if t == "P":
        if k == j:
            return None, 0
        return ((t, k, j), 1) if k < j else ((t, j, k), -1)
    return ((t, k, j), 1) if k <= j else ((t, j, k), 1)


def _raw_add(out: dict, t: str, k: int, j: int, c) -> None:
    key, s = _rkey(t, k, j)
    if key is None or s == 0:
        return
    v = out.get(key, 0) + s * c
    if v == 0:
        out.pop(key, None)
    else:
        out[key] = v


def quat_raw_bracket(p, q) -> dict:
    """Bracket of two raw quaternionic matrix units."""
    tp, k, j = p
    tq, m, l = q
    d = lambda a, b: 1 if a == b else 0  # noqa: E731
    out: dict = {}
    if tp == "P" and tq == "P":
        terms = ((d(j, m), "P", k, l), (-d(k, m), "P", j, l), (d(k, l), "P", j, m), (-d(j, l), "P", k, m))
    elif tp == "P":
        terms = ((d(j, m), tq, k, l), (-d(k, m), tq, j, l), (d(l, j), tq, k, m), (-d(l, k), tq, j, m))
    elif tq == "P":
        return {key: -c for key, c in quat_raw_bracket(q, p).items()}
    elif tp == tq:
        terms = ((d(j, m), "P", l, k), (d(k, m), "P", l, j), (d(k, l), "P", m, j), (d(j, l), "P", m, k))
    elif _NEXT[tp] == tq:
        tz = _NEXT[tq]
        terms = ((d(j, m), tz, l, k), (d(k, m), tz, l, j), (d(k, l), tz, m, j), (d(j, l), tz, m, k))
    else:
        return {key: -c for key, c in quat_raw_bracket(q, p).items()}
    for s, t, a, b in terms:
        if s:
            _raw_add(out, t, a, b, HALF * s)
    return out


def _lab(t: str, k: int, j: int, size: int) -> str:
    sep = "" if size <= 9 else "_"
    return f"{_RAW_NAME[t]}{k}{sep}{j}"


def matrix_unit_label(kind: str, k: int, j: int, g: "LieAlgebra") -> str:
    """Basis label of ``Psi_kj`` (kind ``P``), ``Ups_kj`` (``U``), ``Omg_kj``
    (``O``) or ``The_kj`` (``T``) in a classical-family algebra."""
    return _lab(kind, k, j, g.n + 1)


def _raw(t, k, j, c=1):
    key, s = _rkey(t, k, j)
    return {key: as_coeff(s * c)}


def _combo(*parts) -> dict:
    out: dict = {}
    for c, vec in parts:
        axpy(out, as_coeff(c), vec)
    return out


def so_algebra(n: int) -> LieAlgebra:
    if n < 2:
        raise ValueError("the real family needs n >= 2")
    N = n + 1
    labels, tags, vecs = [], [], []

    def add(t, k, j, tag):
        labels.append(_lab(t, k, j, N))
        tags.append(tag)
        vecs.append(_raw(t, k, j))

    add("P", 1, 2, "a")
    for k in range(3, N + 1):
        add("P", 1, k, "p_2l")
    for k in range(3, N + 1):
        add("P", 2, k, "k_2l")
    for k in range(3, N + 1):
        for j in range(k + 1, N + 1):
            add("P", k, j, "k0")
    brk = structure_from_vectors(labels, tags, vecs, quat_raw_bracket)
    idx = {lab: i for i, lab in enumerate(labels)}
    frame = {
        "Lambda": {idx[_lab("P", 1, 2, N)]: mpq(-2)},
        "e1": [],
        "f1": [],
        "e2": [{idx[_lab("P", 1, k, N)]: mpq(2)} for k in range(3, N + 1)],
        "f2": [{idx[_lab("P", 2, k, N)]: mpq(-2)} for k in range(3, N + 1)],
    }
    return LieAlgebra(f"so({N})", labels, tags, brk, frame, "real", n)


def su_algebra(n: int) -> LieAlgebra:
    if n < 2:
        raise ValueError("the complex family needs n >= 2")
    N = n + 1
    labels, tags, vecs = [], [], []
    ups = lambda k: _combo((HALF, _raw("U", 1, 1)), (-HALF, _raw("U", k, k)))  # noqa: E731

    def add(label, tag, vec):
        labels.append(label)
        tags.append(tag)
        vecs.append(vec)

    add(_lab("P", 1, 2, N), "a", _raw("P", 1, 2))
    for t in "PU":
        for k in range(3, N + 1):
            add(_lab(t, 1, k, N), "p_l", _raw(t, 1, k))
    add(_lab("U", 1, 2, N), "p_2l", _raw("U", 1, 2))
    for t in "PU":
        for k in range(3, N + 1):
            add(_lab(t, 2, k, N), "k_l", _raw(t, 2, k))
    add("Ups*", "k_2l", ups(2))
    for t in "PU":
        for k in range(3, N + 1):
            for j in range(k + 1, N + 1):
                add(_lab(t, k, j, N), "k0", _raw(t, k, j))
    for j in range(4, N + 1):
        add(f"Ups{j}-Ups3", "k0", _combo((1, ups(j)), (-1, ups(3))))
    add("2Ups3-Ups2", "k0", _combo((2, ups(3)), (-1, ups(2))))
    brk = structure_from_vectors(labels, tags, vecs, quat_raw_bracket)
    idx = {lab: i for i, lab in enumerate(labels)}
    frame = {
        "Lambda": {idx[_lab("P", 1, 2, N)]: mpq(-1)},
        "e1": [{idx[_lab(t, 1, k, N)]: mpq(1)} for t in "PU" for k in range(3, N + 1)],
        "f1": [{idx[_lab(t, 2, k, N)]: mpq(-1)} for t in "PU" for k in range(3, N + 1)],
        "e2": [{idx[_lab("U", 1, 2, N)]: mpq(1)}],
        "f2": [{idx["Ups*"]: mpq(1)}],
    }
    return LieAlgebra(f"su({N})", labels, tags, brk, frame, "complex", n)


def uh_algebra(n: int) -> LieAlgebra:
    if n < 2:
        raise ValueError("the quaternionic family needs n >= 2")
    N = n + 1
    labels, tags, vecs = [], [], []

    def add(label, tag, vec):
        labels.append(label)
        tags.append(tag)
        vecs.append(vec)

    add(_lab("P", 1, 2, N), "a", _raw("P", 1, 2))
    for t in "PUOT":
        for k in range(3, N + 1):
            add(_lab(t, 1, k, N), "p_l", _raw(t, 1, k))
    for t in "UOT":
        add(_lab(t, 1, 2, N), "p_2l", _raw(t, 1, 2))
    for t in "PUOT":
        for k in range(3, N + 1):
            add(_lab(t, 2, k, N), "k_l", _raw(t, 2, k))
    for t in "UOT":
        add(f"{_RAW_NAME[t]}*", "k_2l", _combo((HALF, _raw(t, 1, 1)), (-HALF, _raw(t, 2, 2))))
    for k in range(3, N + 1):
        for j in range(k + 1, N + 1):
            add(_lab("P", k, j, N), "k0", _raw("P", k, j))
    for t in "UOT":
        for k in range(3, N + 1):
            for j in range(k, N + 1):
                add(_lab(t, k, j, N), "k0", _raw(t, k, j))
    for t in "UOT":
        add(f"sum{_RAW_NAME[t]}", "k0", _combo(*((1, _raw(t, k, k)) for k in range(1, N + 1))))
    brk = structure_from_vectors(labels, tags, vecs, quat_raw_bracket)
    idx = {lab: i for i, lab in enumerate(labels)}
    frame = {
        "Lambda": {idx[_lab("P", 1, 2, N)]: mpq(-1)},
        "e1": [{idx[_lab(t, 1, k, N)]: mpq(1)} for t in "PUOT" for k in range(3, N + 1)],
        "f1": [{idx[_lab(t, 2, k, N)]: mpq(-1)} for t in "PUOT" for k in range(3, N + 1)],
        "e2": [{idx[_lab(t, 1, 2, N)]: mpq(1)} for t in "UOT"],
        "f2": [{idx[f"{_RAW_NAME[t]}*"]: mpq(1)} for t in "UOT"],
    }
    return LieAlgebra(f"u_H({N})", labels, tags, brk, frame, "quat", n)


# ---------------------------------------------------------------------------
# f4


def so8_dictionary(table: MultiplicationTable | None = None) -> dict:
    """``(i, j) -> (A^(1), A^(2), A^(3))`` for the rotations ``A_ij``, i < j,
    with ``A_0a <-> (L_a, R_a)`` and ``A_ab <-> (L_ba, R_ba)``."""
    table = table or default_table()
    out = {}
    for a in range(1, 8):
        out[(0, a)] = (spinor_op("L", a, table=table), spinor_op("R", a, table=table), rotation(0, a))
    for a in range(1, 8):
        for b in range(a + 1, 8):
            out[(a, b)] = (spinor_op("L", b, a, table), spinor_op("R", b, a, table), rotation(a, b))
    return out


def _skew_to_rotations(m) -> dict:
    """Coordinates of a skew 8x8 operator in the ``A_ij`` basis (i < j)."""
    out = {}
    for i in range(8):
        for j in range(i + 1, 8):
            if m[i][j] != 0:
                out[("A", i, j)] = m[i][j]
            if m[i][j] + m[j][i] != 0:
                raise ValueError("operator is not skew-symmetric")
        if m[i][i] != 0:
            raise ValueError("operator is not skew-symmetric")
    return out


def _f4_labels_and_vectors(table: MultiplicationTable):
    """Distinguished f4 basis as raw-key vectors.  Raw keys are
    ``('A', i, j)`` for kappa A_ij and ``('Y', s, a)`` for ad Y_s(e_a)."""
    labels, tags, vecs = [], [], []

    def add(label, tag, vec):
        labels.append(label)
        tags.append(tag)
        vecs.append(vec)

    add("Lambda", "a", {("Y", 3, 0): HALF})
    for i in range(8):
        # e_l,i = -1/2 ad Y2(conj e_i)
        add(f"el{i}", "p_l", {("Y", 2, i): HALF if i else -HALF})
    for a in range(1, 8):
        add(f"e2l{a}", "p_2l", {("Y", 3, a): HALF})
    for i in range(8):
        add(f"fl{i}", "k_l", {("Y", 1, i): HALF})
    for a in range(1, 8):
        add(f"f2l{a}", "k_2l", {("A", 0, a): mpq(1)})
    for a in range(1, 8):
        for b in range(a + 1, 8):
            add(f"A{a}{b}", "k0", {("A", a, b): mpq(1)})
    return labels, tags, vecs


def _f4_frame(labels):
    idx = {lab: i for i, lab in enumerate(labels)}
    one = mpq(1)
    return {
        "Lambda": {idx["Lambda"]: one},
        "e1": [{idx[f"el{i}"]: one} for i in range(8)],
        "f1": [{idx[f"fl{i}"]: one} for i in range(8)],
        "e2": [{idx[f"e2l{a}"]: one} for a in range(1, 8)],
        "f2": [{idx[f"f2l{a}"]: one} for a in range(1, 8)],
    }


def f4_raw_bracket(table: MultiplicationTable):
    """Abstract bracket rules on kappa(so(8)) + m0:
    k'-k' by operator commutators, ``[kA, ad Y_s(x)] = ad Y_s(A^(s) x)``,
    ``[ad Y_s(x), ad Y_s(y)] = kappa C_{s,x,y}`` and
    ``[ad Y_s(x), ad Y_{s+1}(y)] = ad Y_{s+2}(-conj(x y))``."""
    units = oct_basis(table)
    dic = so8_dictionary(table)

    def y_vec(s, x: Octonion) -> dict:
        return {("Y", s, k): c for k, c in enumerate(x.c) if c != 0}

    def act(m, a):
        return [(r, m[r][a]) for r in range(8) if m[r][a] != 0]

    def rb(p, q):
        if p[0] == "A" and q[0] == "A":
            ma, mb = dic[p[1:]][2], dic[q[1:]][2]
            return _skew_to_rotations(op_commutator(ma, mb))
        if p[0] == "A":
            s, a = q[1], q[2]
            m = dic[p[1:]][s - 1]
            return {("Y", s, r): c for r, c in act(m, a)}
        if q[0] == "A":
            return {k: -c for k, c in rb(q, p).items()}
        s, a = p[1], p[2]
        t, b = q[1], q[2]
        if s == t:
            return _skew_to_rotations(c_operator(s, units[a], units[b], 3))
        if t == s % 3 + 1:
            return y_vec(t % 3 + 1, -(units[a] * units[b]).conj())
        return {k: -c for k, c in rb(q, p).items()}

    return rb


def f4_algebra(table: MultiplicationTable | None = None) -> LieAlgebra:
    table = table or default_table()
    labels, tags, vecs = _f4_labels_and_vectors(table)
    brk = structure_from_vectors(labels, tags, vecs, f4_raw_bracket(table))
    return LieAlgebra("f4", labels, tags, brk, _f4_frame(labels), "oct", 2)


def _mat_commutator(a: dict, b: dict) -> dict:
    out: dict = {}
    for x, y in ((a, b), (b, a)):
        sign = 1 if x is a else -1
        by_row: dict = {}
        for (r, c), v in y.items():
            by_row.setdefault(r, []).append((c, v))
        for (r, k), v in x.items():
            for c, w in by_row.get(k, ()):
                axpy(out, sign * v * w, {(r, c): mpq(1)})
    return out


def f4_derivation_matrices(table: MultiplicationTable | None = None) -> dict:
    """Raw key -> sparse 27x27 matrix acting on h3(Ca) coordinates."""
    table = table or default_table()
    jb = jordan_basis(table)
    units = oct_basis(table)
    mats = {}
    for s in (1, 2, 3):
        for a in range(8):
            f = ad_y(s, units[a])
            m = {}
            for c, X in enumerate(jb):
                for r, v in enumerate(f(X).coords()):
                    if v != 0:
                        m[(r, c)] = v
            mats[("Y", s, a)] = m
    for key, ops in so8_dictionary(table).items():
        m = {}
        for s in range(3):
            op = ops[s]
            off = 3 + 8 * s
            for r in range(8):
                for c in range(8):
                    if op[r][c] != 0:
                        m[(off + r, off + c)] = op[r][c]
        mats[("A",) + key] = m
    return mats


def f4_from_derivations(table: MultiplicationTable | None = None) -> LieAlgebra:
    """f4 constants from commutators of explicit derivations of h3(Ca)."""
    table = table or default_table()
    labels, tags, vecs = _f4_labels_and_vectors(table)
    mats = f4_derivation_matrices(table)
    basis_mats = []
    for v in vecs:
        m: dict = {}
        for key, c in v.items():
            axpy(m, c, mats[key])
        basis_mats.append(m)
    ech = Echelon()
    for t, m in enumerate(basis_mats):
        if not ech.add(m, t):
            raise ValueError(f"derivation {labels[t]} is dependent")
    dim = len(labels)
    brk = [[() for _ in range(dim)] for _ in range(dim)]
    for i in range(dim):
        for j in range(i + 1, dim):
            res = ech.solve(_mat_commutator(basis_mats[i], basis_mats[j]))
            if not res.consistent:
                raise ValueError(f"[{labels[i]}, {labels[j]}] is not a combination of derivations")
            row = tuple(sorted(res.coefficients.items()))
            brk[i][j] = row
            brk[j][i] = tuple((k, -c) for k, c in row)
    return LieAlgebra("f4 (derivations)", labels, tags, brk, _f4_frame(labels), "oct", 2)


def kappa_derivation_check(table: MultiplicationTable | None = None, samples: int = 3,
                           seed: int = 0) -> CheckReport:
    """Each kappa A_ij, acting by ``A^(s)`` on the ``X_s`` block, is a
    derivation of the Jordan product."""
    import random

    from .octonion import jordan_mul, op_apply, random_jordan

    table = table or default_table()
    rng = random.Random(seed)
    rep = CheckReport("kappa(so(8)) acts by derivations")
    for key, ops in so8_dictionary(table).items():
        def d(X: JordanElement, ops=ops) -> JordanElement:
            return JordanElement((0, 0, 0), [op_apply(ops[s], X.x[s]) for s in range(3)])

        for _ in range(samples):
            X, Y = random_jordan(rng, table), random_jordan(rng, table)
            rep.checked += 1
            if d(jordan_mul(X, Y)) != jordan_mul(d(X), Y) + jordan_mul(X, d(Y)):
                rep.fail((key, X, Y))
    return rep


def compare_constants(g: LieAlgebra, h: LieAlgebra) -> list[tuple]:
    """Basis pairs whose brackets differ (same dimension and labels assumed)."""
    if g.labels != h.labels:
        raise ValueError("algebras use different bases")
    diffs = []
    for i in range(g.dim):
        for j in range(i + 1, g.dim):
            if g.brk[i][j] != h.brk[i][j]:
                diffs.append((g.labels[i], g.labels[j], dict(g.brk[i][j]), dict(h.brk[i][j])))
    return diffs


# ---------------------------------------------------------------------------
# noncompact duals


def noncompact_twist(g: LieAlgebra) -> LieAlgebra:
    """Multiply the ``p`` part by ``i``: ``c'_ij^k = i^(s_i + s_j - s_k) c_ij^k``."""
    sig = [1 if g.in_p(i) else 0 for i in range(g.dim)]
    brk = [[() for _ in range(g.dim)] for _ in range(g.dim)]
    for i in range(g.dim):
        for j in range(g.dim):
            row = []
            for k, c in g.brk[i][j]:
                e = sig[i] + sig[j] - sig[k]
                if e % 2:
                    raise ValueError(
                        f"non-integral twist at [{g.labels[i]}, {g.labels[j]}] -> {g.labels[k]}"
                    )
                row.append((k, c if e % 4 == 0 else -c))
            brk[i][j] = tuple(row)
    name = g.name + "~" if not g.twisted else g.name.rstrip("~")
    return LieAlgebra(name, g.labels, g.tags, brk, g.frame, g.family, g.n, not g.twisted)


def twist_phase(g: LieAlgebra, i: int, j: int, k: int):
    """``i^(s_i + s_j - s_k)``, the factor relating compact and twisted constants."""
    e = (g.in_p(i) + g.in_p(j) - g.in_p(k)) % 4
    return (mpq(1), I, mpq(-1), -I)[e]


# ---------------------------------------------------------------------------
# spaces


@dataclass(frozen=True)
class SpaceSpec:
    family: str  # real, complex, quat, oct
    hyperbolic: bool
    name: str


_ALIASES = {
    "sphere": ("real", False),
    "real_proj": ("real", False),
    "real": ("real", False),
    "complex_proj": ("complex", False),
    "complex": ("complex", False),
    "quat_proj": ("quat", False),
    "quat": ("quat", False),
    "octonion_proj": ("oct", False),
    "oct": ("oct", False),
    "f4": ("oct", False),
    "real-hyp": ("real", True),
    "real_hyperbolic": ("real", True),
    "complex-hyp": ("complex", True),
    "complex_hyperbolic": ("complex", True),
    "quat-hyp": ("quat", True),
    "quat_hyperbolic": ("quat", True),
    "oct-hyp": ("oct", True),
    "octonion_hyperbolic": ("oct", True),
}

CANONICAL = {
    ("real", False): "sphere",
    ("complex", False): "complex_proj",
    ("quat", False): "quat_proj",
    ("oct", False): "octonion_proj",
    ("real", True): "real-hyp",
    ("complex", True): "complex-hyp",
    ("quat", True): "quat-hyp",
    ("oct", True): "oct-hyp",
}


def resolve_space(space: str) -> SpaceSpec:
    key = space.strip().lower()
    if key not in _ALIASES:
        raise ValueError(f"unknown space {space!r}; choose from {', '.join(sorted(_ALIASES))}")
    fam, hyp = _ALIASES[key]
    return SpaceSpec(fam, hyp, CANONICAL[(fam, hyp)])


_CACHE: dict = {}


def build_algebra(space: str, n: int | None = None, table: MultiplicationTable | None = None) -> LieAlgebra:
    """Algebra of a space; ``n`` defaults to 3 (2 for the octonionic family)."""
    spec = resolve_space(space)
    if n is None:
        n = 2 if spec.family == "oct" else 3
    if spec.family == "oct":
        if n != 2:
            raise ValueError("the octonionic family exists only for n = 2")
        n = 2
    elif n < 2:
        raise ValueError(f"{spec.name} needs n >= 2")
    table = table or default_table() if spec.family == "oct" else None
    key = (spec.family, spec.hyperbolic, n, table)
    if key in _CACHE:
        return _CACHE[key]
    if spec.family == "real":
        g = so_algebra(n)
    elif spec.family == "complex":
        g = su_algebra(n)
    elif spec.family == "quat":
        g = uh_algebra(n)
    else:
        g = f4_algebra(table)
    if spec.hyperbolic:
        g = noncompact_twist(g)
    _CACHE[key] = g
    return g


# ---------------------------------------------------------------------------
# audits

# allowed target parts for brackets of two parts (missing pairs are unchecked)
_INCLUSIONS = {
    ("a", "p_l"): {"k_l"},
    ("a", "k_l"): {"p_l"},
    ("a", "p_2l"): {"k_2l"},
    ("a", "k_2l"): {"p_2l"},
    ("a", "k0"): set(),
    ("k_l", "p_l"): {"p_2l", "a"},
    ("k_l", "k_l"): {"k_2l", "k0"},
    ("p_l", "p_l"): {"k_2l", "k0"},
    ("k_2l", "k_2l"): {"k0"},
    ("p_2l", "p_2l"): {"k0"},
    ("k_2l", "p_2l"): {"a"},
    ("k_l", "k_2l"): {"k_l"},
    ("k_l", "p_2l"): {"p_l"},
    ("p_l", "k_2l"): {"p_l"},
    ("p_l", "p_2l"): {"k_l"},
    ("k0", "k0"): {"k0"},
}
for _t in ("p_l", "p_2l", "k_l", "k_2l"):
    _INCLUSIONS[("k0", _t)] = {_t}


@dataclass
class AuditReport:
    algebra: str
    dim: int
    counts: dict
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def q1(self) -> int:
        return self.counts.get("p_l", 0)

    @property
    def q2(self) -> int:
        return self.counts.get("p_2l", 0)

    def summary(self) -> str:
        head = f"{self.algebra}: dim {self.dim}, q1={self.q1}, q2={self.q2}: " + (
            "pass" if self.passed else "FAIL"
        )
        return "\n".join([head] + ["  " + c.summary() for c in self.checks])

    def to_dict(self) -> dict:
        return {
            "algebra": self.algebra,
            "dim": self.dim,
            "counts": self.counts,
            "passed": self.passed,
            "checks": [
                {"name": c.name, "passed": c.passed, "checked": c.checked,
                 "failures": [str(f) for f in c.failures]}
                for c in self.checks
            ],
        }


def _vec_sub(x: dict, y: dict) -> dict:
    out = dict(x)
    axpy(out, -1, y)
    return out


def _scale(x: dict, s) -> dict:
    return {k: s * v for k, v in x.items()} if s != 0 else {}


def frame_gram(g: LieAlgebra) -> dict:
    """Coordinates of each basis element in the frame (plus k0 elements), used
    for the scalar product with the frame orthonormal and k0 orthogonal."""
    fr = g.frame
    vecs = [("Lambda", fr["Lambda"])]
    vecs += [(("e1", t), v) for t, v in enumerate(fr["e1"])]
    vecs += [(("f1", t), v) for t, v in enumerate(fr["f1"])]
    vecs += [(("e2", t), v) for t, v in enumerate(fr["e2"])]
    vecs += [(("f2", t), v) for t, v in enumerate(fr["f2"])]
    vecs += [(("k0", i), {i: mpq(1)}) for i in range(g.k0_start, g.dim)]
    ech = Echelon()
    for tag, v in vecs:
        if not ech.add(v, tag):
            raise ValueError(f"frame vector {tag} is dependent")
    if ech.rank != g.dim:
        raise ValueError("frame and k0 do not span the algebra")
    coords = {}
    for i in range(g.dim):
        coords[i] = ech.solve({i: mpq(1)}).coefficients
    return coords


def scalar_product(g: LieAlgebra, coords: dict, x: dict, y: dict):
    """Frame-orthonormal product on the complement of k0 (sign -1 on p in
    the twisted form), zero against k0."""
    def frame_coords(v):
        out: dict = {}
        for i, a in v.items():
            axpy(out, a, coords[i])
        return out

    cx, cy = frame_coords(x), frame_coords(y)
    total = mpq(0)
    for tag, a in cx.items():
        if isinstance(tag, tuple) and tag[0] == "k0":
            continue
        b = cy.get(tag)
        if b is None:
            continue
        sign = 1
        if g.twisted and (tag == "Lambda" or tag[0] in ("e1", "e2")):
            sign = -1
        total += sign * a * b
    return total


def structure_audit(g: LieAlgebra, jacobi: bool = True) -> AuditReport:
    rep = AuditReport(g.name, g.dim, g.counts())
    dim = g.dim

    anti = CheckReport("antisymmetry")
    for i in range(dim):
        for j in range(dim):
            anti.checked += 1
            if dict(g.brk[i][j]) != {k: -c for k, c in g.brk[j][i]}:
                anti.fail((g.labels[i], g.labels[j]))
    rep.checks.append(anti)

    real = CheckReport("real constants")
    for i in range(dim):
        for j in range(dim):
            for k, c in g.brk[i][j]:
                real.checked += 1
                if not is_real(c):
                    real.fail((g.labels[i], g.labels[j], g.labels[k], format_coeff(c)))
    rep.checks.append(real)

    if jacobi:
        jac = CheckReport("jacobi")
        for i, j, k in combinations(range(dim), 3):
            jac.checked += 1
            xi, xj, xk = {i: 1}, {j: 1}, {k: 1}
            out = g.bracket(xi, g.bracket_basis(j, k))
            axpy(out, 1, g.bracket(xj, g.bracket_basis(k, i)))
            axpy(out, 1, g.bracket(xk, g.bracket_basis(i, j)))
            if out:
                jac.fail((g.labels[i], g.labels[j], g.labels[k]))
        rep.checks.append(jac)

    inc = CheckReport("part inclusions")
    for i in range(dim):
        for j in range(dim):
            allowed = _INCLUSIONS.get((g.tags[i], g.tags[j]))
            if allowed is None:
                allowed = _INCLUSIONS.get((g.tags[j], g.tags[i]))
            if allowed is None:
                continue
            inc.checked += 1
            for k, _ in g.brk[i][j]:
                if g.tags[k] not in allowed:
                    inc.fail((g.labels[i], g.labels[j], g.labels[k]))
                    break
    rep.checks.append(inc)

    sig = CheckReport("sigma automorphism")
    for i in range(dim):
        for j in range(dim):
            sig.checked += 1
            si = -1 if g.in_p(i) else 1
            sj = -1 if g.in_p(j) else 1
            for k, _ in g.brk[i][j]:
                sk = -1 if g.in_p(k) else 1
                if si * sj != sk:
                    sig.fail((g.labels[i], g.labels[j], g.labels[k]))
                    break
    rep.checks.append(sig)

    rep.checks.append(_normalized_brackets(g))
    rep.checks.append(_invariant_product(g))
    return rep


def _normalized_brackets(g: LieAlgebra) -> CheckReport:
    """The distinguished-basis relations, with the phase picked up under the
    twist when the algebra is noncompact."""
    chk = CheckReport("normalized brackets")
    fr = g.frame
    L = fr["Lambda"]
    ph = (lambda s: s) if not g.twisted else (lambda s: -s)  # sign for [p, p] -> k

    def expect(x, y, want, name):
        chk.checked += 1
        got = g.bracket(x, y)
        if _vec_sub(got, want):
            chk.fail(name)

    for t, (e, f) in enumerate(zip(fr["e1"], fr["f1"])):
        expect(L, e, _scale(f, ph(-HALF)), f"[Lambda, e_l{t}]")
        expect(L, f, _scale(e, HALF), f"[Lambda, f_l{t}]")
        expect(e, f, _scale(L, -HALF), f"[e_l{t}, f_l{t}]")
    for t, (e, f) in enumerate(zip(fr["e2"], fr["f2"])):
        expect(L, e, _scale(f, ph(mpq(-1))), f"[Lambda, e_2l{t}]")
        expect(L, f, e, f"[Lambda, f_2l{t}]")
        expect(e, f, _scale(L, mpq(-1)), f"[e_2l{t}, f_2l{t}]")
    return chk


def _invariant_product(g: LieAlgebra) -> CheckReport:
    chk = CheckReport("invariant scalar product")
    try:
        coords = frame_gram(g)
    except ValueError as exc:
        chk.fail(str(exc))
        return chk
    dim = g.dim
    pt = [i for i in range(g.k0_start)]
    for z in range(dim):
        adz = [g.bracket_basis(z, x) for x in range(dim)]
        for x in pt:
            for y in pt:
                if y < x:
                    continue
                chk.checked += 1
                s = scalar_product(g, coords, adz[x], {y: 1}) + scalar_product(g, coords, {x: 1}, adz[y])
                if s != 0:
                    chk.fail((g.labels[z], g.labels[x], g.labels[y]))
    return chk


def jobs_default() -> int:
    return os.cpu_count() or 1
