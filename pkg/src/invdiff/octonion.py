"""Exact octonions, the Jordan algebra h3(Ca) and the so(8) operators on Ca.

A multiplication table maps ``(i, j)`` to ``(sign, k)`` meaning
``e_i e_j = sign * e_k``.  The default table comes from the Cayley-Dickson
doubling of the quaternions, ``(a, b)(c, d) = (ac - conj(d) b, da + b conj(c))``
with ``e_0..e_3 = (1, i, j, k)`` in the first slot and ``e_4..e_7`` the same
units in the second slot, so ``e_1 e_2 = e_3``.  Any other valid table can be
loaded from text; everything downstream only depends on the table through
octonion products.

Linear operators on Ca are 8x8 matrices stored as a tuple of rows, with
``M[r][c]`` the ``e_r`` coordinate of ``T(e_c)``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Sequence

from gmpy2 import mpq

from .exactcoeff import as_coeff

__all__ = [
    "MultiplicationTable",
    "cayley_dickson_table",
    "fano_table",
    "default_table",
    "set_default_table",
    "Octonion",
    "basis",
    "CheckReport",
    "oct_mul",
    "oct_identities_check",
    "operator_from",
    "op_apply",
    "op_compose",
    "op_commutator",
    "op_is_skew",
    "rotation",
    "spinor_op",
    "triality_partner",
    "triality_check",
    "c_operator",
    "JordanElement",
    "jordan_mul",
    "jordan_mul_matrix",
    "jordan_basis",
    "ad_y",
    "ad_y_derivation_check",
    "jordan_identity_check",
    "random_octonion",
    "random_jordan",
]

ZERO = mpq(0)
ONE = mpq(1)
HALF = mpq(1, 2)


# ---------------------------------------------------------------------------
# multiplication tables


class MultiplicationTable:
    """8x8 signed-index table for the octonion basis ``e_0..e_7``."""

    def __init__(self, entries: Sequence[Sequence[tuple[int, int]]], name: str = "custom"):
        self.entries = tuple(tuple((int(s), int(k)) for s, k in row) for row in entries)
        self.name = name
        if len(self.entries) != 8 or any(len(r) != 8 for r in self.entries):
            raise ValueError("multiplication table must be 8x8")

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        return isinstance(other, MultiplicationTable) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"MultiplicationTable({self.name})"

    def dumps(self) -> str:
        lines = []
        for row in self.entries:
            lines.append(" ".join(("+" if s > 0 else "-") + str(k) for s, k in row))
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str, name: str = "loaded", validate: bool = True) -> "MultiplicationTable":
        """Parse ``dumps`` output.  With ``validate`` an algebraically broken
        table raises; without it the caller is expected to audit it."""
        rows = []
        for line in text.splitlines():
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            row = []
            for tok in line.split():
                if tok[0] not in "+-":
                    raise ValueError(f"table entry needs an explicit sign: {tok!r}")
                k = int(tok[1:])
                if not 0 <= k <= 7:
                    raise ValueError(f"table index out of range: {tok!r}")
                row.append((1 if tok[0] == "+" else -1, k))
            rows.append(row)
        table = cls(rows, name)
        problems = table.validate() if validate else []
        if problems:
            raise ValueError("invalid octonion table: " + "; ".join(problems[:5]))
        return table

    @classmethod
    def load(cls, path, validate: bool = True) -> "MultiplicationTable":
        with open(path, encoding="utf-8") as fh:
            return cls.loads(fh.read(), name=str(path), validate=validate)

    def validate(self) -> list[str]:
        """Identity, e_i^2 = -1, anticommutativity, alternativity and norm
        multiplicativity checked on basis elements and their sums."""
        problems = []
        for i in range(8):
            if self[0, i] != (1, i) or self[i, 0] != (1, i):
                problems.append(f"e0 is not an identity for e{i}")
        for i in range(1, 8):
            if self[i, i] != (-1, 0):
                problems.append(f"e{i}^2 != -1")
            for j in range(1, 8):
                if i != j:
                    s, k = self[i, j]
                    s2, k2 = self[j, i]
                    if k != k2 or s != -s2 or k in (0, i, j):
                        problems.append(f"e{i}e{j} is not anticommuting/imaginary")
        if problems:
            return problems
        # alternativity on pairs of basis sums covers the polarised identity
        units = basis(self)
        for a, b in product(range(8), repeat=2):
            x = units[a] + units[b]
            for y in units:
                if (x * x) * y != x * (x * y) or (y * x) * x != y * (x * x):
                    problems.append(f"alternativity fails at e{a}+e{b}")
                    break
        for a, b in product(range(8), repeat=2):
            x = units[a] + units[b]
            for c in range(8):
                y = units[c] + units[(c + 3) % 8]
                if (x * y).norm2() != x.norm2() * y.norm2():
                    problems.append("norm is not multiplicative")
                    return problems
        return problems


def _quat_mul(p, q):
    a1, b1, c1, d1 = p
    a2, b2, c2, d2 = q
    return (
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    )


def _quat_conj(p):
    return (p[0], -p[1], -p[2], -p[3])


def _cd_mul(x, y):
    a, b = x[:4], x[4:]
    c, d = y[:4], y[4:]
    first = tuple(u - v for u, v in zip(_quat_mul(a, c), _quat_mul(_quat_conj(d), b)))
    second = tuple(u + v for u, v in zip(_quat_mul(d, a), _quat_mul(b, _quat_conj(c))))
    return first + second


def cayley_dickson_table() -> MultiplicationTable:
    rows = []
    for i in range(8):
        row = []
        for j in range(8):
            x = tuple(1 if t == i else 0 for t in range(8))
            y = tuple(1 if t == j else 0 for t in range(8))
            z = _cd_mul(x, y)
            (k,) = [t for t in range(8) if z[t] != 0]
            row.append((z[k], k))
        rows.append(row)
    return MultiplicationTable(rows, "cayley-dickson")


_FANO_LINES = ((1, 2, 4), (2, 3, 5), (3, 4, 6), (4, 5, 7), (5, 6, 1), (6, 7, 2), (7, 1, 3))


def fano_table(lines: Sequence[tuple[int, int, int]] = _FANO_LINES) -> MultiplicationTable:
    """Table from oriented Fano lines ``(i, j, k)``: ``e_i e_j = e_k`` cyclically."""
    rows = [[None] * 8 for _ in range(8)]
    for i in range(8):
        rows[0][i] = (1, i)
        rows[i][0] = (1, i)
    for i in range(1, 8):
        rows[i][i] = (-1, 0)
    for a, b, c in lines:
        for i, j, k in ((a, b, c), (b, c, a), (c, a, b)):
            rows[i][j] = (1, k)
            rows[j][i] = (-1, k)
    if any(e is None for r in rows for e in r):
        raise ValueError("Fano lines do not cover every pair of units")
    return MultiplicationTable(rows, "fano")


_DEFAULT: list[MultiplicationTable] = []


def default_table() -> MultiplicationTable:
    if not _DEFAULT:
        _DEFAULT.append(cayley_dickson_table())
    return _DEFAULT[0]


def set_default_table(table: MultiplicationTable) -> None:
    _DEFAULT[:] = [table]


# ---------------------------------------------------------------------------
# octonions


class Octonion:
    __slots__ = ("c", "table")

    def __init__(self, coords: Sequence, table: MultiplicationTable | None = None):
        c = tuple(as_coeff(x) for x in coords)
        if len(c) != 8:
            raise ValueError("an octonion has 8 coordinates")
        self.c = c
        self.table = table or default_table()

    @classmethod
    def unit(cls, k: int, table=None, coef=1) -> "Octonion":
        c = [ZERO] * 8
        c[k] = as_coeff(coef)
        return cls(c, table)

    @classmethod
    def zero(cls, table=None) -> "Octonion":
        return cls([ZERO] * 8, table)

    def _new(self, c):
        o = Octonion.__new__(Octonion)
        o.c = tuple(c)
        o.table = self.table
        return o

    def __add__(self, other):
        return self._new(a + b for a, b in zip(self.c, other.c))

    def __sub__(self, other):
        return self._new(a - b for a, b in zip(self.c, other.c))

    def __neg__(self):
        return self._new(-a for a in self.c)

    def scale(self, s) -> "Octonion":
        s = as_coeff(s)
        return self._new(s * a for a in self.c)

    def __mul__(self, other):
        if not isinstance(other, Octonion):
            return self.scale(other)
        out = [ZERO] * 8
        ent = self.table.entries
        for i, a in enumerate(self.c):
            if a == 0:
                continue
            row = ent[i]
            for j, b in enumerate(other.c):
                if b == 0:
                    continue
                s, k = row[j]
                out[k] = out[k] + a * b if s > 0 else out[k] - a * b
        return self._new(out)

    def __rmul__(self, s):
        return self.scale(s)

    def conj(self) -> "Octonion":
        c = self.c
        return self._new((c[0],) + tuple(-x for x in c[1:]))

    def real(self):
        return self.c[0]

    def norm2(self):
        """Bilinear square norm ``<x, x>`` (rational for rational octonions)."""
        return sum((a * a for a in self.c), ZERO)

    def inner(self, other):
        """``<x, y> = Re(conj(x) y)``."""
        return sum((a * b for a, b in zip(self.c, other.c)), ZERO)

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.c)

    def __eq__(self, other):
        return isinstance(other, Octonion) and self.c == other.c

    def __hash__(self):
        return hash(self.c)

    def __repr__(self):
        terms = [f"{a}*e{k}" for k, a in enumerate(self.c) if a != 0]
        return "Octonion(" + (" + ".join(terms) if terms else "0") + ")"

    def signed_unit(self) -> tuple[int, int]:
        """``(sign, k)`` when this is ``+-e_k``, else ValueError."""
        nz = [(k, a) for k, a in enumerate(self.c) if a != 0]
        if len(nz) != 1 or abs(nz[0][1]) != 1:
            raise ValueError(f"{self!r} is not a signed basis unit")
        k, a = nz[0]
        return (1 if a > 0 else -1, k)


def basis(table: MultiplicationTable | None = None) -> list[Octonion]:
    table = table or default_table()
    return [Octonion.unit(k, table) for k in range(8)]


def oct_mul(a: Octonion, b: Octonion) -> Octonion:
    return a * b


def unit_product(table: MultiplicationTable, i: int, j: int, conj_left=False, conj_right=False):
    """Signed unit ``(s, k)`` for ``(e_i or conj) * (e_j or conj)``."""
    s, k = table[i, j]
    if conj_left and i:
        s = -s
    if conj_right and j:
        s = -s
    return s, k


# ---------------------------------------------------------------------------
# reports


@dataclass
class CheckReport:
    name: str
    passed: bool = True
    checked: int = 0
    failures: list = field(default_factory=list)

    def fail(self, what):
        self.passed = False
        if len(self.failures) < 20:
            self.failures.append(what)

    def __bool__(self):
        return self.passed

    def summary(self) -> str:
        state = "pass" if self.passed else "FAIL"
        extra = "" if self.passed else f" first failure: {self.failures[0]}"
        return f"{self.name}: {state} ({self.checked} checks){extra}"


def random_octonion(rng: random.Random, table=None, bound: int = 5) -> Octonion:
    return Octonion([mpq(rng.randint(-bound, bound), rng.randint(1, 3)) for _ in range(8)], table)


def oct_identities_check(samples: int, table=None, seed: int = 0) -> CheckReport:
    """Alternativity, central Moufang, norm multiplicativity and the two
    unit identities ``e_i (e_j x) = -conj(e_j) (conj(e_i) x)`` and its mirror."""
    if samples < 1:
        raise ValueError("samples must be >= 1")
    table = table or default_table()
    rng = random.Random(seed)
    rep = CheckReport("octonion identities")
    units = basis(table)
    for _ in range(samples):
        u, x, y = (random_octonion(rng, table) for _ in range(3))
        rep.checked += 1
        if (x * x) * y != x * (x * y) or (y * x) * x != y * (x * x):
            rep.fail(("alternativity", x, y))
        if (u * (x * y)) * u != (u * x) * (y * u):
            rep.fail(("moufang", u, x, y))
        if (x * y).norm2() != x.norm2() * y.norm2():
            rep.fail(("norm", x, y))
        i, j = rng.sample(range(8), 2)
        ei, ej = units[i], units[j]
        if ei * (ej * x) != -(ej.conj() * (ei.conj() * x)):
            rep.fail(("left unit identity", i, j, x))
        if (x * ei) * ej != -((x * ej.conj()) * ei.conj()):
            rep.fail(("right unit identity", i, j, x))
    return rep


# ---------------------------------------------------------------------------
# linear operators on Ca


def operator_from(fn: Callable[[Octonion], Octonion], table=None) -> tuple:
    cols = [fn(e).c for e in basis(table)]
    return tuple(tuple(cols[c][r] for c in range(8)) for r in range(8))


def op_apply(m, x: Octonion) -> Octonion:
    xc = x.c
    return x._new(sum((row[c] * xc[c] for c in range(8) if xc[c] != 0), ZERO) for row in m)


def op_compose(a, b) -> tuple:
    return tuple(
        tuple(sum((a[r][k] * b[k][c] for k in range(8)), ZERO) for c in range(8)) for r in range(8)
    )


def op_add(a, b, s=1) -> tuple:
    return tuple(tuple(x + s * y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def op_scale(a, s) -> tuple:
    return tuple(tuple(s * x for x in r) for r in a)


def op_commutator(a, b) -> tuple:
    return op_add(op_compose(a, b), op_compose(b, a), -1)


def op_is_zero(a) -> bool:
    return all(x == 0 for r in a for x in r)


def op_is_skew(m) -> bool:
    return all(m[r][c] + m[c][r] == 0 for r in range(8) for c in range(8))


def rotation(i: int, j: int) -> tuple:
    """``A_ij``: ``e_j -> e_i``, ``e_i -> -e_j``, other units fixed at 0."""
    if i == j:
        raise ValueError("rotation needs two distinct units")
    m = [[ZERO] * 8 for _ in range(8)]
    m[i][j] = ONE
    m[j][i] = -ONE
    return tuple(tuple(r) for r in m)


def spinor_op(kind: str, alpha: int, beta: int | None = None, table=None) -> tuple:
    """``L_a: x -> e_a x / 2``, ``L_ab: x -> e_a (e_b x) / 2`` and the right
    analogues ``R_a: x -> x e_a / 2``, ``R_ab: x -> (x e_b) e_a / 2``."""
    table = table or default_table()
    if kind not in ("L", "R"):
        raise ValueError("kind must be 'L' or 'R'")
    if not 1 <= alpha <= 7 or (beta is not None and not 1 <= beta <= 7):
        raise ValueError("spinor indices run over 1..7")
    if beta is not None and beta == alpha:
        raise ValueError("spinor operator needs two distinct indices")
    ea = Octonion.unit(alpha, table)
    if beta is None:
        if kind == "L":
            return operator_from(lambda x: (ea * x).scale(HALF), table)
        return operator_from(lambda x: (x * ea).scale(HALF), table)
    eb = Octonion.unit(beta, table)
    if kind == "L":
        return operator_from(lambda x: (ea * (eb * x)).scale(HALF), table)
    return operator_from(lambda x: ((x * eb) * ea).scale(HALF), table)


def triality_partner(a1, a2, table=None) -> tuple:
    """Third operator from the infinitesimal triality relation:
    ``A3(x) = conj(A1(conj x) + conj(x) A2(1))``."""
    table = table or default_table()
    one = Octonion.unit(0, table)
    a2_one = op_apply(a2, one)

    def f(x):
        xb = x.conj()
        return (op_apply(a1, xb) + xb * a2_one).conj()

    return operator_from(f, table)


def _so8_generators(table):
    """Lemma-style dictionary: ``A_0a <-> (L_a, R_a)``, ``A_ab <-> (L_ba, R_ba)``."""
    gens = []
    for a in range(1, 8):
        gens.append(((0, a), spinor_op("L", a, table=table), spinor_op("R", a, table=table)))
    for a in range(1, 8):
        for b in range(a + 1, 8):
            gens.append(((a, b), spinor_op("L", b, a, table), spinor_op("R", b, a, table)))
    return gens


def triality_check(table=None) -> CheckReport:
    """For every generator triple and all basis pairs (x, y):
    ``A1(x) y + x A2(y) = conj(A3(conj(x y)))`` with ``A3`` the rotation
    ``A_ij`` attached to the generator."""
    table = table or default_table()
    rep = CheckReport("triality")
    units = basis(table)
    for (i, j), a1, a2 in _so8_generators(table):
        a3 = rotation(i, j)
        derived = triality_partner(a1, a2, table)
        rep.checked += 1
        if derived != a3:
            rep.fail(("partner is not the rotation", i, j))
        for a, b in ((a1, "L"), (a2, "R"), (a3, "V")):
            if not op_is_skew(a):
                rep.fail(("not skew", b, i, j))
        for x in units:
            for y in units:
                rep.checked += 1
                lhs = op_apply(a1, x) * y + x * op_apply(a2, y)
                rhs = op_apply(a3, (x * y).conj()).conj()
                if lhs != rhs:
                    rep.fail((i, j, x, y))
    return rep


def _c_kind(kind: int, xi: Octonion, eta: Octonion):
    """The three operator shapes of the C-operators on one copy of Ca."""
    if kind == 1:  # z -> (z xi) conj(eta) - (z eta) conj(xi)
        return lambda z: (z * xi) * eta.conj() - (z * eta) * xi.conj()
    if kind == 2:  # z -> conj(eta) (xi z) - conj(xi) (eta z)
        return lambda z: eta.conj() * (xi * z) - xi.conj() * (eta * z)
    # z -> 4<xi, z> eta - 4<eta, z> xi
    return lambda z: eta.scale(4 * xi.inner(z)) - xi.scale(4 * eta.inner(z))


def c_operator(i: int, xi: Octonion, eta: Octonion, space: int = 3) -> tuple:
    """``C_{i,xi,eta}`` acting on ``Ca_space`` (space 3 is the defining one;
    spaces 1 and 2 follow by cyclically shifting the operator shape)."""
    if i not in (1, 2, 3) or space not in (1, 2, 3):
        raise ValueError("indices must be 1, 2 or 3")
    kind = (i - space) % 3 or 3
    return operator_from(_c_kind(kind, xi, eta), xi.table)


# ---------------------------------------------------------------------------
# the Jordan algebra h3(Ca)


class JordanElement:
    """``a1 E1 + a2 E2 + a3 E3 + X1(x1) + X2(x2) + X3(x3)``."""

    __slots__ = ("a", "x")

    def __init__(self, a: Sequence, x: Sequence[Octonion]):
        self.a = tuple(as_coeff(v) for v in a)
        self.x = tuple(x)

    @classmethod
    def zero(cls, table=None):
        return cls((0, 0, 0), [Octonion.zero(table)] * 3)

    def __add__(self, o):
        return JordanElement([p + q for p, q in zip(self.a, o.a)], [p + q for p, q in zip(self.x, o.x)])

    def __sub__(self, o):
        return JordanElement([p - q for p, q in zip(self.a, o.a)], [p - q for p, q in zip(self.x, o.x)])

    def scale(self, s):
        s = as_coeff(s)
        return JordanElement([s * p for p in self.a], [p.scale(s) for p in self.x])

    def __eq__(self, o):
        return isinstance(o, JordanElement) and self.a == o.a and self.x == o.x

    def __hash__(self):
        return hash((self.a, self.x))

    def __repr__(self):
        return f"JordanElement(a={self.a}, x={self.x})"

    def coords(self) -> tuple:
        """27 coordinates: ``a1, a2, a3`` then the octonions ``x1, x2, x3``."""
        return self.a + self.x[0].c + self.x[1].c + self.x[2].c

    @classmethod
    def from_coords(cls, c: Sequence, table=None):
        return cls(c[:3], [Octonion(c[3 + 8 * k: 11 + 8 * k], table) for k in range(3)])

    def norm2(self):
        return sum((v * v for v in self.a), ZERO) + 2 * sum((p.norm2() for p in self.x), ZERO)

    def to_matrix(self) -> list[list[Octonion]]:
        t = self.x[0].table
        m = [[Octonion.zero(t) for _ in range(3)] for _ in range(3)]
        for k in range(3):
            m[k][k] = Octonion.unit(0, t, self.a[k])
        x1, x2, x3 = self.x
        m[1][2], m[2][1] = x1, x1.conj()
        m[0][2], m[2][0] = x2.conj(), x2
        m[0][1], m[1][0] = x3, x3.conj()
        return m

    @classmethod
    def from_matrix(cls, m) -> "JordanElement":
        for k in range(3):
            if any(v != 0 for v in m[k][k].c[1:]):
                raise ValueError("diagonal entries of a Hermitian matrix must be real")
        pairs = ((1, 2), (0, 2), (0, 1))
        for r, c in pairs:
            if m[c][r] != m[r][c].conj():
                raise ValueError("matrix is not Hermitian")
        return cls([m[k][k].c[0] for k in range(3)], [m[1][2], m[2][0], m[0][1]])


def _mat_mul(p, q):
    t = p[0][0].table
    out = [[Octonion.zero(t) for _ in range(3)] for _ in range(3)]
    for r in range(3):
        for c in range(3):
            acc = Octonion.zero(t)
            for k in range(3):
                acc = acc + p[r][k] * q[k][c]
            out[r][c] = acc
    return out


def _mat_add(p, q, s=1):
    return [[p[r][c] + q[r][c].scale(s) for c in range(3)] for r in range(3)]


def jordan_mul_matrix(X: JordanElement, Y: JordanElement) -> JordanElement:
    """Oracle: ``(XY + YX)/2`` with explicit 3x3 octonionic matrices."""
    p, q = X.to_matrix(), Y.to_matrix()
    s = _mat_add(_mat_mul(p, q), _mat_mul(q, p))
    return JordanElement.from_matrix([[v.scale(HALF) for v in row] for row in s])


def jordan_mul(X: JordanElement, Y: JordanElement) -> JordanElement:
    """Bilinear expansion over the product table of ``E_i`` and ``X_i(x)``.

    ``X_i(x) o X_{i+1}(y) = X_{i+2}(conj(x y)) / 2`` (indices mod 3)."""
    t = X.x[0].table
    a = [ZERO, ZERO, ZERO]
    xs = [Octonion.zero(t) for _ in range(3)]
    for i in range(3):
        a[i] += X.a[i] * Y.a[i]
        for j in range(3):
            if j != i:
                # E_i o X_j(y) = X_j(y)/2 for i != j
                xs[j] = xs[j] + Y.x[j].scale(HALF * X.a[i]) + X.x[j].scale(HALF * Y.a[i])
    for i in range(3):
        s = X.x[i].inner(Y.x[i])
        if s != 0:
            for k in range(3):
                if k != i:
                    a[k] += s
        j, k = (i + 1) % 3, (i + 2) % 3
        # X_i(x) o X_j(y) with j = i+1, and the symmetric term X_j o X_i
        xs[k] = xs[k] + ((X.x[i] * Y.x[j]).conj() + (Y.x[i] * X.x[j]).conj()).scale(HALF)
    return JordanElement(a, xs)


def jordan_basis(table=None) -> list[JordanElement]:
    """27 basis elements: ``E1, E2, E3, X_i(e_k)`` for ``i = 1..3``, ``k = 0..7``."""
    t = table or default_table()
    z = Octonion.zero(t)
    out = []
    for k in range(3):
        a = [0, 0, 0]
        a[k] = 1
        out.append(JordanElement(a, [z, z, z]))
    for i in range(3):
        for k in range(8):
            xs = [z, z, z]
            xs[i] = Octonion.unit(k, t)
            out.append(JordanElement((0, 0, 0), xs))
    return out


def y_matrix(i: int, xi: Octonion):
    """Skew-Hermitian ``Y_i(xi)``."""
    t = xi.table
    m = [[Octonion.zero(t) for _ in range(3)] for _ in range(3)]
    if i == 1:
        m[1][2], m[2][1] = xi, -xi.conj()
    elif i == 2:
        m[0][2], m[2][0] = -xi.conj(), xi
    elif i == 3:
        m[0][1], m[1][0] = xi, -xi.conj()
    else:
        raise ValueError("Y index must be 1, 2 or 3")
    return m


def ad_y(i: int, xi: Octonion) -> Callable[[JordanElement], JordanElement]:
    """``X -> Y_i(xi) X - X Y_i(xi)`` as a map on h3(Ca)."""
    y = y_matrix(i, xi)

    def f(X: JordanElement) -> JordanElement:
        m = X.to_matrix()
        return JordanElement.from_matrix(_mat_add(_mat_mul(y, m), _mat_mul(m, y), -1))

    return f


def random_jordan(rng: random.Random, table=None, bound: int = 4) -> JordanElement:
    return JordanElement(
        [mpq(rng.randint(-bound, bound), rng.randint(1, 2)) for _ in range(3)],
        [random_octonion(rng, table, bound) for _ in range(3)],
    )


def ad_y_derivation_check(i: int, xi: Octonion, samples: int, seed: int = 0) -> CheckReport:
    rng = random.Random(seed)
    d = ad_y(i, xi)
    rep = CheckReport(f"ad Y{i} derivation")
    for _ in range(samples):
        X, Y = random_jordan(rng, xi.table), random_jordan(rng, xi.table)
        rep.checked += 1
        lhs = d(jordan_mul(X, Y))
        rhs = jordan_mul(d(X), Y) + jordan_mul(X, d(Y))
        if lhs != rhs:
            rep.fail((X, Y))
    return rep


def jordan_identity_check(samples: int, table=None, seed: int = 0) -> CheckReport:
    """Commutativity, ``(X o Y) o (X o X) = X o (Y o (X o X))`` and agreement of
    the product table with explicit matrices."""
    rng = random.Random(seed)
    rep = CheckReport("Jordan identity")
    for _ in range(samples):
        X, Y = random_jordan(rng, table), random_jordan(rng, table)
        rep.checked += 1
        xy = jordan_mul(X, Y)
        if xy != jordan_mul(Y, X):
            rep.fail(("commutativity", X, Y))
        if xy != jordan_mul_matrix(X, Y):
            rep.fail(("table vs matrices", X, Y))
        xx = jordan_mul(X, X)
        if jordan_mul(xy, xx) != jordan_mul(X, jordan_mul(Y, xx)):
            rep.fail(("Jordan identity", X, Y))
    return rep
