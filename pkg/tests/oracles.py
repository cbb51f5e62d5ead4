"""Independent oracles for the test suite.

Everything here is written from the defining formulas with
``fractions.Fraction`` and plain tuples.  The engine's coefficient type,
bracket tables, straightening and elimination are not used.
"""
from __future__ import annotations

import re
from fractions import Fraction
from itertools import product

__all__ = [
    "F",
    "Gauss",
    "quaternion_mul",
    "label_matrix",
    "mat_mul",
    "mat_add",
    "mat_scale",
    "mat_zero",
    "mat_commutator",
    "cd_octonion_mul",
    "frac_rank",
    "frac_solve",
    "lagrange",
    "poly_from_roots",
    "adjoint_matrices",
    "to_gauss",
    "sparse_mat_mul",
    "sparse_identity",
    "sparse_add",
]


def F(x) -> Fraction:
    """Engine coefficient (mpq or int) to Fraction via its text form."""
    if isinstance(x, Fraction):
        return x
    return Fraction(str(x))


class Gauss:
    """Exact complex number ``re + im*I`` over Fraction."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    def __add__(self, o):
        o = _g(o)
        return Gauss(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return Gauss(-self.re, -self.im)

    def __sub__(self, o):
        return self + (-_g(o))

    def __rsub__(self, o):
        return _g(o) - self

    def __mul__(self, o):
        o = _g(o)
        return Gauss(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = _g(o)
        d = o.re * o.re + o.im * o.im
        if d == 0:
            raise ZeroDivisionError("Gauss division by zero")
        return self * Gauss(o.re / d, -o.im / d)

    def conj(self):
        return Gauss(self.re, -self.im)

    def __eq__(self, o):
        o = _g(o)
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __repr__(self):
        return f"Gauss({self.re}, {self.im})"


def to_gauss(c) -> Gauss:
    """Engine coefficient (mpq or GaussRational) to Gauss."""
    if hasattr(c, "im") and not isinstance(c, (int, Fraction)):
        return Gauss(F(c.re), F(c.im))
    return Gauss(F(c))


def _g(x) -> Gauss:
    if isinstance(x, Gauss):
        return x
    return Gauss(Fraction(x), 0)


# ---------------------------------------------------------------------------
# quaternions with Gauss scalars (the scalar I commutes with i, j, k)


def quaternion_mul(p, q):
    a1, b1, c1, d1 = p
    a2, b2, c2, d2 = q
    return (
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    )


_QZERO = (Gauss(), Gauss(), Gauss(), Gauss())


def _qadd(p, q):
    return tuple(a + b for a, b in zip(p, q))


def _qscale(p, s):
    return tuple(a * s for a in p)


def mat_zero(N):
    return [[_QZERO for _ in range(N)] for _ in range(N)]


def mat_mul(A, B):
    N = len(A)
    out = mat_zero(N)
    for r in range(N):
        for c in range(N):
            acc = _QZERO
            for k in range(N):
                if any(A[r][k]) and any(B[k][c]):
                    acc = _qadd(acc, quaternion_mul(A[r][k], B[k][c]))
            out[r][c] = acc
    return out


def mat_add(A, B, s=1):
    return [[_qadd(a, _qscale(b, s)) for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_scale(A, s):
    return [[_qscale(a, s) for a in row] for row in A]


def mat_commutator(A, B):
    return mat_add(mat_mul(A, B), mat_mul(B, A), -1)


_UNIT = {"Psi": 0, "Ups": 1, "Omg": 2, "The": 3}


def _unit_matrix(kind: str, k: int, j: int, N: int):
    """``Psi_kj = (E_kj - E_jk)/2`` and ``X_kj = u (E_kj + E_jk)/2`` for the
    imaginary unit ``u`` of ``X`` (1-based indices)."""
    m = mat_zero(N)
    u = _UNIT[kind]
    half = Fraction(1, 2)

    def put(r, c, s):
        q = [Gauss(), Gauss(), Gauss(), Gauss()]
        q[u] = Gauss(s)
        m[r - 1][c - 1] = _qadd(m[r - 1][c - 1], tuple(q))

    if kind == "Psi":
        put(k, j, half)
        put(j, k, -half)
    else:
        put(k, j, half)
        put(j, k, half)
    return m


_LAB = re.compile(r"^(Psi|Ups|Omg|The)(\d)(\d)$")


def label_matrix(label: str, N: int):
    """Matrix of a classical-family basis label, from the defining formulas."""
    m = _LAB.match(label)
    if m:
        return _unit_matrix(m.group(1), int(m.group(2)), int(m.group(3)), N)

    def star(kind, k):  # (X_11 - X_kk) / 2
        return mat_scale(mat_add(_unit_matrix(kind, 1, 1, N), _unit_matrix(kind, k, k, N), -1), Fraction(1, 2))

    m = re.match(r"^(Ups|Omg|The)\*$", label)
    if m:
        return star(m.group(1), 2)
    m = re.match(r"^sum(Ups|Omg|The)$", label)
    if m:
        out = mat_zero(N)
        for k in range(1, N + 1):
            out = mat_add(out, _unit_matrix(m.group(1), k, k, N))
        return out
    m = re.match(r"^Ups(\d)-Ups3$", label)
    if m:
        return mat_add(star("Ups", int(m.group(1))), star("Ups", 3), -1)
    if label == "2Ups3-Ups2":
        return mat_add(mat_scale(star("Ups", 3), 2), star("Ups", 2), -1)
    raise KeyError(label)


# ---------------------------------------------------------------------------
# octonions by Cayley-Dickson doubling of Hamilton quaternions


def _qconj(p):
    return (p[0], -p[1], -p[2], -p[3])


def cd_octonion_mul(x, y):
    """``(a, b)(c, d) = (ac - conj(d) b, d a + b conj(c))`` on 8-tuples."""
    a, b = tuple(x[:4]), tuple(x[4:])
    c, d = tuple(y[:4]), tuple(y[4:])
    first = tuple(u - v for u, v in zip(quaternion_mul(a, c), quaternion_mul(_qconj(d), b)))
    second = tuple(u + v for u, v in zip(quaternion_mul(d, a), quaternion_mul(b, _qconj(c))))
    return first + second


# ---------------------------------------------------------------------------
# linear algebra and interpolation over Fraction


def _rref(rows, ncols):
    m = [list(r) for r in rows]
    piv_cols = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        piv_cols.append(c)
        r += 1
    return m, piv_cols


def frac_rank(rows, ncols) -> int:
    return len(_rref([[Fraction(v) for v in row] for row in rows], ncols)[1])


def frac_solve(columns, target):
    """Solve ``sum x_j columns[j] = target``; returns a particular solution
    (free variables zero) or None.  Vectors are equal-length lists."""
    n = len(columns)
    rows = [[Fraction(columns[j][i]) for j in range(n)] + [Fraction(target[i])] for i in range(len(target))]
    m, piv = _rref(rows, n + 1)
    if n in piv:
        return None
    x = [Fraction(0)] * n
    for r, c in enumerate(piv):
        x[c] = m[r][n]
    return x


def lagrange(points):
    """Coefficient list (constant first) of the interpolating polynomial."""
    coeffs = [Fraction(0)] * len(points)
    for i, (xi, yi) in enumerate(points):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if j == i:
                continue
            basis = [Fraction(0)] + basis  # multiply by x
            for t in range(len(basis) - 1):
                basis[t] -= xj * basis[t + 1]
            denom *= xi - xj
        for t, b in enumerate(basis):
            coeffs[t] += Fraction(yi) * b / denom
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def poly_from_roots(lead, roots):
    """Coefficients (constant first) of ``lead * prod (x - r)``."""
    c = [Fraction(lead)]
    for r in roots:
        c = [Fraction(0)] + c
        for t in range(len(c) - 1):
            c[t] -= Fraction(r) * c[t + 1]
    return c


# ---------------------------------------------------------------------------
# adjoint representation


def adjoint_matrices(dim, bracket):
    """``ad(x_i)`` as dict-of-dict sparse matrices from a bracket callback
    ``bracket(i, j) -> {k: coef}``."""
    mats = []
    for i in range(dim):
        cols = {}
        for j in range(dim):
            for k, c in bracket(i, j).items():
                cols.setdefault(k, {})[j] = to_gauss(c)
        mats.append(cols)
    return mats


def sparse_mat_mul(A, B):
    out = {}
    for r, row in A.items():
        acc = {}
        for k, a in row.items():
            for c, b in B.get(k, {}).items():
                acc[c] = acc.get(c, Gauss()) + a * b
        acc = {c: v for c, v in acc.items() if v}
        if acc:
            out[r] = acc
    return out


def sparse_identity(dim):
    return {i: {i: Gauss(1)} for i in range(dim)}


def sparse_add(A, B, s=Gauss(1)):
    out = {r: dict(row) for r, row in A.items()}
    for r, row in B.items():
        dst = out.setdefault(r, {})
        for c, v in row.items():
            dst[c] = dst.get(c, Gauss()) + v * s
    return {r: {c: v for c, v in row.items() if v} for r, row in out.items() if any(row.values())}


def pairs(n):
    return list(product(range(n), repeat=2))
