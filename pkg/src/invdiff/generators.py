"""Generator sets of the algebras of invariant differential operators.

Every generator is built in U(g) from the distinguished frame of its Lie
algebra (``Lambda``, ``e1``/``f1`` for the lambda root spaces, ``e2``/``f2``
for 2 lambda) and kept in full PBW normal form; the reduced representative
modulo U(g)k0 sits alongside.

Generator names are ``D0``..``D10``, ``SQ`` (the extra quadratic operator of
the complex and three-sphere cases) and ``SQ1``..``SQ3`` (auxiliary quaternionic
quadratics, invariant only under the Sp(n-1) factor of K0).  Twisted sets use
the same names; formulas are evaluated verbatim in the twisted algebra.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from gmpy2 import mpq

from .exactcoeff import I, as_coeff
from .liealg import (
    LieAlgebra,
    build_algebra,
    frame_gram,
    matrix_unit_label,
    resolve_space,
)
from .linsolve import Echelon, axpy
from .octonion import CheckReport, MultiplicationTable, default_table, unit_product
from .reduction import Quotient, ReducedElement, ideal_reduce
from .uea import UEA, UEAElement, degree_cap

__all__ = [
    "GeneratorSet",
    "build_generators",
    "casimir",
    "central_elements",
    "apply_automorphism",
    "automorphism_map",
    "automorphism_check",
    "identify",
    "TWIST_PHASES",
    "twist_phase_check",
    "twist_image",
    "twist_phases",
    "centrality_check",
    "product_commutation_check",
    "symbol_rank",
    "invariant_symbol_dimension",
    "oct_d9_printed",
    "OCT_D9_PREFACTOR",
    "OCT_D9_PRINTED_PREFACTOR",
]

HALF = mpq(1, 2)

# The printed double-anticommutator formula for the octonionic D9 carries
# 1/8; the printed relation tables hold for 1/16 (see oct_d9_printed).
OCT_D9_PREFACTOR = mpq(1, 16)
OCT_D9_PRINTED_PREFACTOR = mpq(1, 8)


@dataclass
class GeneratorSet:
    family: str
    n: int
    hyperbolic: bool
    g: LieAlgebra
    U: UEA
    Q: Quotient
    elements: dict = field(default_factory=dict)  # name -> UEAElement (full normal form)
    degrees: dict = field(default_factory=dict)  # name -> declared degree
    order: list = field(default_factory=list)  # D-generators (excludes auxiliaries)
    auxiliary: list = field(default_factory=list)  # built but only K1-invariant
    _reduced: dict = field(default_factory=dict, repr=False)
    _sums: dict = field(default_factory=dict, repr=False)

    @property
    def space(self) -> str:
        return resolve_space(f"{self.family}{'-hyp' if self.hyperbolic else ''}").name

    def __getitem__(self, name: str) -> UEAElement:
        return self.elements[name]

    def __contains__(self, name: str) -> bool:
        return name in self.elements

    def names(self) -> list:
        return list(self.order) + list(self.auxiliary)

    def reduced(self, name: str) -> ReducedElement:
        r = self._reduced.get(name)
        if r is None:
            r = ideal_reduce(self.elements[name])
            self._reduced[name] = r
        return r

    def is_k0_invariant(self, name: str) -> bool:
        return name not in self.auxiliary

    def dump(self) -> str:
        """Canonical text of every generator, ``## name`` headed blocks."""
        out = []
        for name in self.names():
            out.append(f"## {name} (degree {self.degrees[name]})")
            out.append(self.elements[name].to_text().rstrip("\n"))
        return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# construction helpers


class _Builder:
    def __init__(self, g: LieAlgebra, U: UEA):
        self.g = g
        self.U = U
        fr = g.frame
        self.Lam = U.from_vector(fr["Lambda"])
        self.e1 = [U.from_vector(v) for v in fr["e1"]]
        self.f1 = [U.from_vector(v) for v in fr["f1"]]
        self.e2 = [U.from_vector(v) for v in fr["e2"]]
        self.f2 = [U.from_vector(v) for v in fr["f2"]]

    def x(self, kind: str, k: int, j: int) -> UEAElement:
        return self.U.gen(matrix_unit_label(kind, k, j, self.g))

    def label(self, lab: str) -> UEAElement:
        return self.U.gen(lab)

    def anti(self, a: UEAElement, b: UEAElement) -> UEAElement:
        return self.U.anticommutator(a, b)

    def total(self, items) -> UEAElement:
        out: dict = {}
        for e in items:
            axpy(out, 1, e.terms)
        return UEAElement(out, self.U)

    def sum_sq(self, xs) -> UEAElement:
        return self.total(a * a for a in xs)

    def half_anti_sum(self, xs, ys) -> UEAElement:
        return self.total(self.anti(a, b) for a, b in zip(xs, ys)).scale(HALF)


def _common(b: _Builder, out: dict, deg: dict) -> None:
    out["D0"] = b.Lam
    deg["D0"] = 1
    if b.e1:
        out["D1"] = b.sum_sq(b.e1)
        out["D2"] = b.sum_sq(b.f1)
        out["D3"] = b.half_anti_sum(b.e1, b.f1)
        deg.update(D1=2, D2=2, D3=2)
    if b.e1 and b.e2:
        out["D4"] = b.sum_sq(b.e2)
        out["D5"] = b.sum_sq(b.f2)
        out["D6"] = b.half_anti_sum(b.e2, b.f2)
        deg.update(D4=2, D5=2, D6=2)


def _quat_squares(b: _Builder) -> dict:
    N = b.g.n + 1
    a, x = b.anti, b.x
    ks = range(3, N + 1)
    sq1 = b.total(
        -a(x("P", 1, k), x("U", 2, k)) + a(x("P", 2, k), x("U", 1, k))
        + a(x("T", 1, k), x("O", 2, k)) - a(x("T", 2, k), x("O", 1, k))
        for k in ks
    ).scale(HALF)
    sq2 = b.total(
        -a(x("P", 1, k), x("O", 2, k)) + a(x("P", 2, k), x("O", 1, k))
        + a(x("U", 1, k), x("T", 2, k)) - a(x("U", 2, k), x("T", 1, k))
        for k in ks
    ).scale(HALF)
    sq3 = b.total(
        -a(x("P", 1, k), x("T", 2, k)) + a(x("P", 2, k), x("T", 1, k))
        + a(x("O", 1, k), x("U", 2, k)) - a(x("O", 2, k), x("U", 1, k))
        for k in ks
    ).scale(HALF)
    return {"SQ1": sq1, "SQ2": sq2, "SQ3": sq3}


def _quaternionic(b: _Builder, out: dict, deg: dict, aux: list) -> None:
    _common(b, out, deg)
    sq = _quat_squares(b)
    out.update(sq)
    aux.extend(["SQ1", "SQ2", "SQ3"])
    deg.update(SQ1=2, SQ2=2, SQ3=2)
    s1, s2, s3 = sq["SQ1"], sq["SQ2"], sq["SQ3"]
    U12, O12, T12 = b.e2
    Us, Os, Ts = b.f2
    a = b.anti
    out["D7"] = (a(s1, U12) + a(s2, O12) + a(s3, T12)).scale(HALF)
    out["D8"] = (a(s1, Us) + a(s2, Os) + a(s3, Ts)).scale(HALF)
    out["D9"] = s1 * s1 + s2 * s2 + s3 * s3
    out["D10"] = b.total(
        [s1 * O12 * Ts, -(s1 * Os * T12), s2 * Us * T12, -(s2 * U12 * Ts), s3 * Os * U12, -(s3 * O12 * Us)]
    )
    deg.update(D7=3, D8=3, D9=4, D10=4)


def _complex(b: _Builder, out: dict, deg: dict, aux: list) -> None:
    _common(b, out, deg)
    N = b.g.n + 1
    a, x = b.anti, b.x
    out["SQ"] = b.total(
        -a(x("P", 1, k), x("U", 2, k)) + a(x("P", 2, k), x("U", 1, k)) for k in range(3, N + 1)
    ).scale(HALF)
    out["D4"] = b.e2[0]
    out["D5"] = b.f2[0]
    deg.update(SQ=2, D4=1, D5=1)


def _real(b: _Builder, out: dict, deg: dict, aux: list) -> None:
    n = b.g.n
    out["D0"] = b.Lam
    deg["D0"] = 1
    if n == 2:
        out["D1"] = b.e2[0]
        out["D2"] = b.f2[0]
        deg.update(D1=1, D2=1)
        return
    out["D1"] = b.sum_sq(b.e2)
    out["D2"] = b.sum_sq(b.f2)
    out["D3"] = b.half_anti_sum(b.e2, b.f2)
    deg.update(D1=2, D2=2, D3=2)
    if n == 3:
        a, x = b.anti, b.x
        out["SQ"] = (a(x("P", 1, 3), x("P", 2, 4)) - a(x("P", 1, 4), x("P", 2, 3))).scale(2)
        deg["SQ"] = 2


def _oct_index(table: MultiplicationTable, i: int, j: int) -> tuple:
    """``e_i conj(e_j)`` for ``i != j`` as ``(sign, alpha)`` with ``alpha >= 1``."""
    s, k = unit_product(table, i, j, conj_right=True)
    if k == 0:
        raise ValueError("e_i conj(e_j) is real only for i == j")
    return s, k


def _octonionic(b: _Builder, out: dict, deg: dict, aux: list, table: MultiplicationTable) -> None:
    _common(b, out, deg)
    a = b.anti
    e1, f1, e2, f2 = b.e1, b.f1, b.e2, b.f2
    idx = {(i, j): _oct_index(table, i, j) for i in range(8) for j in range(8) if i != j}

    def e2u(i, j):
        s, k = idx[(i, j)]
        return e2[k - 1].scale(s)

    def f2u(i, j):
        s, k = idx[(i, j)]
        return f2[k - 1].scale(s)

    pairs = [(i, j) for i in range(8) for j in range(8) if i != j]
    fe = {(i, j): a(f1[j], e1[i]) for i, j in pairs}
    out["D7"] = b.total(a(fe[p], e2u(*p)) for p in pairs).scale(mpq(1, 4))
    out["D8"] = b.total(a(fe[p], f2u(*p)) for p in pairs).scale(mpq(1, 4))

    left_f = {(i, j): a(e2u(i, j), f1[i]) for i, j in pairs}
    left_e = {(i, j): a(e2u(i, j), e1[i]) for i, j in pairs}
    right_e = {(k, j): a(f2u(k, j), e1[k]) for k, j in pairs}
    right_f = {(k, j): a(f2u(k, j), f1[k]) for k, j in pairs}
    terms = []
    for j in range(8):
        lf = b.total(left_f[(i, j)] for i in range(8) if i != j)
        le = b.total(left_e[(i, j)] for i in range(8) if i != j)
        re = b.total(right_e[(k, j)] for k in range(8) if k != j)
        rf = b.total(right_f[(k, j)] for k in range(8) if k != j)
        terms.append(a(lf, re) - a(le, rf))
    raw = b.total(terms)
    out["D9"] = raw.scale(OCT_D9_PREFACTOR)
    out["_D9_sum"] = raw
    deg.update(D7=3, D8=3, D9=4)


_ORDER = {
    "quat": ["D0", "D1", "D2", "D3", "D4", "D5", "D6", "D7", "D8", "D9", "D10"],
    "oct": ["D0", "D1", "D2", "D3", "D4", "D5", "D6", "D7", "D8", "D9"],
    "complex": ["D0", "D1", "D2", "D3", "D4", "D5", "SQ"],
}

_SETS: dict = {}


def build_generators(space: str, n: int | None = None, table: MultiplicationTable | None = None,
                     cap: int | None = None) -> GeneratorSet:
    """Generator set for ``space`` at rank ``n`` (cached per algebra)."""
    spec = resolve_space(space)
    if spec.family == "oct":
        table = table or default_table()
    g = build_algebra(space, n, table)
    if cap is None:
        cap = degree_cap()
    key = (id(g), cap)
    hit = _SETS.get(key)
    if hit is not None:
        return hit
    U = UEA(g, cap)
    b = _Builder(g, U)
    out: dict = {}
    deg: dict = {}
    aux: list = []
    if spec.family == "quat":
        _quaternionic(b, out, deg, aux)
    elif spec.family == "complex":
        _complex(b, out, deg, aux)
    elif spec.family == "real":
        _real(b, out, deg, aux)
    else:
        _octonionic(b, out, deg, aux, table)
    sums = {k: out.pop(k) for k in [k for k in out if k.startswith("_")]}
    if spec.family == "real":
        order = [k for k in ("D0", "D1", "D2", "D3", "SQ") if k in out]
    else:
        order = list(_ORDER[spec.family])
    gs = GeneratorSet(spec.family, g.n, spec.hyperbolic, g, U, Quotient(U), out, deg, order, aux)
    gs._sums = sums
    _SETS[key] = gs
    return gs


def oct_d9_printed(gs: GeneratorSet) -> GeneratorSet:
    """Copy of an octonionic set whose D9 uses the printed 1/8 prefactor."""
    if gs.family != "oct":
        raise ValueError("only the octonionic family has this D9")
    els = dict(gs.elements)
    els["D9"] = gs._sums["_D9_sum"].scale(OCT_D9_PRINTED_PREFACTOR)
    return GeneratorSet(gs.family, gs.n, gs.hyperbolic, gs.g, gs.U, gs.Q, els,
                        dict(gs.degrees), list(gs.order), list(gs.auxiliary))


# ---------------------------------------------------------------------------
# central elements


def _poly(gs: GeneratorSet, parts) -> UEAElement:
    """``sum coef * product(names)`` evaluated in U(g)."""
    U = gs.U
    out: dict = {}
    for coef, names in parts:
        e = U.one()
        for nm in names:
            e = e * gs[nm]
        axpy(out, as_coeff(coef), e.terms)
    return UEAElement(out, U)


def central_elements(gs: GeneratorSet) -> dict:
    """Named central elements: ``Dstar`` for every family except the real
    family, which has ``D1star``/``D2star`` (n >= 3) or ``Dstar`` (n = 2)."""
    s = -1 if gs.hyperbolic else 1
    fam, n = gs.family, gs.n
    if fam in ("quat", "oct"):
        return {"Dstar": _poly(gs, [(1, ("D0", "D0")), (1, ("D1",)), (s, ("D2",)), (1, ("D4",)), (s, ("D5",))])}
    if fam == "complex":
        return {"Dstar": _poly(gs, [(1, ("D0", "D0")), (1, ("D1",)), (s, ("D2",)),
                                    (1, ("D4", "D4")), (s, ("D5", "D5"))])}
    if n == 2:
        return {"Dstar": _poly(gs, [(1, ("D0", "D0")), (1, ("D1", "D1")), (s, ("D2", "D2"))])}
    c = 1 - mpq((n - 3) * (n - 1), 4)
    d1 = _poly(gs, [(1, ("D0", "D0")), (1, ("D1",)), (s, ("D2",))])
    d2 = _poly(gs, [(HALF, ("D1", "D2")), (HALF, ("D2", "D1")), (-1, ("D3", "D3")), (c, ("D1",)), (s * c, ("D2",))])
    return {"D1star": d1, "D2star": d2}


def casimir(space: str, n: int = 3, table: MultiplicationTable | None = None) -> UEAElement:
    """The Casimir element in generator form (``D1star`` for the real family)."""
    gs = build_generators(space, n, table)
    cs = central_elements(gs)
    return cs.get("Dstar", cs.get("D1star"))


# ---------------------------------------------------------------------------
# automorphisms


def automorphism_map(g: LieAlgebra, kind: str) -> list:
    """Image vector of every basis element under ``sigma`` or ``zeta_pi``."""
    if kind == "sigma":
        return [{i: mpq(-1 if g.in_p(i) else 1)} for i in range(g.dim)]
    if kind != "zeta_pi":
        raise ValueError("automorphism kind must be sigma or zeta_pi")
    if g.twisted:
        raise ValueError("zeta_pi is implemented for the compact algebras only")
    fr = g.frame
    img: dict = {"Lambda": fr["Lambda"]}
    for t, v in enumerate(fr["e1"]):
        img[("e1", t)] = {k: -c for k, c in fr["f1"][t].items()}
    for t, v in enumerate(fr["f1"]):
        img[("f1", t)] = dict(fr["e1"][t])
    for t, v in enumerate(fr["e2"]):
        img[("e2", t)] = {k: -c for k, c in v.items()}
    for t, v in enumerate(fr["f2"]):
        img[("f2", t)] = {k: -c for k, c in v.items()}
    coords = frame_gram(g)
    out = []
    for i in range(g.dim):
        vec: dict = {}
        for tag, c in coords[i].items():
            if isinstance(tag, tuple) and tag[0] == "k0":
                axpy(vec, c, {tag[1]: mpq(1)})
            else:
                axpy(vec, c, img[tag])
        out.append(vec)
    return out


def automorphism_check(g: LieAlgebra, kind: str) -> CheckReport:
    """``phi([x, y]) = [phi x, phi y]`` on all basis pairs."""
    phi = automorphism_map(g, kind)
    rep = CheckReport(f"{kind} automorphism of {g.name}")

    def apply(v):
        out: dict = {}
        for i, c in v.items():
            axpy(out, c, phi[i])
        return out

    for i in range(g.dim):
        for j in range(i + 1, g.dim):
            rep.checked += 1
            lhs = apply(g.bracket_basis(i, j))
            rhs = g.bracket(phi[i], phi[j])
            if lhs != rhs:
                rep.fail(f"[{g.labels[i]}, {g.labels[j]}]")
    return rep


def _apply_map(U: UEA, phi: list, a: UEAElement) -> UEAElement:
    imgs = [U.from_vector(v) for v in phi]
    out: dict = {}
    for w, c in a.terms.items():
        e = U.one()
        for x in w:
            e = e * imgs[x]
        axpy(out, c, e.terms)
    return UEAElement(out, U)


def apply_automorphism(kind: str, gs: GeneratorSet) -> GeneratorSet:
    """Images of every generator under ``sigma`` or ``zeta_pi``, normal-formed."""
    phi = automorphism_map(gs.g, kind)
    imgs = {name: _apply_map(gs.U, phi, e) for name, e in gs.elements.items()}
    return GeneratorSet(gs.family, gs.n, gs.hyperbolic, gs.g, gs.U, gs.Q, imgs,
                        dict(gs.degrees), list(gs.order), list(gs.auxiliary))


def identify(a: UEAElement, gs: GeneratorSet) -> tuple | None:
    """``(sign, name)`` with ``a = sign * gs[name]``, or None."""
    for name in gs.names():
        e = gs[name]
        if a == e:
            return 1, name
        if a == -e:
            return -1, name
    return None


# ---------------------------------------------------------------------------
# compact vs twisted generators



TWIST_PHASES = {
    "quat": {"D0": I, "D1": -1, "D2": 1, "D3": I, "D4": -1, "D5": 1, "D6": I,
             "D7": -1, "D8": I, "D9": -1, "D10": -1},
    "oct": {"D0": I, "D1": -1, "D2": 1, "D3": I, "D4": -1, "D5": 1, "D6": I,
            "D7": -1, "D8": I, "D9": -1},
    "complex": {"D0": I, "D1": -1, "D2": 1, "D3": I, "D4": I, "SQ": I, "D5": 1},
    "real": {"D0": I, "D1": -1, "D2": 1, "D3": I, "SQ": I},
    "real2": {"D0": I, "D1": I, "D2": 1},
}


def twist_phases(family: str, n: int) -> dict:
    if family == "real" and n == 2:
        return TWIST_PHASES["real2"]
    return TWIST_PHASES[family]


def twist_image(gs: GeneratorSet, a: UEAElement) -> dict:
    """Coefficients of ``phi(a)`` where ``phi`` sends each p basis element
    ``x`` to ``i x'``; the result lives on the same words."""
    g = gs.g
    pw = (mpq(1), I, mpq(-1), -I)
    return {w: c * pw[sum(1 for x in w if g.in_p(x)) % 4] for w, c in a.terms.items()}


def twist_phase_check(compact: GeneratorSet, twisted: GeneratorSet) -> CheckReport:
    """``phi(D_k) = phase_k * Dbar_k`` term by term for the printed phases."""
    if compact.hyperbolic or not twisted.hyperbolic or compact.family != twisted.family:
        raise ValueError("need a compact set and its twisted twin")
    phases = twist_phases(compact.family, compact.n)
    rep = CheckReport(f"twist phases {compact.g.name} -> {twisted.g.name}")
    for name in compact.order:
        rep.checked += 1
        lhs = twist_image(compact, compact[name])
        ph = as_coeff(phases[name])
        rhs = {w: ph * c for w, c in twisted[name].terms.items()}
        if lhs != rhs:
            rep.fail(name)
    return rep


# ---------------------------------------------------------------------------
# diagnostics


def product_commutation_check(gs: GeneratorSet) -> CheckReport:
    """Pairwise commutation of the three factors in every summand of the
    quaternionic ``D10``."""
    if gs.family != "quat":
        raise ValueError("only the quaternionic family has D10")
    U = gs.U
    e2, f2 = [U.from_vector(v) for v in gs.g.frame["e2"]], [U.from_vector(v) for v in gs.g.frame["f2"]]
    (U12, O12, T12), (Us, Os, Ts) = e2, f2
    s1, s2, s3 = gs["SQ1"], gs["SQ2"], gs["SQ3"]
    summands = {
        "SQ1.Omg12.The*": (s1, O12, Ts), "SQ1.Omg*.The12": (s1, Os, T12),
        "SQ2.Ups*.The12": (s2, Us, T12), "SQ2.Ups12.The*": (s2, U12, Ts),
        "SQ3.Omg*.Ups12": (s3, Os, U12), "SQ3.Omg12.Ups*": (s3, O12, Us),
    }
    rep = CheckReport(f"D10 factor commutation in {gs.g.name}")
    for name, (a, b, c) in summands.items():
        for p, q, tag in ((a, b, "12"), (a, c, "13"), (b, c, "23")):
            rep.checked += 1
            if not U.commutator(p, q).is_zero():
                rep.fail(f"{name} factors {tag}")
    return rep


def _symbol(a: UEAElement) -> dict:
    d = a.degree()
    return {w: c for w, c in a.terms.items() if len(w) == d}


def _eval_grad(sym: dict, point: list, dim: int) -> dict:
    grad: dict = {}
    for w, c in sym.items():
        for pos in range(len(w)):
            val = c
            for q, x in enumerate(w):
                if q != pos:
                    val = val * point[x]
            axpy(grad, val, {w[pos]: mpq(1)})
    return grad


def symbol_rank(gs: GeneratorSet, names=None, seed: int = 0) -> int:
    """Rank of the Jacobian of the leading symbols at a random rational point
    (generic rank = number of functionally independent symbols)."""
    names = list(names or gs.order)
    rng = random.Random(seed)
    point = [mpq(rng.randint(-50, 50), rng.randint(1, 9)) for _ in range(gs.g.dim)]
    ech = Echelon(track=False)
    for nm in names:
        ech.add(_eval_grad(_symbol(gs.reduced(nm)), point, gs.g.dim), nm)
    return ech.rank


def invariant_symbol_dimension(gs: GeneratorSet, degree: int, prime: int = 2_147_483_647) -> dict:
    """Dimension of K0-invariant homogeneous polynomials of ``degree`` on the
    complement of k0 against the span of products of generator symbols.

    Ranks are computed modulo ``prime`` (a lower bound on the rational rank,
    equal for all but finitely many primes).  Diagnostic only.
    """
    from itertools import combinations_with_replacement

    g = gs.g
    k0 = g.k0_start
    vars_ = list(range(k0))
    monos = list(combinations_with_replacement(vars_, degree))
    col = {m: t for t, m in enumerate(monos)}
    p = prime

    def red(c) -> int:
        c = mpq(c)
        return int(c.numerator) * pow(int(c.denominator), -1, p) % p

    # invariance map: f acts as a derivation, images of p~ stay in p~
    rows: dict = {}
    for f in range(k0, g.dim):
        act = {x: [(k, red(c)) for k, c in g.brk[f][x]] for x in vars_}
        for m in monos:
            for pos, x in enumerate(m):
                rest = m[:pos] + m[pos + 1:]
                for k, c in act[x]:
                    key = (f, tuple(sorted(rest + (k,))))
                    row = rows.setdefault(key, {})
                    t = col[m]
                    row[t] = (row.get(t, 0) + c) % p
    rank = _rank_mod_p([r for r in rows.values() if any(r.values())], p)
    inv_dim = len(monos) - rank

    # products of generator symbols with total degree ``degree``
    syms = {nm: {w: red(c) for w, c in _symbol(gs.reduced(nm)).items()} for nm in gs.order}
    degs = {nm: gs.degrees[nm] for nm in gs.order}
    prods = []

    def rec(start, left, cur):
        if left == 0:
            prods.append(cur)
            return
        for t in range(start, len(gs.order)):
            nm = gs.order[t]
            if degs[nm] <= left:
                rec(t, left - degs[nm], cur + [nm])

    rec(0, degree, [])
    vecs = []
    for names in prods:
        poly = {(): 1}
        for nm in names:
            nxt: dict = {}
            for w1, c1 in poly.items():
                for w2, c2 in syms[nm].items():
                    w = tuple(sorted(w1 + w2))
                    nxt[w] = (nxt.get(w, 0) + c1 * c2) % p
            poly = {w: c for w, c in nxt.items() if c}
        vecs.append({col[w]: c for w, c in poly.items() if w in col})
    gen_rank = _rank_mod_p(vecs, p)
    return {"degree": degree, "monomials": len(monos), "invariants": inv_dim,
            "generated": gen_rank, "products": len(prods)}


def _rank_mod_p(rows: list, p: int) -> int:
    pivots: dict = {}
    for r in rows:
        v = {k: c % p for k, c in r.items() if c % p}
        while v:
            col = min(v)
            piv = pivots.get(col)
            if piv is None:
                inv = pow(v[col], -1, p)
                pivots[col] = {k: c * inv % p for k, c in v.items()}
                break
            a = v[col]
            for k, c in piv.items():
                s = (v.get(k, 0) - a * c) % p
                if s:
                    v[k] = s
                else:
                    v.pop(k, None)
    return len(pivots)


def centrality_check(gs: GeneratorSet) -> CheckReport:
    """Every central element commutes with every generator modulo U(g)k0."""
    rep = CheckReport(f"central elements of {gs.g.name}")
    Q = gs.Q
    for cname, c in central_elements(gs).items():
        rc = ideal_reduce(c)
        for name in gs.order:
            rep.checked += 1
            if not Q.commutator(rc, gs.reduced(name)).is_zero():
                rep.fail(f"[{cname}, {name}]")
    return rep
