"""Relation DSL, shipped relation tables, verification, n-interpolation and
discovery.

DSL (one statement per line, ``#`` starts a comment)::

    space quat_proj(n >= 2):
    [D1,D3] = -1/2*{D0,D1} + D8 + n*(n-1)*D0
    @second-type-quat: 1/2*{D1,D2} - D3*D3 - D9 = D1 + D2

Identifiers ``D0..D10``, ``SQ``, ``SQ1..SQ3``; twisted blocks use ``DBAR0..``
and ``SQBAR``.  Literals are integers, ``a/b`` is division; ``n`` is the rank.
Block conditions are ``(n >= k)`` or ``(n == k)``; the octonionic block has
none.  ``@label:`` introduces a statement whose left side is not a
commutator.  A trailing ``# printed: ...`` comment records how an entry
appears in the source table when it had to be corrected.
"""
from __future__ import annotations

import re
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from itertools import combinations_with_replacement
from typing import Iterable, Sequence

from gmpy2 import mpq

from .exactcoeff import as_coeff, format_coeff
from .generators import GeneratorSet, build_generators, twist_phases
from .liealg import resolve_space
from .linsolve import Echelon, axpy
from .octonion import MultiplicationTable
from .uea import DegreeCapExceeded

__all__ = [
    "RelationSyntaxError",
    "UnknownGenerator",
    "Relation",
    "RelationReport",
    "SuiteReport",
    "parse_expr",
    "parse_relation",
    "parse_statement",
    "to_text",
    "load_dsl",
    "shipped_relations",
    "suite_relations",
    "Evaluator",
    "verify",
    "verify_suite",
    "Poly",
    "scalar_poly",
    "split_terms",
    "interpolate_n",
    "InterpolationResult",
    "discover",
    "DiscoveryResult",
    "ansatz_products",
    "free_expand",
    "combination_check",
    "combination_semantic_check",
    "report_json",
    "SCHEMA_VERSION",
    "bar_name",
]

SCHEMA_VERSION = 1
_IDENT = re.compile(r"(?:DBAR(?:10|[0-9])|D(?:10|[0-9])|SQBAR|SQ[1-3]?)")


class RelationSyntaxError(ValueError):
    def __init__(self, msg: str, column: int, text: str = ""):
        super().__init__(f"column {column}: {msg}" + (f" in {text!r}" if text else ""))
        self.column = column


class UnknownGenerator(ValueError):
    pass


# ---------------------------------------------------------------------------
# parsing


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


def _tokenize(text: str) -> list:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        col = m.start(m.lastindex) + 1
        if m.group(1):
            toks.append(("num", m.group(1), col))
        elif m.group(2):
            toks.append(("id", m.group(2), col))
        elif m.group(3):
            ch = m.group(3)
            if ch not in "+-*/()[]{},=":
                raise RelationSyntaxError(f"unexpected character {ch!r}", col, text)
            toks.append(("op", ch, col))
        pos = m.end()
    toks.append(("end", "", len(text) + 1))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, value=None):
        t = self.toks[self.i]
        if value is not None and t[1] != value:
            what = t[1] or "end of line"
            raise RelationSyntaxError(f"expected {value!r}, found {what!r}", t[2], self.text)
        self.i += 1
        return t

    def expr(self):
        node = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            rhs = self.term()
            node = ("add" if op == "+" else "sub", node, rhs)
        return node

    def term(self):
        node = self.unary()
        while self.peek()[1] in ("*", "/") and self.peek()[0] == "op":
            op = self.take()[1]
            rhs = self.unary()
            node = ("mul" if op == "*" else "div", node, rhs)
        return node

    def unary(self):
        t = self.peek()
        if t[0] == "op" and t[1] == "-":
            self.take()
            return ("neg", self.unary())
        if t[0] == "op" and t[1] == "+":
            self.take()
            return self.unary()
        return self.atom()

    def atom(self):
        t = self.take()
        kind, val, col = t
        if kind == "num":
            return ("num", mpq(int(val)))
        if kind == "id":
            if val == "n":
                return ("n",)
            if not _IDENT.fullmatch(val):
                raise UnknownGenerator(f"column {col}: unknown generator {val!r}")
            return ("gen", val)
        if kind == "op" and val == "(":
            node = self.expr()
            self.take(")")
            return node
        if kind == "op" and val in "[{":
            a = self.expr()
            self.take(",")
            b = self.expr()
            self.take("]" if val == "[" else "}")
            return ("comm" if val == "[" else "anti", a, b)
        raise RelationSyntaxError(f"unexpected {val or 'end of line'!r}", col, self.text)

    def finish(self):
        t = self.peek()
        if t[0] != "end":
            raise RelationSyntaxError(f"unexpected {t[1]!r}", t[2], self.text)


def parse_expr(text: str):
    p = _Parser(text)
    node = p.expr()
    p.finish()
    return node


def parse_statement(line: str):
    """``(label, lhs, rhs)``; unlabelled statements must have a commutator
    on the left."""
    label = None
    body = line
    m = re.match(r"\s*@([\w\-+.*]+)\s*:", line)
    if m:
        label = m.group(1)
        body = " " * m.end() + line[m.end():]
    p = _Parser(body)
    lhs = p.expr()
    p.take("=")
    rhs = p.expr()
    p.finish()
    if label is None and lhs[0] != "comm":
        raise RelationSyntaxError("left side must be a commutator [A,B] (or use an @label:)", 1, line)
    return label, lhs, rhs


def parse_relation(line: str):
    """``(lhs, rhs)`` of a statement."""
    _, lhs, rhs = parse_statement(line)
    return lhs, rhs


_PREC = {"add": 1, "sub": 1, "mul": 2, "div": 2, "neg": 3}


def to_text(node) -> str:
    """Canonical DSL text; ``parse_expr(to_text(a)) == a``."""
    kind = node[0]
    if kind == "num":
        return format_coeff(node[1])
    if kind == "n":
        return "n"
    if kind == "gen":
        return node[1]
    if kind in ("comm", "anti"):
        o, c = ("[", "]") if kind == "comm" else ("{", "}")
        return f"{o}{to_text(node[1])},{to_text(node[2])}{c}"
    if kind == "neg":
        return "-" + _wrap(node[1], 3, False)
    p = _PREC[kind]
    sym = {"add": " + ", "sub": " - ", "mul": "*", "div": "/"}[kind]
    return _wrap(node[1], p, False) + sym + _wrap(node[2], p, True)


def _wrap(node, prec: int, right: bool) -> str:
    k = node[0]
    inner = to_text(node)
    if k == "num" and node[1] < 0:
        return f"({inner})"
    if k == "num" and node[1].denominator != 1:
        return f"({inner})"
    p = _PREC.get(k, 4)
    if p < prec or (right and p == prec):
        return f"({inner})"
    return inner


def _leaves(node, out: set) -> set:
    if node[0] == "gen":
        out.add(node[1])
    for ch in node[1:]:
        if isinstance(ch, tuple):
            _leaves(ch, out)
    return out


# ---------------------------------------------------------------------------
# tables


@dataclass
class Relation:
    id: str
    space: str
    lhs: tuple
    rhs: tuple
    cond: tuple | None = None  # (">=", k) or ("==", k)
    label: str | None = None
    printed: str | None = None
    source: str = ""
    twist: bool = False

    def holds_for(self, n: int) -> bool:
        if self.cond is None:
            return True
        op, k = self.cond
        return n >= k if op == ">=" else n == k

    def text(self) -> str:
        body = f"{to_text(self.lhs)} = {to_text(self.rhs)}"
        return f"@{self.label}: {body}" if self.label else body


_HEADER = re.compile(r"^space\s+([\w\-]+)\s*(?:\(\s*n\s*(>=|==)\s*(\d+)\s*\))?\s*:\s*$")


def load_dsl(text: str, source: str = "<dsl>") -> list[Relation]:
    rels: list[Relation] = []
    space = None
    cond = None
    hyperbolic = False
    seen: dict = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        code, _, comment = raw.partition("#")
        line = code.strip()
        if not line:
            continue
        m = _HEADER.match(line)
        if m:
            spec = resolve_space(m.group(1))
            space, hyperbolic = spec.name, spec.hyperbolic
            cond = (m.group(2), int(m.group(3))) if m.group(2) else None
            continue
        if line.startswith("space"):
            raise RelationSyntaxError("malformed space header", 1, raw)
        if space is None:
            raise RelationSyntaxError("statement before any space header", 1, raw)
        try:
            label, lhs, rhs = parse_statement(line)
        except (RelationSyntaxError, UnknownGenerator) as exc:
            raise type(exc)(f"{source}:{lineno}: {exc}") if isinstance(exc, UnknownGenerator) \
                else RelationSyntaxError(f"{source}:{lineno}: {exc}", exc.column)
        for name in _leaves(lhs, set()) | _leaves(rhs, set()):
            if ("BAR" in name) != hyperbolic:
                raise UnknownGenerator(f"{source}:{lineno}: {name} does not belong to {space}")
        rid = label or to_text(lhs)
        key = (space, rid)
        seen[key] = seen.get(key, 0) + 1
        if seen[key] > 1:
            rid = f"{rid}#{seen[key]}"
        printed = None
        c = comment.strip()
        if c.startswith("printed:"):
            printed = c[len("printed:"):].split(" (")[0].strip()
        rels.append(Relation(rid, space, lhs, rhs, cond, label, printed, f"{source}:{lineno}"))
    return rels


_TABLE_FILES = ("quat.dsl", "complex.dsl", "real.dsl", "oct.dsl")
_SHIPPED: list | None = None


def shipped_relations() -> list[Relation]:
    global _SHIPPED
    if _SHIPPED is None:
        out = []
        base = resources.files("invdiff") / "tables"
        for fn in _TABLE_FILES:
            out.extend(load_dsl((base / fn).read_text(encoding="utf-8"), fn))
        _SHIPPED = out
    return list(_SHIPPED)


def suite_relations(space: str, n: int) -> list[Relation]:
    """Shipped relations for ``space`` at ``n``; hyperbolic spaces also get
    every compact relation carried over by the twist map (ids ``twist:...``)."""
    spec = resolve_space(space)
    rels = [r for r in shipped_relations() if r.space == spec.name and r.holds_for(n)]
    if spec.hyperbolic:
        compact = resolve_space(spec.family).name
        for r in shipped_relations():
            if r.space == compact and r.holds_for(n):
                rels.append(Relation("twist:" + r.id, spec.name, r.lhs, r.rhs, r.cond, r.label,
                                     None, r.source, twist=True))
    return rels


# ---------------------------------------------------------------------------
# evaluation


class Evaluator:
    """Evaluates DSL expressions to reduced elements of a generator set.

    Values are ``(True, scalar)`` or ``(False, terms)``.  Products keep the
    right factor K0-invariant, so the quotient module action applies; an
    expression touching an auxiliary (only partially invariant) generator is
    evaluated in full U(g) and reduced at the end.
    """

    def __init__(self, gs: GeneratorSet, n: int | None = None, twist: bool = False):
        self.gs = gs
        self.n = gs.n if n is None else n
        self.twist = twist
        self.phases = twist_phases(gs.family, gs.n) if twist else None
        self._cache: dict = {}
        self._full = False

    def _leaf(self, name: str):
        gs = self.gs
        if self.twist:
            if "BAR" in name:
                raise UnknownGenerator(f"{name} in a twist-mapped compact relation")
            ph = as_coeff(self.phases[name]) if name in self.phases else None
            if ph is None:
                raise UnknownGenerator(f"no twist phase for {name}")
            base = name
        else:
            if ("BAR" in name) != gs.hyperbolic:
                raise UnknownGenerator(f"{name} does not belong to {gs.space}")
            base = name.replace("BAR", "")
            ph = mpq(1)
        if base not in gs:
            raise UnknownGenerator(f"{name} is not a generator of {gs.space} at n={gs.n}")
        terms = gs[base].terms if self._full else gs.reduced(base).terms
        return False, {w: ph * c for w, c in terms.items()} if ph != 1 else terms

    def value(self, node):
        """Reduced terms (dict) of ``node``."""
        aux = {nm for nm in _leaves(node, set()) if nm.replace("BAR", "") in self.gs.auxiliary}
        self._full = bool(aux)
        cache = self._cache if not self._full else {}
        is_s, v = self._eval(node, cache)
        if is_s:
            return {(): v} if v != 0 else {}
        if self._full:
            k0 = self.gs.g.k0_start
            v = {w: c for w, c in v.items() if not w or w[-1] < k0}
        return v

    def _mul(self, a: dict, b: dict) -> dict:
        da = max((len(w) for w in a), default=0)
        db = max((len(w) for w in b), default=0)
        cap = self.gs.U.cap
        if a and b and da + db > cap:
            raise DegreeCapExceeded(f"product degree {da + db} exceeds cap {cap}")
        if self._full:
            return self.gs.U._act(a, b)
        return self.gs.Q.act(a, b)

    def _eval(self, node, cache):
        hit = cache.get(node)
        if hit is not None:
            return hit
        kind = node[0]
        if kind == "num":
            res = (True, node[1])
        elif kind == "n":
            res = (True, mpq(self.n))
        elif kind == "gen":
            res = self._leaf(node[1])
        elif kind == "neg":
            s, v = self._eval(node[1], cache)
            res = (True, -v) if s else (False, {w: -c for w, c in v.items()})
        elif kind in ("add", "sub"):
            sa, a = self._eval(node[1], cache)
            sb, b = self._eval(node[2], cache)
            sign = 1 if kind == "add" else -1
            if sa and sb:
                res = (True, a + sign * b)
            else:
                out = dict({(): a} if sa else a)
                if sa and a == 0:
                    out = {}
                axpy(out, sign, {(): b} if sb else b)
                res = (False, out)
        elif kind == "mul":
            sa, a = self._eval(node[1], cache)
            sb, b = self._eval(node[2], cache)
            if sa and sb:
                res = (True, a * b)
            elif sa:
                res = (False, {w: a * c for w, c in b.items()} if a != 0 else {})
            elif sb:
                res = (False, {w: c * b for w, c in a.items()} if b != 0 else {})
            else:
                res = (False, self._mul(a, b))
        elif kind == "div":
            sa, a = self._eval(node[1], cache)
            sb, b = self._eval(node[2], cache)
            if not sb:
                raise ValueError("division by a non-scalar expression")
            if b == 0:
                raise ZeroDivisionError(f"division by zero in {to_text(node)}")
            inv = 1 / b
            res = (True, a * inv) if sa else (False, {w: c * inv for w, c in a.items()})
        elif kind in ("comm", "anti"):
            sa, a = self._eval(node[1], cache)
            sb, b = self._eval(node[2], cache)
            if sa or sb:
                if kind == "comm":
                    res = (False, {})
                else:
                    s = a if sa else b
                    e = b if sa else a
                    if sa and sb:
                        res = (True, 2 * a * b)
                    else:
                        res = (False, {w: 2 * s * c for w, c in e.items()} if s != 0 else {})
            else:
                out = self._mul(a, b)
                out = dict(out)
                axpy(out, 1 if kind == "anti" else -1, self._mul(b, a))
                res = (False, out)
        else:
            raise ValueError(f"unknown node {kind}")
        cache[node] = res
        return res


@dataclass
class RelationReport:
    id: str
    space: str
    n: int
    status: str  # verified | failed
    residual: str
    ms: float
    error: str | None = None

    def to_dict(self) -> dict:
        d = {"id": self.id, "space": self.space, "n": self.n, "status": self.status,
             "residual": self.residual, "ms": round(self.ms, 3)}
        if self.error:
            d["error"] = self.error
        return d


def _resolve(relation, space):
    if isinstance(relation, Relation):
        return relation
    label, lhs, rhs = parse_statement(relation)
    spec = resolve_space(space)
    return Relation(label or to_text(lhs), spec.name, lhs, rhs, None, label)


def bar_name(name: str) -> str:
    """Twisted-algebra spelling of a generator name (``D3 -> DBAR3``)."""
    if "BAR" in name:
        return name
    return "SQBAR" if name == "SQ" else name.replace("D", "DBAR", 1)


def _gens(space: str, n: int, table: MultiplicationTable | None) -> GeneratorSet:
    return build_generators(space, n, table)


def verify(relation, space: str, n: int | None = None, table: MultiplicationTable | None = None,
           evaluator: Evaluator | None = None) -> RelationReport:
    """Evaluate both sides modulo U(g)k0 with ``n`` substituted."""
    rel = _resolve(relation, space)
    spec = resolve_space(space)
    gs = evaluator.gs if evaluator else _gens(space, n, table)
    ev = evaluator if evaluator and evaluator.twist == rel.twist else Evaluator(gs, twist=rel.twist)
    t0 = time.perf_counter()
    lhs = ev.value(rel.lhs)
    rhs = ev.value(rel.rhs)
    diff = dict(lhs)
    axpy(diff, -1, rhs)
    ms = (time.perf_counter() - t0) * 1000
    text = gs.U.serialize(_Terms(diff)) if diff else ""
    return RelationReport(rel.id, spec.name, gs.n, "verified" if not diff else "failed", text, ms)


class _Terms:
    __slots__ = ("terms",)

    def __init__(self, terms):
        self.terms = terms


@dataclass
class SuiteReport:
    space: str
    ns: list
    reports: list = field(default_factory=list)

    @property
    def total(self) -> int:
        return len(self.reports)

    @property
    def verified(self) -> int:
        return sum(1 for r in self.reports if r.status == "verified")

    @property
    def failed(self) -> int:
        return self.total - self.verified

    def worst(self) -> RelationReport | None:
        bad = [r for r in self.reports if r.status != "verified"]
        return max(bad, key=lambda r: r.residual.count("\n")) if bad else None

    def summary(self) -> dict:
        return {"total": self.total, "verified": self.verified, "failed": self.failed}

    def to_dict(self) -> dict:
        return report_json(self.reports)


def report_json(reports: Sequence[RelationReport]) -> dict:
    verified = sum(1 for r in reports if r.status == "verified")
    return {
        "schema_version": SCHEMA_VERSION,
        "results": [r.to_dict() for r in reports],
        "summary": {"total": len(reports), "verified": verified, "failed": len(reports) - verified},
    }


def _run_chunk(space: str, n: int, table_text: str | None, indices: list, cap: int | None):
    table = MultiplicationTable.loads(table_text) if table_text else None
    rels = suite_relations(space, n)
    gs = build_generators(space, n, table, cap)
    plain = Evaluator(gs)
    twisted = Evaluator(gs, twist=True) if gs.hyperbolic else None
    out = []
    for i in indices:
        rel = rels[i]
        ev = twisted if rel.twist else plain
        try:
            out.append((i, verify(rel, space, n, evaluator=ev)))
        except DegreeCapExceeded as exc:
            out.append((i, RelationReport(rel.id, gs.space, n, "failed", "", 0.0, f"degree cap: {exc}")))
    return n, out


def verify_suite(space: str, ns: Iterable[int], table: MultiplicationTable | None = None,
                 jobs: int = 1, relations: Sequence[Relation] | None = None) -> SuiteReport:
    """Run every shipped relation for each ``n``; results ordered by
    ``(n, table position)`` regardless of ``jobs``."""
    spec = resolve_space(space)
    ns = [2] if spec.family == "oct" else list(ns)
    rep = SuiteReport(spec.name, ns)
    if relations is not None:
        for n in ns:
            gs = _gens(space, n, table)
            ev, tw = Evaluator(gs), Evaluator(gs, twist=True) if gs.hyperbolic else None
            for rel in relations:
                if rel.holds_for(n):
                    rep.reports.append(verify(rel, space, n, evaluator=tw if rel.twist else ev))
        return rep
    table_text = table.dumps() if table is not None else None
    tasks = []
    for n in ns:
        count = len(suite_relations(space, n))
        width = max(1, min(jobs, count))
        for w in range(width):
            tasks.append((spec.name, n, table_text, list(range(w, count, width)), None))
    results: dict = {}
    if jobs <= 1:
        for t in tasks:
            n, out = _run_chunk(*t)
            for i, r in out:
                results[(n, i)] = r
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for n, out in pool.map(_run_chunk, *zip(*tasks)):
                for i, r in out:
                    results[(n, i)] = r
    rep.reports = [results[k] for k in sorted(results)]
    return rep


# ---------------------------------------------------------------------------
# polynomials in n


class Poly:
    """Polynomial in ``n`` with exact coefficients (``power -> coef``)."""

    __slots__ = ("c",)

    def __init__(self, c=None):
        self.c = {k: v for k, v in (c or {}).items() if v != 0}

    @classmethod
    def const(cls, a):
        return cls({0: as_coeff(a)})

    def __add__(self, o):
        out = dict(self.c)
        axpy(out, 1, o.c)
        return Poly(out)

    def __sub__(self, o):
        out = dict(self.c)
        axpy(out, -1, o.c)
        return Poly(out)

    def __neg__(self):
        return Poly({k: -v for k, v in self.c.items()})

    def __mul__(self, o):
        if not isinstance(o, Poly):
            o = Poly.const(o)
        out: dict = {}
        for i, a in self.c.items():
            for j, b in o.c.items():
                axpy(out, a * b, {i + j: mpq(1)})
        return Poly(out)

    def __eq__(self, o):
        return isinstance(o, Poly) and self.c == o.c

    def __hash__(self):
        return hash(frozenset(self.c.items()))

    def degree(self) -> int:
        return max(self.c, default=-1)

    def __call__(self, n):
        return sum((v * mpq(n) ** k for k, v in self.c.items()), mpq(0))

    def __str__(self):
        if not self.c:
            return "0"
        parts = []
        for k in sorted(self.c, reverse=True):
            v = self.c[k]
            mono = "" if k == 0 else ("n" if k == 1 else f"n^{k}")
            coef = format_coeff(v)
            if mono and v == 1:
                s = mono
            elif mono and v == -1:
                s = "-" + mono
            elif mono:
                s = f"{coef}*{mono}"
            else:
                s = coef
            parts.append(s)
        return " + ".join(parts).replace("+ -", "- ")

    __repr__ = __str__

    @staticmethod
    def interpolate(points: Sequence[tuple]) -> "Poly":
        """Lagrange interpolation through ``(n, value)`` points."""
        total = Poly()
        for i, (xi, yi) in enumerate(points):
            term = Poly.const(yi)
            for j, (xj, _) in enumerate(points):
                if i != j:
                    term = term * Poly({1: mpq(1), 0: -mpq(xj)}) * Poly.const(1 / mpq(xi - xj))
            total = total + term
        return total


def scalar_poly(node) -> Poly:
    """A generator-free expression as a polynomial in ``n``."""
    kind = node[0]
    if kind == "num":
        return Poly.const(node[1])
    if kind == "n":
        return Poly({1: mpq(1)})
    if kind == "neg":
        return -scalar_poly(node[1])
    if kind == "add":
        return scalar_poly(node[1]) + scalar_poly(node[2])
    if kind == "sub":
        return scalar_poly(node[1]) - scalar_poly(node[2])
    if kind == "mul":
        return scalar_poly(node[1]) * scalar_poly(node[2])
    if kind == "div":
        d = scalar_poly(node[2])
        if d.degree() > 0 or not d.c:
            raise ValueError("division by a non-constant")
        return scalar_poly(node[1]) * (1 / d.c[0])
    raise ValueError(f"{to_text(node)} is not a scalar expression")


def _is_scalar(node) -> bool:
    return not _leaves(node, set())


def split_terms(node) -> list[tuple]:
    """Linear decomposition ``[(coef Poly, structural node)]`` distributing
    scalars over sums; structural nodes are merged by equality."""
    acc: dict = {}

    def rec(nd, coef: Poly):
        k = nd[0]
        if _is_scalar(nd):
            key = ("num", mpq(1))
            acc[key] = acc.get(key, Poly()) + coef * scalar_poly(nd)
            return
        if k == "neg":
            rec(nd[1], -coef)
        elif k in ("add", "sub"):
            rec(nd[1], coef)
            rec(nd[2], coef if k == "add" else -coef)
        elif k == "mul" and _is_scalar(nd[1]):
            rec(nd[2], coef * scalar_poly(nd[1]))
        elif k == "mul" and _is_scalar(nd[2]):
            rec(nd[1], coef * scalar_poly(nd[2]))
        elif k == "div":
            rec(nd[1], coef * (1 / scalar_poly(nd[2]).c[0]))
        else:
            acc[nd] = acc.get(nd, Poly()) + coef

    rec(node, Poly.const(1))
    return [(c, nd) for nd, c in acc.items() if c.c]


@dataclass
class InterpolationResult:
    id: str
    space: str
    samples: list
    terms: list  # (structural text, fitted Poly, shipped Poly)

    @property
    def matches(self) -> bool:
        return all(f == s for _, f, s in self.terms)

    def coefficient(self, structural: str) -> Poly:
        for t, f, _ in self.terms:
            if t == structural:
                return f
        raise KeyError(structural)


def interpolate_n(relation, space: str, samples: Sequence[int],
                  table: MultiplicationTable | None = None) -> InterpolationResult:
    """Fit each right-side coefficient as a polynomial in ``n``.

    At every sample the left side is solved exactly against the structural
    terms of the shipped right side; the solutions are interpolated and
    compared with the shipped coefficient polynomials.
    """
    rel = None
    if isinstance(relation, str):
        spec = resolve_space(space)
        key = relation.replace(" ", "")
        for r in shipped_relations():
            if r.id == key and r.space == spec.name:
                rel = r
                break
        if rel is None and "=" not in relation:
            raise KeyError(f"no shipped relation {relation!r} for {space}")
    if rel is None:
        rel = _resolve(relation, space)
    samples = list(samples)
    terms = split_terms(rel.rhs)
    if len(samples) < 3:
        raise ValueError("at least 3 samples are needed (coefficients have degree <= 2 in n)")
    fits: dict = {i: [] for i in range(len(terms))}
    for n in samples:
        gs = _gens(space, n, table)
        ev = Evaluator(gs, twist=rel.twist)
        target = ev.value(rel.lhs)
        ech = Echelon()
        for i, (_, nd) in enumerate(terms):
            ech.add(ev.value(nd), i)
        if ech.dependencies:
            raise ValueError(f"structural terms are dependent at n={n}; choose other samples")
        sol = ech.solve(target)
        if not sol.consistent:
            raise ValueError(f"inconsistent term support at n={n}: the left side is not in the span")
        for i in range(len(terms)):
            fits[i].append((n, sol.coefficients.get(i, mpq(0))))
    out = []
    for i, (coef, nd) in enumerate(terms):
        out.append((to_text(nd), Poly.interpolate(fits[i]), coef))
    return InterpolationResult(rel.id, resolve_space(space).name, samples, out)


# ---------------------------------------------------------------------------
# discovery


def ansatz_products(names: Sequence[str], degrees: dict, d: int) -> list[tuple]:
    """Ordered products ``(i1 <= ... <= ik)`` of total declared degree ``<= d``,
    including the empty product, sorted by degree then position."""
    out = [()]
    idx = list(range(len(names)))

    def rec(start, left, cur):
        for t in range(start, len(idx)):
            dg = degrees[names[t]]
            if dg <= left:
                nxt = cur + (names[t],)
                out.append(nxt)
                rec(t, left - dg, nxt)

    rec(0, d, ())
    pos = {nm: i for i, nm in enumerate(names)}
    return sorted(out, key=lambda p: (sum(degrees[x] for x in p), [pos[x] for x in p]))


@dataclass
class DiscoveryResult:
    consistent: bool
    coefficients: dict  # product tuple -> coefficient
    nullity: int
    rank: int
    ansatz_size: int
    residual: dict

    def expression(self) -> str:
        if not self.consistent:
            return "<no representation at this degree>"
        if not self.coefficients:
            return "0"
        parts = []
        for prod, c in self.coefficients.items():
            mono = "*".join(prod)
            if not mono:
                parts.append(format_coeff(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                cs = format_coeff(c)
                parts.append(f"({cs})*{mono}" if "i" in cs else f"{cs}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def discover(target, space: str, n: int | None = None, d: int = 2, table: MultiplicationTable | None = None,
             basis: dict | None = None) -> DiscoveryResult:
    """Express the reduced ``target`` in ordered products of generators.

    ``basis`` optionally replaces the generators by named reduced elements
    ``name -> (terms, degree)``.  Underdetermined systems return the basic
    solution on the earliest independent products, then greedily shrink its
    support along null vectors; ``nullity`` reports the null space dimension.
    """
    gs = _gens(space, n, table)
    if d > gs.U.cap:
        raise DegreeCapExceeded(f"degree bound {d} exceeds cap {gs.U.cap}")
    ev = Evaluator(gs)
    if isinstance(target, str):
        target = parse_expr(target)
    if isinstance(target, tuple):
        tvec = ev.value(target)
    else:
        tvec = dict(target)
    if basis is None:
        names = [bar_name(nm) if gs.hyperbolic else nm for nm in gs.order]
        degrees = {nm: gs.degrees[base] for nm, base in zip(names, gs.order)}
        vecs = {nm: gs.reduced(base).terms for nm, base in zip(names, gs.order)}
    else:
        names = list(basis)
        degrees = {k: v[1] for k, v in basis.items()}
        vecs = {k: v[0] for k, v in basis.items()}
    products = ansatz_products(names, degrees, d)
    memo: dict = {(): {(): mpq(1)}}

    def vec(p):
        hit = memo.get(p)
        if hit is None:
            hit = gs.Q.act(vecs[p[0]], vec(p[1:]))
            memo[p] = hit
        return hit

    ech = Echelon()
    for p in products:
        ech.add(vec(p), p)
    sol = ech.solve(tvec)
    coeffs = dict(sol.coefficients)
    if sol.consistent and ech.dependencies:
        coeffs = _shrink(coeffs, ech.dependencies, products)
    order = {p: i for i, p in enumerate(products)}
    coeffs = dict(sorted(coeffs.items(), key=lambda kv: order[kv[0]]))
    return DiscoveryResult(sol.consistent, coeffs if sol.consistent else {}, len(ech.dependencies),
                           ech.rank, len(products), sol.residual)


def _shrink(x: dict, deps: list, products: list) -> dict:
    order = {p: i for i, p in enumerate(products)}

    def key(v):
        return (len(v), sorted(order[p] for p in v))

    best = dict(x)
    improved = True
    while improved:
        improved = False
        for dep in deps:
            for t in list(best):
                if t not in dep or t not in best:
                    continue
                cand = dict(best)
                axpy(cand, -best[t] / dep[t], dep)
                if key(cand) < key(best):
                    best = cand
                    improved = True
    return best


# ---------------------------------------------------------------------------
# the D9 + D10 observation


def free_expand(node) -> dict:
    """Expansion in the free associative algebra on the generator names:
    ``word (tuple of names) -> coef``; scalars must be free of ``n`` here."""
    k = node[0]
    if k in ("num", "n"):
        return {(): scalar_poly(node)} if k == "n" else {(): Poly.const(node[1])}
    if k == "gen":
        return {(node[1],): Poly.const(1)}
    if k == "neg":
        return {w: -c for w, c in free_expand(node[1]).items()}
    if k in ("add", "sub"):
        out = dict(free_expand(node[1]))
        for w, c in free_expand(node[2]).items():
            out[w] = (out.get(w, Poly()) + c) if k == "add" else (out.get(w, Poly()) - c)
        return {w: c for w, c in out.items() if c.c}
    a = free_expand(node[1])
    b = free_expand(node[2])
    if k == "div":
        inv = 1 / scalar_poly(node[2]).c[0]
        return {w: c * inv for w, c in a.items()}

    def prod(x, y, sign=1):
        out: dict = {}
        for w1, c1 in x.items():
            for w2, c2 in y.items():
                w = w1 + w2
                val = c1 * c2 * sign
                out[w] = out.get(w, Poly()) + val
        return out

    if k == "mul":
        out = prod(a, b)
    else:
        out = prod(a, b)
        for w, c in prod(b, a, -1 if k == "comm" else 1).items():
            out[w] = out.get(w, Poly()) + c
    return {w: c for w, c in out.items() if c.c}


def combination_check(relations: Iterable[Relation], pair=("D9", "D10")) -> dict:
    """Syntactic check that ``pair`` occurs only through its sum: substitute
    ``D9 -> S + T``, ``D10 -> S - T`` in the free expansion of every right
    side and collect relations where ``T`` survives."""
    a, b = pair
    out = {}
    for rel in relations:
        exp = free_expand(rel.rhs)
        words: dict = {}
        for w, c in exp.items():
            cur = {(): c}
            for x in w:
                nxt: dict = {}
                opts = [("S", 1), ("T", 1)] if x == a else [("S", 1), ("T", -1)] if x == b else [(x, 1)]
                for u, cu in cur.items():
                    for y, s in opts:
                        key = u + (y,)
                        nxt[key] = nxt.get(key, Poly()) + cu * s
                cur = nxt
            for u, cu in cur.items():
                words[u] = words.get(u, Poly()) + cu
        bad = {u: c for u, c in words.items() if c.c and "T" in u}
        out[rel.id] = not bad
    return out


def combination_semantic_check(relation: Relation, space: str = "quat", n: int = 3, d: int | None = None,
                               table: MultiplicationTable | None = None) -> dict:
    """Re-derive the left side over generators with ``D9, D10`` replaced by
    ``S = D9 + D10`` and ``T = D9 - D10``; report whether ``T`` occurs."""
    gs = _gens(space, n, table)
    s = dict(gs.reduced("D9").terms)
    axpy(s, 1, gs.reduced("D10").terms)
    t = dict(gs.reduced("D9").terms)
    axpy(t, -1, gs.reduced("D10").terms)
    basis = {nm: (gs.reduced(nm).terms, gs.degrees[nm]) for nm in gs.order if nm not in ("D9", "D10")}
    basis["S"] = (s, 4)
    basis["T"] = (t, 4)
    if d is None:
        d = max((sum(gs.degrees.get(x, 4) for x in w) for w in free_expand(relation.rhs)), default=0)
    res = discover(relation.lhs, space, n, d, table, basis=basis)
    uses_t = any("T" in p for p in res.coefficients)
    return {"id": relation.id, "consistent": res.consistent, "nullity": res.nullity,
            "uses_T": uses_t, "degree": d, "expression": res.expression()}
