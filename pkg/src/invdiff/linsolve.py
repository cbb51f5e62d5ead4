"""Incremental exact row echelon over sparse vectors.

Vectors are plain dicts ``key -> coefficient``.  Rows are added one at a
time; each stored row remembers which combination of the added rows it is,
so solving ``sum c_i row_i = target`` returns the ``c_i`` directly.

Stored row ``k`` never contains the pivot column of an earlier row, so a
vector is reduced by walking pivots in creation order (a heap keeps the
walk linear in the number of pivots actually touched).
"""
from __future__ import annotations

import heapq
from typing import Hashable, Iterable

from gmpy2 import mpq

__all__ = ["Echelon", "SolveResult", "solve_combination", "axpy"]


def axpy(y: dict, a, x: dict) -> None:
    """``y += a*x`` in place, dropping zeros."""
    if a == 0:
        return
    get = y.get
    for k, v in x.items():
        s = get(k, 0) + a * v
        if s == 0:
            if k in y:
                del y[k]
        else:
            y[k] = s


class SolveResult:
    __slots__ = ("consistent", "coefficients", "residual", "nullity")

    def __init__(self, consistent, coefficients, residual, nullity):
        self.consistent = consistent
        self.coefficients = coefficients
        self.residual = residual
        self.nullity = nullity

    def __repr__(self):
        state = "consistent" if self.consistent else "inconsistent"
        return f"SolveResult({state}, {len(self.coefficients)} terms, nullity={self.nullity})"


class Echelon:
    def __init__(self, track: bool = True):
        self.track = track
        self.rows: list[dict] = []
        self.combos: list[dict] = []
        self.pivot_col: list[Hashable] = []
        self.col_to_row: dict = {}
        self.dependencies: list[dict] = []  # combinations that vanish

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, vec: dict, combo: dict | None = None):
        """Return ``(residual, combo)`` with ``vec = residual + sum combo_i row_i``."""
        v = dict(vec)
        acc = {} if combo is None else dict(combo)
        col_to_row = self.col_to_row
        heap = [col_to_row[c] for c in v if c in col_to_row]
        heapq.heapify(heap)
        seen = set(heap)
        while heap:
            k = heapq.heappop(heap)
            c = self.pivot_col[k]
            a = v.get(c)
            if a is None:
                continue
            row = self.rows[k]
            get = v.get
            for key, val in row.items():
                s = get(key, 0) - a * val
                if s == 0:
                    v.pop(key, None)
                else:
                    v[key] = s
                    r = col_to_row.get(key)
                    if r is not None and r not in seen:
                        seen.add(r)
                        heapq.heappush(heap, r)
            v.pop(c, None)
            if self.track:
                axpy(acc, a, self.combos[k])
        return v, acc

    def add(self, vec: dict, tag: Hashable, pivot_key=None) -> bool:
        """Add a row labelled ``tag``.  Returns False if it was dependent."""
        residual, acc = self.reduce(vec)
        if not residual:
            dep = {tag: mpq(1)}
            axpy(dep, -1, acc)
            self.dependencies.append(dep)
            return False
        col = min(residual, key=pivot_key) if pivot_key else next(iter(residual))
        lead = residual[col]
        inv = 1 / lead
        row = {k: v * inv for k, v in residual.items()}
        row[col] = mpq(1)
        combo = {}
        if self.track:
            combo = {tag: inv}
            axpy(combo, -inv, acc)
        self.col_to_row[col] = len(self.rows)
        self.rows.append(row)
        self.combos.append(combo)
        self.pivot_col.append(col)
        return True

    def solve(self, target: dict) -> SolveResult:
        residual, acc = self.reduce(target)
        return SolveResult(not residual, acc, residual, len(self.dependencies))


def solve_combination(vectors: Iterable[tuple[Hashable, dict]], target: dict) -> SolveResult:
    """Express ``target`` as a combination of the tagged vectors."""
    ech = Echelon()
    for tag, vec in vectors:
        ech.add(vec, tag)
    return ech.solve(target)
