from __future__ import annotations

from gmpy2 import mpq
from hypothesis import given, strategies as st

from invdiff.linsolve import Echelon, axpy, solve_combination
from oracles import F, frac_rank, frac_solve

small = st.integers(-4, 4)
matrices = st.integers(1, 6).flatmap(
    lambda r: st.integers(1, 6).flatmap(lambda c: st.lists(st.lists(small, min_size=c, max_size=c),
                                                           min_size=r, max_size=r)))


def as_vec(row):
    return {j: mpq(v) for j, v in enumerate(row) if v}


def test_axpy_drops_zeros():
    y = {"a": mpq(1), "b": mpq(2)}
    axpy(y, -1, {"a": mpq(1)})
    assert y == {"b": 2}


def test_dependency_recorded():
    ech = Echelon()
    assert ech.add({0: mpq(1), 1: mpq(1)}, "u")
    assert ech.add({1: mpq(1)}, "v")
    assert not ech.add({0: mpq(2), 1: mpq(3)}, "w")
    (dep,) = ech.dependencies
    # w - 2u - v = 0
    assert dep == {"w": 1, "u": -2, "v": -1}


def test_inconsistent_target():
    res = solve_combination([("x", {0: mpq(1)})], {1: mpq(1)})
    assert not res.consistent and res.residual == {1: 1}


@given(matrices)
def test_rank_matches_oracle(rows):
    ech = Echelon()
    for i, row in enumerate(rows):
        ech.add(as_vec(row), i)
    assert ech.rank == frac_rank(rows, len(rows[0]))
    assert ech.rank + len(ech.dependencies) == len(rows)


@given(matrices, st.data())
def test_solution_reconstructs_target(rows, data):
    ncol = len(rows[0])
    weights = data.draw(st.lists(small, min_size=len(rows), max_size=len(rows)))
    target = [sum(w * r[j] for w, r in zip(weights, rows)) for j in range(ncol)]
    res = solve_combination([(i, as_vec(r)) for i, r in enumerate(rows)], as_vec(target))
    assert res.consistent
    rebuilt = {}
    for i, c in res.coefficients.items():
        axpy(rebuilt, c, as_vec(rows[i]))
    assert rebuilt == as_vec(target)
    # the Fraction oracle agrees that a solution exists
    assert frac_solve([[r[j] for j in range(ncol)] for r in rows], target) is not None


@given(matrices, st.lists(small, min_size=6, max_size=6))
def test_consistency_matches_oracle(rows, t):
    ncol = len(rows[0])
    target = t[:ncol]
    res = solve_combination([(i, as_vec(r)) for i, r in enumerate(rows)], as_vec(target))
    assert res.consistent == (frac_solve(rows, target) is not None)
    for dep in _dependencies(rows):
        acc = {}
        for i, c in dep.items():
            axpy(acc, c, as_vec(rows[i]))
        assert acc == {}


def _dependencies(rows):
    ech = Echelon()
    for i, r in enumerate(rows):
        ech.add(as_vec(r), i)
    return ech.dependencies


def test_fraction_conversion_roundtrip():
    assert F(mpq(-3, 7)) * 7 == -3
