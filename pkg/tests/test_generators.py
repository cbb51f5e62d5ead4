from __future__ import annotations

from fractions import Fraction

import pytest

from invdiff.exactcoeff import I
from invdiff.generators import (
    OCT_D9_PREFACTOR,
    apply_automorphism,
    automorphism_check,
    build_generators,
    casimir,
    central_elements,
    centrality_check,
    identify,
    invariant_symbol_dimension,
    product_commutation_check,
    symbol_rank,
    twist_phase_check,
    twist_phases,
)
from invdiff.liealg import build_algebra
from invdiff.reduction import coset_equal, ideal_reduce, is_invariant


def _psi(U, k, j):
    if k == j:
        return U.zero()
    return U.gen(f"Psi{k}{j}") if k < j else -U.gen(f"Psi{j}{k}")


@pytest.fixture(scope="module")
def quat3():
    return build_generators("quat", 3)


def test_quaternionic_degrees(quat3):
    assert quat3.order == [f"D{k}" for k in range(11)]
    assert [quat3.degrees[k] for k in quat3.order] == [1, 2, 2, 2, 2, 2, 2, 3, 3, 4, 4]
    for k in quat3.order:
        assert quat3[k].degree() == quat3.degrees[k]
    assert quat3.auxiliary == ["SQ1", "SQ2", "SQ3"]


def test_complex_and_oct_degrees():
    c = build_generators("complex", 3)
    assert {k: c.degrees[k] for k in c.order} == dict(D0=1, D1=2, D2=2, D3=2, D4=1, D5=1, SQ=2)
    o = build_generators("f4")
    assert [o.degrees[k] for k in o.order] == [1, 2, 2, 2, 2, 2, 2, 3, 3, 4]
    assert OCT_D9_PREFACTOR == Fraction(1, 16)


@pytest.mark.parametrize("n", [4, 5])
def test_sphere_generators(n):
    gs = build_generators("sphere", n)
    assert gs.order == ["D0", "D1", "D2", "D3"]
    U = gs.U
    d1 = U.zero()
    for k in range(3, n + 2):
        d1 = d1 + (U.gen(f"Psi1{k}") * U.gen(f"Psi1{k}")).scale(4)
    assert gs["D1"] == d1
    assert gs["D0"] == U.gen("Psi12").scale(-2)


def test_sphere_n2_and_n3():
    gs = build_generators("sphere", 2)
    assert gs.order == ["D0", "D1", "D2"]
    U = gs.U
    assert gs["D1"] == U.gen("Psi13").scale(2) and gs["D2"] == U.gen("Psi23").scale(-2)
    assert build_algebra("sphere", 2).dim == 3
    assert build_generators("sphere", 3).order == ["D0", "D1", "D2", "D3", "SQ"]


def test_automorphism_lists(quat3):
    for kind in ("sigma", "zeta_pi"):
        assert automorphism_check(quat3.g, kind).passed
    sig = apply_automorphism("sigma", quat3)
    got = {k: identify(sig[k], quat3) for k in quat3.names()}
    for k in ("D0", "D3", "D6", "D8", "SQ1", "SQ2", "SQ3"):
        assert got[k] == (-1, k)
    for k in ("D1", "D2", "D4", "D5", "D7", "D9", "D10"):
        assert got[k] == (1, k)
    zeta = apply_automorphism("zeta_pi", quat3)
    got = {k: identify(zeta[k], quat3) for k in quat3.names()}
    assert got["D1"] == (1, "D2") and got["D2"] == (1, "D1") and got["D3"] == (-1, "D3")
    for k in ("D0", "D4", "D5", "D6", "D9", "D10", "SQ1"):
        assert got[k] == (1, k)
    assert got["D7"] == (-1, "D7") and got["D8"] == (-1, "D8")
    both = apply_automorphism("sigma", zeta)
    assert identify(both["D1"], quat3) == (1, "D2") and identify(both["D4"], quat3) == (1, "D4")
    with pytest.raises(ValueError):
        apply_automorphism("zeta_pi", build_generators("quat-hyp", 2))


@pytest.mark.parametrize("space,n", [("quat", 2), ("quat", 3), ("complex", 2), ("complex", 3),
                                     ("sphere", 2), ("sphere", 3), ("sphere", 4), ("f4", 2)])
def test_twist_phases(space, n):
    compact = build_generators(space, n)
    hyp = {"quat": "quat-hyp", "complex": "complex-hyp", "sphere": "real-hyp", "f4": "oct-hyp"}[space]
    rep = twist_phase_check(compact, build_generators(hyp, n))
    assert rep.passed and rep.checked == len(compact.order), rep.summary()


def test_printed_twist_table():
    p = twist_phases("quat", 3)
    assert (p["D0"], p["D1"], p["D2"], p["D8"], p["D10"]) == (I, -1, 1, I, -1)
    assert twist_phases("real", 2)["D1"] == I


@pytest.mark.parametrize("space,n", [("quat", 2), ("quat", 3), ("complex", 2), ("complex", 3),
                                     ("sphere", 2), ("sphere", 3), ("sphere", 4),
                                     ("quat-hyp", 2), ("complex-hyp", 3), ("real-hyp", 4)])
def test_centrality(space, n):
    rep = centrality_check(build_generators(space, n))
    assert rep.passed, rep.summary()


@pytest.mark.slow
def test_centrality_oct():
    rep = centrality_check(build_generators("f4"))
    assert rep.passed, rep.summary()


def test_casimir_forms():
    gs = build_generators("complex", 3)
    U = gs.U
    want = gs["D0"] * gs["D0"] + gs["D1"] + gs["D2"] + gs["D4"] * gs["D4"] + gs["D5"] * gs["D5"]
    assert casimir("complex", 3) == want
    assert set(central_elements(build_generators("sphere", 3))) == {"D1star", "D2star"}
    sq = build_generators("sphere", 3)
    Q = sq.Q
    for k in sq.order:
        assert Q.commutator(sq.reduced("SQ"), sq.reduced(k)).is_zero()


def test_d10_factors_commute():
    for n in (2, 3):
        rep = product_commutation_check(build_generators("quat", n))
        assert rep.passed and rep.checked == 18


def test_squares_from_d1(quat3):
    U = quat3.U
    for lab, sq in (("Ups12", "SQ1"), ("Omg12", "SQ2"), ("The12", "SQ3")):
        assert U.commutator(quat3["D1"], U.gen(lab)) == quat3[sq]


def test_d1_d4_commutators(quat3):
    U = quat3.U
    assert coset_equal(U.commutator(quat3["D1"], quat3["D4"]), quat3["D7"].scale(2))[0]
    assert coset_equal(U.commutator(quat3["D2"], quat3["D4"]), quat3["D7"].scale(-2))[0]


@pytest.mark.parametrize("n", [3, 4, 5])
def test_sphere_partial_sums(n):
    gs = build_generators("sphere", n)
    U = gs.U
    N = n + 1
    s1 = U.zero()
    for k in range(3, N + 1):
        for l in range(3, N + 1):
            if k != l:
                s1 = s1 + U.anticommutator(U.anticommutator(_psi(U, k, l), _psi(U, 1, k)), _psi(U, 2, l))
    assert coset_equal(s1, gs["D0"].scale(Fraction((n - 1) * (n - 2), 8)))[0]
    s2 = U.zero()
    for k in range(3, N + 1):
        s2 = s2 + U.anticommutator(_psi(U, 1, k), U.anticommutator(_psi(U, 1, k), _psi(U, 1, 2)))
    want = U.anticommutator(gs["D0"], gs["D1"]).scale(Fraction(-1, 4)) - gs["D0"].scale(Fraction(n - 1, 8))
    assert coset_equal(s2, want)[0]


def test_second_type_quat_n2():
    gs = build_generators("quat", 2)
    U = gs.U
    e = U.anticommutator(gs["D1"], gs["D2"]).scale(Fraction(1, 2)) - gs["D3"] * gs["D3"] - gs["D9"] - gs["D1"] - gs["D2"]
    assert ideal_reduce(e).is_zero()


def test_complex_hyperbolic_examples():
    gs = build_generators("complex-hyp", 3)
    U, Q = gs.U, gs.Q
    assert Q.commutator(gs.reduced("D0"), gs.reduced("D1")) == gs.reduced("D3")
    want = ideal_reduce((gs["D1"] + gs["D2"]).scale(Fraction(1, 2)))
    assert Q.commutator(gs.reduced("D4"), gs.reduced("SQ")) == want


def test_symbol_rank_diagnostic():
    o = build_generators("f4")
    assert symbol_rank(o, [f"D{k}" for k in range(1, 10)]) == 9
    assert symbol_rank(o) == 10
    assert symbol_rank(build_generators("quat", 3)) == 10


def test_invariant_symbol_dimension_runs():
    info = invariant_symbol_dimension(build_generators("sphere", 4), 2)
    assert info["generated"] <= info["invariants"] <= info["monomials"]


def test_generator_dump_golden():
    from pathlib import Path
    text = build_generators("quat", 2).dump()
    path = Path(__file__).parent / "golden" / "generators_quat_proj_2.txt"
    if not path.exists():
        path.write_text(text)
    assert text == path.read_text()
