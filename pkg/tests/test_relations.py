from __future__ import annotations

import json
from fractions import Fraction

import pytest
from gmpy2 import mpq
from hypothesis import given, settings, strategies as st

from invdiff.generators import build_generators, oct_d9_printed
from invdiff.relations import (
    SCHEMA_VERSION,
    Evaluator,
    Poly,
    RelationSyntaxError,
    UnknownGenerator,
    bar_name,
    combination_check,
    combination_semantic_check,
    discover,
    free_expand,
    interpolate_n,
    load_dsl,
    parse_expr,
    parse_relation,
    report_json,
    scalar_poly,
    shipped_relations,
    split_terms,
    suite_relations,
    to_text,
    verify,
    verify_suite,
)
from oracles import F, frac_solve, lagrange


def _rel(space, rid):
    for r in shipped_relations():
        if r.space == space and r.id == rid:
            return r
    raise KeyError(rid)


# parsing -----------------------------------------------------------------------


def test_parse_examples():
    lhs, rhs = parse_relation("[D1,D4] = 2*D7")
    assert lhs == ("comm", ("gen", "D1"), ("gen", "D4"))
    assert rhs == ("mul", ("num", 2), ("gen", "D7"))
    assert parse_relation("[D0,D9] = 0")[1] == ("num", 0)
    _, rhs = parse_relation("[D1,D3] = -1/2*{D0,D1} + D8 + n*(n-1)*D0")
    terms = {to_text(nd): c for c, nd in split_terms(rhs)}
    assert terms["D0"] == Poly({2: mpq(1), 1: mpq(-1)})
    assert terms["{D0,D1}"] == Poly.const(mpq(-1, 2))
    assert terms["D8"] == Poly.const(1)


def test_syntax_errors_carry_column():
    with pytest.raises(RelationSyntaxError) as e:
        parse_expr("[D1,D4")
    assert e.value.column == 7
    with pytest.raises(RelationSyntaxError) as e:
        parse_expr("D1 + ? D2")
    assert e.value.column == 6
    with pytest.raises(RelationSyntaxError):
        parse_relation("D1*D2 = D3")
    with pytest.raises(UnknownGenerator):
        parse_expr("D11 + D1")
    for text in ("[D1,", "(", "{D1", "D1 +"):
        with pytest.raises(RelationSyntaxError):
            parse_expr(text)


def _trees():
    leaf = st.one_of(
        st.sampled_from(["D0", "D1", "D7", "D10", "SQ", "SQ2", "DBAR3", "SQBAR"]).map(lambda s: ("gen", s)),
        st.integers(0, 40).map(lambda k: ("num", mpq(k))),
        st.just(("n",)),
    )

    def extend(children):
        return st.one_of(
            st.tuples(st.sampled_from(["add", "sub", "mul", "comm", "anti"]), children, children),
            st.tuples(st.just("neg"), children),
            st.tuples(st.just("div"), children, st.integers(1, 9).map(lambda k: ("num", mpq(k)))),
        )

    return st.recursive(leaf, extend, max_leaves=12)


@settings(max_examples=200)
@given(_trees())
def test_text_roundtrip(node):
    assert parse_expr(to_text(node)) == node


def test_scalar_poly_and_free_expand():
    assert scalar_poly(parse_expr("(n-1)*(n-3)/2")) == Poly({2: mpq(1, 2), 1: mpq(-2), 0: mpq(3, 2)})
    fe = free_expand(parse_expr("{D1,D2} - [D1,D2]"))
    assert fe == {("D2", "D1"): Poly.const(2)}


def test_load_dsl_rules():
    rels = load_dsl("space quat(n >= 2):\n[D0,D1] = -D3\n[D0,D1] = -D3  # printed: [D0,D1] = D3 (typo)\n")
    assert [r.id for r in rels] == ["[D0,D1]", "[D0,D1]#2"]
    assert rels[1].printed == "[D0,D1] = D3"
    assert rels[0].holds_for(2) and not rels[0].holds_for(1)
    with pytest.raises(RelationSyntaxError):
        load_dsl("[D0,D1] = -D3\n")
    with pytest.raises(RelationSyntaxError):
        load_dsl("space quat n:\n")
    with pytest.raises(UnknownGenerator):
        load_dsl("space quat:\n[DBAR0,D1] = 0\n")


def test_shipped_table_sizes():
    count = {}
    for r in shipped_relations():
        count[r.space] = count.get(r.space, 0) + 1
    assert len([r for r in shipped_relations() if r.space == "quat_proj" and r.label is None]) == 55
    assert len([r for r in shipped_relations() if r.space == "octonion_proj"]) == 45
    assert len(suite_relations("quat", 2)) == 56 and len(suite_relations("quat", 3)) == 55
    hyp = suite_relations("complex-hyp", 3)
    assert any(r.id.startswith("twist:") and r.twist for r in hyp)


def test_bar_name():
    assert bar_name("D3") == "DBAR3" and bar_name("SQ") == "SQBAR" and bar_name("DBAR1") == "DBAR1"


# verification -----------------------------------------------------------------------


def test_verify_examples():
    assert verify("[D4,D10] = 0", "quat", 3).status == "verified"
    rep = verify("[D1,D3] = -{D0,D1} + (n-1)*(n-3)/2*D0", "sphere", 3)
    assert rep.status == "verified" and rep.residual == ""
    assert verify("[D1,D3] = D8 - 1/2*{D0,D1} + 10*D0", "f4", 2).status == "verified"
    bad = verify("[D1,D4] = 2*D7 + 1", "quat", 3)
    assert bad.status == "failed" and bad.residual.strip() == "-1 * 1"


def test_complex_printed_slot_is_wrong():
    assert verify("[D2,D4] = SQ", "complex", 3).status == "failed"
    assert verify("[D2,D4] = -SQ", "complex", 3).status == "verified"
    assert verify("[DBAR2,DBAR4] = -SQBAR", "complex-hyp", 3).status == "verified"


@pytest.mark.parametrize("space,ns,total", [("complex", [2], 22), ("sphere", [3], 12), ("sphere", [4, 5], 12),
                                            ("real-hyp", [3], 24), ("quat", [2], 56)])
def test_small_suites(space, ns, total):
    rep = verify_suite(space, ns)
    assert rep.summary() == {"total": total, "verified": total, "failed": 0}


def test_suite_json_deterministic_across_jobs():
    a = verify_suite("complex-hyp", [2, 3], jobs=1).to_dict()
    b = verify_suite("complex-hyp", [2, 3], jobs=3).to_dict()
    strip = lambda d: [{k: v for k, v in r.items() if k != "ms"} for r in d["results"]]  # noqa: E731
    assert strip(a) == strip(b)
    assert a["schema_version"] == SCHEMA_VERSION == 1
    assert set(a["results"][0]) == {"id", "space", "n", "status", "residual", "ms"}
    assert a["summary"] == {"total": len(a["results"]), "verified": len(a["results"]), "failed": 0}
    json.dumps(a)


def test_report_json_empty():
    assert report_json([]) == {"schema_version": 1, "results": [], "summary": {"total": 0, "verified": 0, "failed": 0}}


@pytest.mark.slow
def test_oct_printed_d9_prefactor_fails_exactly_twelve():
    gs = oct_d9_printed(build_generators("f4"))
    ev = Evaluator(gs)
    failed = sorted(r.id for r in suite_relations("f4", 2) if verify(r, "f4", 2, evaluator=ev).status == "failed")
    assert failed == sorted(["[D1,D7]", "[D1,D9]", "[D2,D7]", "[D2,D9]", "[D3,D8]", "[D3,D9]", "[D4,D9]",
                             "[D5,D9]", "[D6,D9]", "[D7,D8]", "[D7,D9]", "[D8,D9]"])


# interpolation ------------------------------------------------------------------------


def _oracle_fit(space, rid, samples):
    rel = _rel(space, rid)
    terms = split_terms(rel.rhs)
    points = {i: [] for i in range(len(terms))}
    for n in samples:
        ev = Evaluator(build_generators(space, n), twist=rel.twist)
        target = {w: F(c) for w, c in ev.value(rel.lhs).items()}
        cols = [{w: F(c) for w, c in ev.value(nd).items()} for _, nd in terms]
        keys = sorted(set(target).union(*cols))
        x = frac_solve([[c.get(k, 0) for k in keys] for c in cols], [target.get(k, 0) for k in keys])
        assert x is not None
        for i in range(len(terms)):
            points[i].append((Fraction(n), x[i]))
    return {to_text(nd): lagrange(points[i]) for i, (_, nd) in enumerate(terms)}


def _coeffs(p: Poly):
    deg = max(p.c, default=0)
    out = [F(p.c.get(k, 0)) for k in range(deg + 1)]
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


@pytest.mark.parametrize("space,rid,samples,term,want", [
    ("quat_proj", "[D1,D3]", [2, 3, 4], "D0", [0, -1, 1]),
    ("complex_proj", "[D1,D3]", [2, 3, 4], "D0", [Fraction(1, 4), Fraction(-1, 2), Fraction(1, 4)]),
    ("sphere", "[D1,D3]", [3, 4, 5], "D0", [Fraction(3, 2), -2, Fraction(1, 2)]),
])
def test_interpolation_against_oracle(space, rid, samples, term, want):
    res = interpolate_n(rid, space, samples)
    assert res.matches
    assert _coeffs(res.coefficient(term)) == want
    oracle = _oracle_fit(space, rid, samples)
    for text, fitted, _ in res.terms:
        assert _coeffs(fitted) == oracle[text]


def test_interpolation_errors():
    with pytest.raises(ValueError):
        interpolate_n("[D1,D3]", "quat", [2, 3])
    with pytest.raises(KeyError):
        interpolate_n("[D9,D9]", "quat", [2, 3, 4])


# discovery ------------------------------------------------------------------------


def test_discover_examples():
    res = discover("[D1,D4]", "quat", 3, 3)
    assert res.consistent and res.expression() == "2*D7"
    res = discover("[D5,D10]", "quat", 3, 4)
    assert res.consistent and res.expression() == "0"
    res = discover("D1*D1*D1", "quat", 3, 2)
    assert not res.consistent


def test_discover_underdetermined_reports_nullity():
    res = discover("[D1,D2]", "quat", 2, 4)
    assert res.consistent and res.nullity >= 1
    gs = build_generators("quat", 2)
    ev = Evaluator(gs)
    assert ev.value(parse_expr(res.expression())) == ev.value(parse_expr("[D1,D2]"))


def test_combination_syntactic():
    quat = [r for r in shipped_relations() if r.space == "quat_proj" and r.label is None]
    res = combination_check(quat)
    assert all(res.values()) and len(res) == 55
    fake = load_dsl("space quat:\n[D1,D2] = D9 - D10\n")
    assert combination_check(fake) == {"[D1,D2]": False}


@pytest.mark.parametrize("rid", ["[D1,D7]", "[D3,D8]"])
def test_combination_semantic(rid):
    res = combination_semantic_check(_rel("quat_proj", rid), "quat", 3)
    assert res["consistent"] and not res["uses_T"]
