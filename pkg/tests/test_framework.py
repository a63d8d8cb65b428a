import pytest
from hypothesis import given, settings, strategies as st

from arglearn.asp.syntax import Atom
from arglearn.errors import ParseError, ValidationError
from arglearn.framework import (AbaFramework, Framework, Kind, load_framework, parse_aba, parse_apx,
                                parse_iccma, render_aba, render_apx, render_iccma, to_facts)

from oracles import atom


def test_parse_apx_mutual_attack():
    f = parse_apx("arg(a). arg(b). att(a,b). att(b,a).")
    assert f.kind is Kind.AAF
    assert f.args == {"a", "b"}
    assert f.attacks == {("a", "b"), ("b", "a")}


def test_parse_apx_empty():
    f = parse_apx("")
    assert f.args == frozenset() and f.attacks == frozenset()


def test_parse_apx_undeclared_argument():
    with pytest.raises(ParseError, match="b"):
        parse_apx("arg(a). att(a,b).")


def test_parse_apx_comments_and_whitespace():
    f = parse_apx("% a framework\narg( a ) .\n  arg(b).att(a,b). % trailing\n")
    assert f.attacks == {("a", "b")}


def test_parse_apx_reports_position():
    with pytest.raises(ParseError) as info:
        parse_apx("arg(a).\narg(b\n")
    assert info.value.line == 2


def test_parse_apx_infers_kind():
    assert parse_apx("arg(a). arg(b). support(a,b).").kind is Kind.BAF
    assert parse_apx("arg(a). val(a,v).").kind is Kind.VAF


def test_parse_iccma():
    f = parse_iccma("p af 2\n1 2\n2 1")
    assert f.args == {"a1", "a2"}
    assert f.attacks == {("a1", "a2"), ("a2", "a1")}
    g = parse_iccma("p af 3\n")
    assert len(g.args) == 3 and not g.attacks


def test_parse_iccma_out_of_range():
    with pytest.raises(ParseError, match="3"):
        parse_iccma("p af 2\n3 1")


def test_parse_iccma_comment_and_missing_header():
    assert parse_iccma("# hi\np af 1\n1 1 # self\n").attacks == {("a1", "a1")}
    with pytest.raises(ParseError):
        parse_iccma("1 2\n")


def test_to_facts_examples():
    f = Framework.aaf("ab", [("a", "b"), ("b", "a")])
    assert set(to_facts(f)) == {atom("arg(a)"), atom("arg(b)"), atom("att(a,b)"), atom("att(b,a)")}
    assert to_facts(Framework.aaf([])) == []
    baf = Framework(Kind.BAF, frozenset("abc"), frozenset({("b", "c")}), frozenset({("a", "b")}))
    assert set(to_facts(baf)) == {atom("arg(a)"), atom("arg(b)"), atom("arg(c)"), atom("att(b,c)"),
                                  atom("support(a,b)")}


def test_facts_are_sorted():
    f = Framework.aaf("ba", [("b", "a")])
    facts = to_facts(f)
    assert facts == sorted(facts)


def test_cyclic_valpref_rejected():
    with pytest.raises(ValidationError):
        Framework(Kind.VAF, frozenset("ab"), frozenset(), values={"a": "u", "b": "v"},
                  valprefs=frozenset({("u", "v"), ("v", "u")}))


def test_values_outside_vaf_rejected():
    with pytest.raises(ValidationError):
        Framework(Kind.AAF, frozenset("a"), frozenset(), values={"a": "u"})


def test_kind_parse():
    assert Kind.parse("BAF") is Kind.BAF
    with pytest.raises(ValueError):
        Kind.parse("xyz")


def test_load_framework_guesses_format(tmp_path):
    p = tmp_path / "x.af"
    p.write_text("p af 2\n1 2\n")
    assert load_framework(p).attacks == {("a1", "a2")}
    q = tmp_path / "x.apx"
    q.write_text("arg(a).")
    assert load_framework(q).args == {"a"}


# --------------------------------------------------------------------------
# ABA

EXAMPLE_ABA = "assumption p\nassumption q\ncontrary p t\ncontrary q r\nrule r s t\nrule s p\nrule t q"


def test_parse_aba_example():
    aba = parse_aba(EXAMPLE_ABA)
    assert aba.language == set("pqrst")
    assert set(aba.rules) == {("r", ("s", "t")), ("s", ("p",)), ("t", ("q",))}
    assert aba.assumptions == {"p", "q"}
    assert dict(aba.contrary) == {"p": "t", "q": "r"}


def test_parse_aba_self_contrary():
    aba = parse_aba("assumption p\ncontrary p p")
    assert dict(aba.contrary) == {"p": "p"}


def test_parse_aba_rejects_non_flat():
    with pytest.raises(ParseError, match="flat|assumption"):
        parse_aba("assumption p\ncontrary p t\nrule p q")


def test_aba_round_trip():
    aba = parse_aba(EXAMPLE_ABA)
    assert parse_aba(render_aba(aba)) == aba


# --------------------------------------------------------------------------
# properties

names = st.sampled_from(["a", "b", "c", "d", "e"])


@st.composite
def frameworks(draw):
    kind = draw(st.sampled_from(list(Kind)))
    args = draw(st.frozensets(names, min_size=0, max_size=5))
    pool = sorted(args) or ["a"]
    pairs = st.tuples(st.sampled_from(pool), st.sampled_from(pool))
    attacks = draw(st.frozensets(pairs, max_size=8)) if args else frozenset()
    supports, values, prefs = frozenset(), {}, frozenset()
    if kind is Kind.BAF and args:
        supports = draw(st.frozensets(pairs, max_size=5)) - attacks
    if kind is Kind.VAF:
        vals = ["u", "v", "w"]
        values = {a: draw(st.sampled_from(vals)) for a in sorted(args)}
        # acyclic: only point from lower to higher index
        prefs = draw(st.frozensets(st.sampled_from([("u", "v"), ("u", "w"), ("v", "w")]), max_size=3))
    return Framework(kind, args, attacks, supports, values, prefs)


@given(frameworks())
def test_apx_round_trip(f):
    g = parse_apx(render_apx(f))
    if f.kind is Kind.VAF and not f.values and not f.valprefs:
        assert g.kind is Kind.AAF  # nothing left to mark it as a VAF
    elif f.kind is Kind.BAF and not f.supports:
        assert g.kind is Kind.AAF
    else:
        assert g == f


@given(st.integers(0, 6), st.lists(st.tuples(st.integers(1, 6), st.integers(1, 6)), max_size=12))
def test_iccma_fact_counts(n, raw):
    lines = [(i, j) for i, j in raw if i <= n and j <= n]
    text = f"p af {n}\n" + "".join(f"{i} {j}\n" for i, j in lines)
    facts = to_facts(parse_iccma(text))
    assert sum(a.pred == "arg" for a in facts) == n
    assert sum(a.pred == "att" for a in facts) == len(set(lines))


@settings(max_examples=50)
@given(frameworks())
def test_iccma_round_trip(f):
    if f.kind is not Kind.AAF:
        return
    g = parse_iccma(render_iccma(f))
    assert len(g.args) == len(f.args) and len(g.attacks) == len(f.attacks)
