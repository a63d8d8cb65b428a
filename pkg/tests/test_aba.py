import itertools

from hypothesis import given, settings, strategies as st

from arglearn.aba import argument_table, construct_arguments, generate_attacks, support_families, translate
from arglearn.framework import AbaFramework, parse_aba
from arglearn.oracle import extensions

from oracles import derivable, naive_arguments, naive_extensions

EXAMPLE_ABA = "assumption p\nassumption q\ncontrary p t\ncontrary q r\nrule r s t\nrule s p\nrule t q"


def pairs(arguments):
    return {(a.root, a.assumptions) for a in arguments}


def test_example_arguments():
    args = construct_arguments(parse_aba(EXAMPLE_ABA))
    assert pairs(args) == {("p", frozenset("p")), ("q", frozenset("q")), ("s", frozenset("p")),
                           ("t", frozenset("q")), ("r", frozenset("pq"))}
    assert [a.index for a in args] == [1, 2, 3, 4, 5]


def test_example_attacks_by_claim():
    f, args = translate(parse_aba(EXAMPLE_ABA))
    by_name = {a.name: (a.root, "".join(sorted(a.assumptions))) for a in args}
    named = {(by_name[x], by_name[y]) for x, y in f.attacks}
    t, r = ("t", "q"), ("r", "pq")
    p, q, s = ("p", "p"), ("q", "q"), ("s", "p")
    assert named == {(t, p), (t, s), (t, r), (r, q), (r, t), (r, r)}


def test_single_assumption_no_rules():
    aba = AbaFramework(frozenset("px"), (), frozenset("p"), {"p": "x"})
    (arg,) = construct_arguments(aba)
    assert (arg.root, arg.assumptions) == ("p", frozenset("p"))
    f, _ = translate(aba)
    assert len(f.args) == 1 and not f.attacks


def test_only_minimal_assumption_sets():
    aba = AbaFramework(frozenset("pqs"), (("s", ("p",)), ("s", ("p", "q"))), frozenset("pq"),
                       {"p": "q", "q": "p"})
    s_args = [a for a in construct_arguments(aba) if a.root == "s"]
    assert [a.assumptions for a in s_args] == [frozenset("p")]


def test_no_matching_contraries():
    aba = AbaFramework(frozenset("pqxy"), (), frozenset("pq"), {"p": "x", "q": "y"})
    f, args = translate(aba)
    assert len(args) == 2 and not f.attacks


def test_self_attack():
    aba = AbaFramework(frozenset("pt"), (("t", ("p",)),), frozenset("p"), {"p": "t"})
    f, args = translate(aba)
    (t_arg,) = [a for a in args if a.root == "t"]
    assert (t_arg.name, t_arg.name) in f.attacks


def test_two_assumptions_contrary_of_each_other():
    # the contrary map is total; q's contrary is underivable
    aba = AbaFramework(frozenset("pqx"), (), frozenset("pq"), {"p": "q", "q": "x"})
    f, args = translate(aba)
    name = {a.root: a.name for a in args}
    assert f.attacks == {(name["q"], name["p"])}


def test_argument_table():
    _, args = translate(parse_aba(EXAMPLE_ABA))
    lines = argument_table(args).splitlines()
    assert lines[0] == "index,root,assumptions"
    assert lines[3] == "3,r,p q"


def test_example_stable_membership():
    f, args = translate(parse_aba(EXAMPLE_ABA))
    assert extensions(f, "stable") == naive_extensions(f, "stable")


def test_cyclic_rules_terminate():
    aba = AbaFramework(frozenset("pab"), (("a", ("b",)), ("b", ("a",)), ("a", ("p",))), frozenset("p"),
                       {"p": "b"})
    fam = support_families(aba)
    assert fam["a"] == {frozenset("p")} and fam["b"] == {frozenset("p")}


@st.composite
def flat_abas(draw):
    asms = draw(st.lists(st.sampled_from("pqr"), min_size=1, max_size=3, unique=True))
    others = "stuvw"
    atoms = list(asms) + list(others)
    rules = draw(st.lists(st.tuples(st.sampled_from(others), st.lists(st.sampled_from(atoms), max_size=3)),
                          max_size=6))
    contrary = {a: draw(st.sampled_from(atoms)) for a in asms}
    language = frozenset(atoms)
    return AbaFramework(language, tuple((h, tuple(b)) for h, b in rules), frozenset(asms), contrary)


@settings(max_examples=200, deadline=None)
@given(flat_abas())
def test_arguments_match_subset_enumeration(aba):
    args = construct_arguments(aba)
    assert pairs(args) == naive_arguments(aba)
    assert len(args) == len(pairs(args))
    for a in args:
        assert a.root in derivable(aba, a.assumptions)
    for a, b in itertools.permutations(args, 2):
        assert not (a.root == b.root and b.assumptions < a.assumptions)


@settings(max_examples=200, deadline=None)
@given(flat_abas())
def test_attacks_follow_contraries(aba):
    f, args = translate(aba)
    for x, y in itertools.product(args, repeat=2):
        expected = any(aba.contrary[a] == x.root for a in y.assumptions)
        assert ((x.name, y.name) in f.attacks) == expected
