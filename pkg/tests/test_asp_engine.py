import time

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from arglearn.asp import (BOTTOM, answer_sets, first_answer_set, ground, instantiate, least_model,
                          minimal_answer_sets, parse_program, reduct, solve)
from arglearn.asp.syntax import Atom, Literal, Rule
from arglearn.encodings import background, learned
from arglearn.errors import DeadlineExceeded, ResourceLimitError
from arglearn.framework import Framework, to_facts

from oracles import atom, in_projection, is_answer_set, naive_answer_sets_fast, naive_as_star, naive_extensions
from programs import random_program

MUTUAL = to_facts(Framework.aaf("ab", [("a", "b"), ("b", "a")]))


def _atoms(*texts):
    return frozenset(atom(t) for t in texts)


# --------------------------------------------------------------------------
# grounding and reducts

def test_ground_counts_instances():
    p = parse_program("defeated(X) :- in(Y), att(Y,X).")
    facts = [atom("arg(a)"), atom("arg(b)"), atom("att(a,b)")]
    g = ground(p, facts)
    instances = [r for r in g.rules if r.head and r.head.pred == "defeated"]
    assert len(instances) == 4
    assert len(g.rules) == 4 + 3


def test_ground_variable_free_program():
    p = parse_program("p :- not q.\nq :- r.")
    g = ground(p, [atom("r")])
    assert [str(r) for r in g.rules] == ["r.", "p :- not q.", "q :- r."]


def test_reduct_examples():
    g = ground(parse_program("in(a) :- not out(a)."))
    assert reduct(g, {atom("out(a)")}) == []
    assert reduct(g, set()) == [Rule(atom("in(a)"))]
    c = ground(parse_program(":- in(a), in(b)."))
    for interp in (set(), {atom("in(a)")}, {atom("in(a)"), atom("in(b)")}):
        (r,) = reduct(c, interp)
        assert r.head == BOTTOM and set(r.pos) == {atom("in(a)"), atom("in(b)")}


def test_least_model_iterates_to_fixpoint():
    rules = [Rule(atom("c"), (Literal(atom("b")),)), Rule(atom("b"), (Literal(atom("a")),)), Rule(atom("a"))]
    assert least_model(rules) == _atoms("a", "b", "c")


def test_instantiate_resource_cap():
    p = parse_program("p(X,Y) :- q(X), q(Y).")
    facts = [Atom("q", (str(i),)) for i in range(30)]
    with pytest.raises(ResourceLimitError):
        instantiate(p, facts, max_atoms=100)


# --------------------------------------------------------------------------
# answer sets

def test_stable_over_mutual_attack():
    models = answer_sets(background("aaf") | learned("stable"), MUTUAL)
    assert len(models) == 2
    wanted = [_atoms("in(a)", "out(b)", "defeated(b)"), _atoms("in(b)", "out(a)", "defeated(a)")]
    for w in wanted:
        (m,) = [m for m in models if w <= m]
        assert set(MUTUAL) <= m
        assert not {atom("in(a)"), atom("in(b)")} <= m
    assert models == naive_answer_sets_fast(background("aaf") | learned("stable"), MUTUAL)


def test_empty_program_has_one_empty_answer_set():
    assert answer_sets(parse_program("")) == [frozenset()]


def test_odd_loop_has_no_answer_set():
    assert answer_sets(parse_program("a :- not a.")) == []


def test_even_loop():
    assert answer_sets(parse_program("a :- not b.\nb :- not a.")) == [_atoms("a"), _atoms("b")]


def test_constraint_kills_models():
    assert answer_sets(parse_program("a :- not b.\nb :- not a.\n:- a.")) == [_atoms("b")]


def test_grounded_heuristic_over_mutual_attack():
    models = minimal_answer_sets(background("aaf") | learned("grounded"), MUTUAL)
    assert in_projection(models) == [frozenset()]
    assert in_projection(models) == naive_extensions(Framework.aaf("ab", [("a", "b"), ("b", "a")]), "grounded")


def test_preferred_heuristic_over_mutual_attack():
    models = minimal_answer_sets(background("aaf") | learned("preferred"), MUTUAL)
    assert in_projection(models) == [frozenset("a"), frozenset("b")]
    outs = sorted(frozenset(a.args[0] for a in m if a.pred == "out") for m in models)
    assert outs == [frozenset("a"), frozenset("b")]


def test_no_heuristics_means_all_answer_sets():
    p = background("aaf") | learned("stable")
    assert minimal_answer_sets(p, MUTUAL) == answer_sets(p, MUTUAL)


def test_first_answer_set_is_minimal():
    p = background("aaf") | learned("grounded")
    g = instantiate(p, to_facts(Framework.aaf("abc", [("a", "b")])))
    truth = first_answer_set(g)
    assert truth is not None
    m = g.decode(truth)
    assert m in minimal_answer_sets(p, to_facts(Framework.aaf("abc", [("a", "b")])))


def test_deadline_in_the_past():
    with pytest.raises(DeadlineExceeded):
        solve(parse_program("a :- not b.\nb :- not a."), deadline=time.monotonic() - 1)


def test_output_is_sorted_and_deterministic():
    p = parse_program("a :- not b.\nb :- not a.\nc :- not d.\nd :- not c.")
    first = answer_sets(p)
    assert first == sorted(first, key=sorted)
    assert first == answer_sets(p)


# --------------------------------------------------------------------------
# properties against the naive enumerator

@settings(max_examples=150, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_engine_matches_naive_enumeration(seed):
    p, facts = random_program(np.random.default_rng(seed))
    got = answer_sets(p, facts)
    assert got == naive_answer_sets_fast(p, facts)
    g = ground(p, facts)
    for m in got:
        assert BOTTOM not in m
        # recheck with the literal reduct definition
        assert least_model(reduct(g, m)) == m
        assert is_answer_set([(r.head, r.pos, r.neg) for r in g.rules], m)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_as_star_is_minimal_subset(seed):
    p, facts = random_program(np.random.default_rng(seed))
    star = minimal_answer_sets(p, facts)
    every = answer_sets(p, facts)
    assert set(star) <= set(every)
    assert sorted(star, key=sorted) == sorted(naive_as_star(p, facts), key=sorted)
    preds = {h.pred for h in p.heuristics}
    proj = lambda m: {a for a in m if a.pred in preds}
    for m in star:
        assert not any(proj(o) < proj(m) for o in every)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_first_answer_set_belongs_to_as_star(seed):
    p, facts = random_program(np.random.default_rng(seed))
    g = instantiate(p, facts)
    truth = first_answer_set(g)
    star = minimal_answer_sets(p, facts)
    if truth is None:
        assert star == []
    else:
        assert g.decode(truth) in star
