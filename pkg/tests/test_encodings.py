import numpy as np
import pytest

from arglearn.asp import answer_sets, parse_program, solve
from arglearn.asp.syntax import Atom
from arglearn.bench import gen_random_af, gen_random_baf, gen_random_vaf
from arglearn.encodings import (LEARNED, Semantics, aspartix_admissible, background, encoding_text,
                                fixture_text, full_semantics, learned)
from arglearn.errors import ValidationError
from arglearn.framework import Framework, Kind, to_facts

from oracles import in_projection, naive_answer_sets, naive_extensions


@pytest.mark.parametrize("name, count", [("B", 10), ("B_AAF", 2), ("B_BAF", 7), ("B_VAF", 6)])
def test_background_rule_counts(name, count):
    assert len(parse_program(fixture_text(name)).rules) == count


@pytest.mark.parametrize("s, rules, heuristics", [
    ("stable", 2, 0), ("complete", 2, 0), ("admissible", 3, 0), ("grounded", 2, 1), ("preferred", 2, 1),
])
def test_learned_program_sizes(s, rules, heuristics):
    p = learned(s)
    assert (len(p.rules), len(p.heuristics)) == (rules, heuristics)


def test_heuristic_targets():
    assert learned("grounded").heuristics == (Atom("in", ("X",)),)
    assert learned("preferred").heuristics == (Atom("out", ("X",)),)


def test_full_semantics_composition():
    p = full_semantics(Kind.AAF, "stable")
    assert len(p.rules) == 2 + 2
    assert p.rules[:2] == background("aaf").rules
    g = full_semantics(Kind.AAF, "grounded")
    assert g.heuristics == learned("grounded").heuristics
    v = full_semantics(Kind.VAF, "stable")
    assert len(v.rules) == 6 + 2


def test_show_text_is_background_then_semantics():
    text = encoding_text("aaf", "stable")
    assert text == fixture_text("B_AAF") + fixture_text("stable")
    assert parse_program(text) == full_semantics("aaf", "stable")


def test_conflict_free_has_no_learned_program():
    with pytest.raises(ValidationError):
        learned(Semantics.CONFLICT_FREE)


def test_semantics_aliases():
    assert Semantics.parse("PRF") is Semantics.PREFERRED
    assert Semantics.parse("conflict-free") is Semantics.CONFLICT_FREE
    with pytest.raises(ValidationError):
        Semantics.parse("ideal")


def test_aspartix_shape():
    p = aspartix_admissible()
    assert len(p.rules) == 6
    assert sum(r.is_constraint() for r in p.rules) == 2


def test_aspartix_single_argument():
    models = answer_sets(aspartix_admissible(), [Atom("arg", ("a",))])
    labels = sorted({a for a in m if a.pred in ("in", "out")} for m in models)
    assert labels == [{Atom("in", ("a",))}, {Atom("out", ("a",))}]
    assert models == naive_answer_sets(aspartix_admissible(), [Atom("arg", ("a",))])


def test_aspartix_empty_framework():
    assert answer_sets(aspartix_admissible(), []) == [frozenset()]


def _corpus(n, seed=0):
    rng = np.random.default_rng(seed)
    for i in range(n):
        size = int(rng.integers(1, 6))
        p = float(rng.choice([0.1, 0.25, 0.5]))
        yield gen_random_af(size, p, seed=1000 + i)


def test_admissible_equals_aspartix_on_small_corpus():
    # the acceptance suite runs the full 500-instance version
    for f in _corpus(60):
        facts = to_facts(f)
        assert answer_sets(full_semantics("aaf", "admissible"), facts) == answer_sets(aspartix_admissible(), facts)


@pytest.mark.parametrize("gen", [gen_random_af, gen_random_baf, gen_random_vaf])
@pytest.mark.parametrize("s", LEARNED)
def test_in_projection_matches_textbook_semantics(gen, s):
    for seed in range(15):
        f = gen(1 + seed % 5, (0.1, 0.25, 0.5)[seed % 3], seed=seed)
        got = in_projection(solve(full_semantics(f.kind, s), to_facts(f)))
        assert got == naive_extensions(f, s), (f, s)
