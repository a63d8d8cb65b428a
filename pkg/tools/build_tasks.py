"""Rebuild the example sets in src/arglearn/learning/tasks by counterexample search.

Starting from no examples, learn a hypothesis, look for the smallest framework
where its extensions differ from the oracle's, and add one labelled example
from that framework: a missing extension as a positive, a spurious one as a
negative. Stops when no framework up to --check-args arguments disagrees.

    python tools/build_tasks.py stable --limit 8
"""
import argparse
import itertools
import sys

import numpy as np

from arglearn.asp import solve
from arglearn.encodings import Semantics, background
from arglearn.framework import Framework, to_facts
from arglearn.learning.examples import format_examples, in_set_example, labelling_example
from arglearn.learning.search import LearningTask, learn
from arglearn.oracle import extensions

HEURISTIC = {Semantics.GROUNDED, Semantics.PREFERRED}


def frameworks_upto(n_max):
    for n in range(0, n_max + 1):
        names = [chr(ord("a") + i) for i in range(n)]
        pairs = list(itertools.product(names, names))
        # fewer attacks first, so counterexamples stay small
        for bits in sorted(range(1 << len(pairs)), key=lambda b: (bin(b).count("1"), b)):
            yield Framework.aaf(names, [p for i, p in enumerate(pairs) if (bits >> i) & 1])


def in_sets(program, f):
    return sorted({frozenset(a.args[0] for a in m if a.pred == "in") for m in solve(program, to_facts(f))}, key=sorted)


def counterexample(program, s, n_max, random_extra=0, seed=0):
    for f in frameworks_upto(n_max):
        got, want = in_sets(program, f), extensions(f, s)
        if got != want:
            return f, got, want
    rng = np.random.default_rng(seed)
    for _ in range(random_extra):
        n = int(rng.integers(1, n_max + 2))
        names = [chr(ord("a") + i) for i in range(n)]
        hit = rng.random((n, n)) < rng.choice([0.1, 0.25, 0.5])
        f = Framework.aaf(names, [(names[i], names[j]) for i, j in zip(*np.nonzero(hit))])
        got, want = in_sets(program, f), extensions(f, s)
        if got != want:
            return f, got, want
    return None


# the five contexts of the hand-written admissible positives
SEED_CONTEXTS = [
    ("abc", []),
    ("ab", []),
    ("ab", [("a", "b"), ("b", "a")]),
    ("abc", [("a", "b"), ("b", "c")]),
    ("abcd", [("a", "b"), ("b", "c")]),
]


def seed_examples(s):
    """A full labelling of the largest extension on each seed context."""
    out = []
    for names, attacks in SEED_CONTEXTS:
        f = Framework.aaf(list(names), attacks)
        exts = extensions(f, s)
        if exts:
            best = max(exts, key=lambda e: (len(e), [-ord(c) for c in sorted(e)]))
            out.append(labelling_example(f, best, True))
    return out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("semantics")
    ap.add_argument("--limit", type=int, default=30, help="maximum number of examples")
    ap.add_argument("--check-args", type=int, default=3)
    ap.add_argument("--random-extra", type=int, default=0, help="extra random frameworks with one more argument")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--seed-contexts", action="store_true", help="start from labellings of the seed contexts")
    args = ap.parse_args(argv)
    s = Semantics.parse(args.semantics)
    bg = background("aaf")
    pos, neg = (seed_examples(s) if args.seed_contexts else []), []
    while True:
        task = LearningTask(bg, pos, neg, learn_heuristics=s in HEURISTIC)
        h = learn(task)
        print(f"[{len(pos)}+/{len(neg)}-] cost {h.cost}: {' '.join(map(str, h.rules))} "
              f"{' '.join(map(str, h.heuristics))}", file=sys.stderr)
        found = counterexample(bg | h.program(), s, args.check_args, args.random_extra, args.seed)
        if found is None:
            break
        f, got, want = found
        missing = [e for e in want if e not in got]
        if missing:
            pos.append(labelling_example(f, missing[0], True))
        else:
            spurious = [e for e in got if e not in want]
            neg.append(in_set_example(f, spurious[0], False))
        if len(pos) + len(neg) > args.limit:
            sys.exit(f"more than {args.limit} examples needed")
    print(f"% {s.value} semantics, AAF background; {len(pos)} positive and {len(neg)} negative examples.")
    print(format_examples(pos + neg), end="")


if __name__ == "__main__":
    main()
