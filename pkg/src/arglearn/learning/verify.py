"""Check a learned program against the extension oracle on many frameworks."""
from __future__ import annotations

import itertools
from typing import Iterable, Iterator, Optional

import numpy as np

from ..asp.solver import solve
from ..asp.syntax import Program
from ..framework import Framework, to_facts
from ..oracle import extensions


def _letters(n):
    return [chr(ord("a") + i) for i in range(n)]


def all_aafs(n_max: int) -> Iterator[Framework]:
    """Every AAF over arguments ``a, b, ...`` with at most ``n_max`` of them,
    self-attacks included (2^(n*n) attack sets for n arguments)."""
    for n in range(n_max + 1):
        names = _letters(n)
        pairs = list(itertools.product(names, names))
        for bits in range(1 << len(pairs)):
            yield Framework.aaf(names, [p for i, p in enumerate(pairs) if (bits >> i) & 1])


def random_aafs(count: int, n_max: int, seed=0, n_min: int = 1) -> Iterator[Framework]:
    """``count`` seeded AAFs with ``n_min..n_max`` arguments; the attack
    probability is drawn from {0.1, 0.25, 0.5} per framework."""
    rng = np.random.default_rng(seed)
    for _ in range(count):
        n = int(rng.integers(n_min, n_max + 1))
        p = float(rng.choice([0.1, 0.25, 0.5]))
        names = _letters(n)
        hit = rng.random((n, n)) < p
        yield Framework.aaf(names, [(names[i], names[j]) for i, j in zip(*np.nonzero(hit))])


def in_sets(program: Program, f: Framework) -> list[frozenset]:
    """In-projections of the minimal answer sets of ``program`` over ``f``."""
    models = solve(program, to_facts(f))
    return sorted({frozenset(a.args[0] for a in m if a.pred == "in") for m in models}, key=sorted)


def mismatches(program: Program, s, frameworks: Iterable[Framework],
               stop: Optional[int] = None) -> tuple[int, int, list[Framework]]:
    """(checked, wrong, first few wrong frameworks); stops after ``stop`` misses."""
    checked, bad = 0, []
    wrong = 0
    for f in frameworks:
        checked += 1
        if in_sets(program, f) != extensions(f, s):
            wrong += 1
            if len(bad) < 5:
                bad.append(f)
            if stop is not None and wrong >= stop:
                break
    return checked, wrong, bad
