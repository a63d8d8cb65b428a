"""Answer-set search over a compiled ground program.

Only atoms that occur under ``not`` are branched on: once they are fixed,
the reduct is determined and its least model is the single candidate.
Bound propagation prunes the tree before that point.
"""
from __future__ import annotations

import time
from typing import Iterable, Iterator, Optional

import numpy as np

from .. import kernels
from ..errors import DeadlineExceeded
from .grounding import DEFAULT_MAX_ATOMS, CompiledProgram, instantiate
from .syntax import Atom, Program

_CHECK_EVERY = 64


def _check(deadline):
    if deadline is not None and time.monotonic() > deadline:
        raise DeadlineExceeded("solver deadline exceeded")


def _verify(g: CompiledProgram, val: np.ndarray):
    """Least model of the reduct fixed by ``val``; None if ``val`` is not stable."""
    neg_true = np.zeros(g.n_rules, dtype=bool)
    if len(g.neg_idx):
        hits = np.bincount(g.neg_rule, weights=val[g.neg_idx] == 1, minlength=g.n_rules)
        neg_true = hits > 0
    truth, bottom = kernels.least_model(g, ~neg_true)
    if bottom:
        return None
    truth = np.asarray(truth, dtype=bool)
    branch = g.negated_atoms
    if np.any(truth[branch] != (val[branch] == 1)):
        return None
    return truth


def iter_answer_sets(g: CompiledProgram, deadline: Optional[float] = None,
                     forced_false: Iterable[int] = ()) -> Iterator[np.ndarray]:
    """Yield boolean truth vectors of the answer sets of ``g``.

    Branches try false before true, so the search order is deterministic.
    Atoms in ``forced_false`` are fixed to false up front.
    """
    _check(deadline)
    if g.inconsistent:
        return
    val = np.full(g.n_atoms, -1, dtype=np.int8)
    for a in forced_false:
        val[a] = 0
    stack = [val]
    steps = 0
    branch = g.negated_atoms
    while stack:
        steps += 1
        if steps % _CHECK_EVERY == 0:
            _check(deadline)
        val = stack.pop()
        if kernels.propagate(val, g):
            continue
        open_ = branch[val[branch] < 0]
        if len(open_) == 0:
            truth = _verify(g, val)
            if truth is not None:
                yield truth
            continue
        a = open_[0]
        hi = val.copy()
        hi[a] = 1
        val[a] = 0
        stack.append(hi)
        stack.append(val)


def first_answer_set(g: CompiledProgram, deadline: Optional[float] = None, minimal: bool = True,
                     forced_false: Iterable[int] = ()) -> Optional[np.ndarray]:
    """One answer set (truth vector) or None.

    With ``minimal``, the answer set is then shrunk on the heuristic atoms:
    while some heuristic atom of the current projection can be forced false
    (keeping the others outside the projection false as well), the search
    moves to that smaller answer set. The result belongs to AS*.
    """
    forced = set(forced_false)
    truth = next(iter_answer_sets(g, deadline, forced), None)
    if truth is None or not minimal or len(g.heuristic_atoms) == 0:
        return truth
    heur = g.heuristic_atoms
    while True:
        inside = heur[truth[heur]].tolist()
        outside = set(heur[~truth[heur]].tolist())
        for h in inside:
            smaller = next(iter_answer_sets(g, deadline, forced | outside | {h}), None)
            if smaller is not None:
                truth = smaller
                break
        else:
            return truth


def _sorted_models(models: Iterable[frozenset]) -> list[frozenset]:
    return sorted(set(models), key=lambda m: sorted(m))


def answer_sets(program: Program, facts: Iterable[Atom] = (), deadline: Optional[float] = None,
                max_atoms: int = DEFAULT_MAX_ATOMS) -> list[frozenset[Atom]]:
    """All answer sets, each a frozenset of atoms, ordered by sorted atom list."""
    g = instantiate(program, facts, max_atoms)
    return _sorted_models(g.decode(t) for t in iter_answer_sets(g, deadline))


def minimal_projection_filter(models, key):
    """Keep the models whose ``key`` set is inclusion-minimal among all keys."""
    keys = [key(m) for m in models]
    distinct = set(keys)
    minimal = {k for k in distinct if not any(o < k for o in distinct)}
    return [m for m, k in zip(models, keys) if k in minimal]


def minimal_answer_sets(program: Program, facts: Iterable[Atom] = (), deadline: Optional[float] = None,
                        max_atoms: int = DEFAULT_MAX_ATOMS) -> list[frozenset[Atom]]:
    """Answer sets whose projection onto the heuristic atoms is subset-minimal."""
    g = instantiate(program, facts, max_atoms)
    found = [(g.decode(t), frozenset(np.flatnonzero(t[g.heuristic_atoms]).tolist()))
             for t in iter_answer_sets(g, deadline)]
    if not program.heuristics:
        return _sorted_models(m for m, _ in found)
    keep = minimal_projection_filter(found, key=lambda pair: pair[1])
    return _sorted_models(m for m, _ in keep)


def solve(program: Program, facts: Iterable[Atom] = (), minimal: bool = True,
          deadline: Optional[float] = None, max_atoms: int = DEFAULT_MAX_ATOMS) -> list[frozenset[Atom]]:
    if minimal and program.heuristics:
        return minimal_answer_sets(program, facts, deadline, max_atoms)
    return answer_sets(program, facts, deadline, max_atoms)
