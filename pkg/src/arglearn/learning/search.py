"""Optimal hypothesis search.

For each example the head atoms a hypothesis may derive (``in``/``out`` over
the context constants) are few, so every subset J of them is materialised as
a candidate interpretation: J together with what the background derives from
it. A hypothesis H can only make a candidate an answer set if the heads H
derives there are exactly J. That test only needs, per rule, the bitmask of
heads it derives in each candidate, and adding rules can only grow the
derived set. The search walks rule subsets in canonical order with iterative
deepening on cost. It prunes on the positive examples and confirms each leaf
with an exact reduct check. The winner is re-verified with the solver.
"""
from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from typing import Iterator, Optional

import numpy as np

from .. import kernels
from ..asp.grounding import _Index, _matches, instantiate
from ..asp.solver import iter_answer_sets, minimal_answer_sets
from ..asp.syntax import Atom, Literal, Program, Rule, heuristic_text
from ..errors import DeadlineExceeded, ResourceLimitError, Unsatisfiable, ValidationError
from .examples import CdpiExample
from .space import DEFAULT_BIAS, ModeBias, enumerate_space

DEFAULT_MAX_COST = 12


@dataclass(frozen=True)
class LearningTask:
    background: Program
    positives: tuple = ()
    negatives: tuple = ()
    bias: ModeBias = DEFAULT_BIAS
    learn_heuristics: bool = False
    max_body: int = 3
    max_vars: int = 2
    max_cost: int = DEFAULT_MAX_COST

    def __post_init__(self):
        object.__setattr__(self, "positives", tuple(self.positives))
        object.__setattr__(self, "negatives", tuple(self.negatives))


@dataclass(frozen=True)
class Hypothesis:
    rules: tuple[Rule, ...] = ()
    heuristics: tuple[Atom, ...] = ()

    @property
    def cost(self) -> int:
        return sum(r.cost for r in self.rules) + len(self.heuristics)

    def program(self) -> Program:
        return Program(self.rules, self.heuristics)

    def __str__(self):
        lines = [str(r) for r in self.rules] + [heuristic_text(h) for h in self.heuristics]
        return "".join(f"{line}\n" for line in lines)


def accepts(program: Program, example: CdpiExample, deadline: Optional[float] = None) -> bool:
    """Some minimal answer set of ``program`` with the context extends the example."""
    return any(example.extended_by(m) for m in minimal_answer_sets(program, example.context, deadline))


def solves(program: Program, positives, negatives) -> bool:
    return all(accepts(program, e) for e in positives) and not any(accepts(program, e) for e in negatives)


# --------------------------------------------------------------------------
# per-example candidate interpretations

def _ground_rule(rule: Rule, index: _Index):
    """Instances of ``rule`` whose positive body lies within ``index``."""
    for binding in _matches(list(rule.pos), index, {}):
        head = None if rule.head is None else rule.head.substitute(binding)
        yield head, tuple(a.substitute(binding) for a in rule.pos), tuple(a.substitute(binding) for a in rule.neg)


def _reduct_model(instances, facts, interp) -> set:
    model = set(facts)
    waiting: dict[Atom, list] = {}
    counts = []
    agenda = []
    for head, pos, neg in instances:
        if any(a in interp for a in neg):
            continue
        missing = [a for a in set(pos) if a not in model]
        slot = len(counts)
        counts.append([len(missing), head])
        if not missing:
            agenda.append(head)
        for a in missing:
            waiting.setdefault(a, []).append(slot)
    while agenda:
        h = agenda.pop()
        if h is None:
            model.add(None)
            continue
        if h in model:
            continue
        model.add(h)
        for slot in waiting.get(h, ()):
            counts[slot][0] -= 1
            if counts[slot][0] == 0:
                agenda.append(counts[slot][1])
    return model


@dataclass
class _Example:
    example: CdpiExample
    consts: list
    heads: list
    models: list = field(default_factory=list)   # candidate interpretations
    io: list = field(default_factory=list)       # head bitmask per candidate
    background: list = field(default_factory=list)
    index: Optional[_Index] = None
    ground_cache: dict = field(default_factory=dict)

    def instances(self, item, rule):
        if item not in self.ground_cache:
            self.ground_cache[item] = list(_ground_rule(rule, self.index))
        return self.ground_cache[item]


def _candidates(task, example: CdpiExample, head_preds, deadline):
    """All candidate interpretations of one example, one per head subset."""
    # any head the space can ever derive is derived by a one-literal rule
    generous = Program(tuple(
        Rule(Atom(h, ("X",)), (Literal(Atom(m.pred, args)),))
        for h in head_preds for m in task.bias.body_modes
        for args in itertools.product("XY", repeat=m.arity) if "X" in args
    ))
    g = instantiate(task.background | generous, example.context)
    possible = set(g.atoms) | set(g.facts)
    heads = sorted(a for a in possible if a.pred in head_preds)
    consts = sorted({t for a in possible for t in a.args})
    if len(heads) > 16:
        raise ResourceLimitError(f"example with {len(heads)} possible head atoms is too large")
    choice = []
    for h in heads:
        shadow = Atom("\x00" + h.pred, h.args)
        choice.append(Rule(h, (Literal(shadow, True),)))
        choice.append(Rule(shadow, (Literal(h, True),)))
    prog = task.background | Program(tuple(choice))
    gc = instantiate(prog, example.context)
    models = {}
    for truth in iter_answer_sets(gc, deadline):
        m = frozenset(a for a in gc.decode(truth) if not a.pred.startswith("\x00"))
        j = frozenset(a for a in m if a.pred in head_preds)
        if j in models:
            raise ValidationError("background knowledge does not fix a unique model per labelling")
        models[j] = m
    if len(models) != 1 << len(heads):
        raise ValidationError("background knowledge is inconsistent for some labelling")
    index = _Index()
    for a in possible:
        index.add(a)
    data = _Example(example, consts, heads, index=index)
    for r in task.background.rules:
        data.background.extend(_ground_rule(r, index))
    for j in sorted(models, key=lambda s: sorted(s)):
        data.models.append(models[j])
    return data


# --------------------------------------------------------------------------
# vectorised rule evaluation over all candidates

class _Tensors:
    """Truth of every body predicate per candidate, over padded constants."""

    def __init__(self, models, consts, preds, width):
        k = len(models)
        self.unary = {p: np.zeros((k, width), dtype=bool) for p, n in preds.items() if n == 1}
        self.binary = {p: np.zeros((k, width, width), dtype=bool) for p, n in preds.items() if n == 2}
        for row, (m, cs) in enumerate(zip(models, consts)):
            pos = {c: i for i, c in enumerate(cs)}
            for a in m:
                if a.pred in self.unary and len(a.args) == 1:
                    self.unary[a.pred][row, pos[a.args[0]]] = True
                elif a.pred in self.binary and len(a.args) == 2:
                    self.binary[a.pred][row, pos[a.args[0]], pos[a.args[1]]] = True
        self.k = k
        self.width = width

    def literal(self, atom: Atom, two_vars: bool):
        if len(atom.args) == 1:
            t = self.unary[atom.pred]
            if not two_vars:
                return t
            return t[:, :, None] if atom.args[0] == "X" else t[:, None, :]
        t = self.binary[atom.pred]
        a, b = atom.args
        if a == b:
            d = np.diagonal(t, axis1=1, axis2=2)
            if not two_vars:
                return d
            return d[:, :, None] if a == "X" else d[:, None, :]
        return t if (a, b) == ("X", "Y") else t.transpose(0, 2, 1)

    def derived(self, rule: Rule) -> np.ndarray:
        """Boolean [k, width]: head constant derived by ``rule`` per candidate."""
        two = "Y" in rule.variables()
        shape = (self.k, self.width, self.width) if two else (self.k, self.width)
        acc = np.ones(shape, dtype=bool)
        for lit in rule.body:
            t = self.literal(lit.atom, two)
            acc &= ~t if lit.negated else t
        return acc.any(axis=2) if two else acc


# --------------------------------------------------------------------------
# the search

def _item_text(item) -> str:
    return str(item) if isinstance(item, Rule) else heuristic_text(item)


def _item_cost(item) -> int:
    return item.cost if isinstance(item, Rule) else 1


class _Search:
    def __init__(self, task: LearningTask, deadline=None):
        self.task = task
        self.deadline = deadline
        self.head_preds = tuple(m.pred for m in task.bias.head_modes)
        for m in task.bias.head_modes:
            if m.arity != 1:
                raise ValidationError("head modes must be unary")
        examples = list(task.positives) + list(task.negatives)
        self.n_pos = len(task.positives)
        self.data = [_candidates(task, e, self.head_preds, deadline) for e in examples]
        width = max([len(d.consts) for d in self.data] + [1])
        if width * len(self.head_preds) > 63:
            raise ResourceLimitError("too many constants in one example context")
        self.width = width
        hbit = {p: i * width for i, p in enumerate(self.head_preds)}

        # candidate order: positive-extending candidates first, grouped per example
        order, seg_ptr = [], [0]
        for ei in range(self.n_pos):
            d = self.data[ei]
            order += [(ei, k) for k, m in enumerate(d.models) if d.example.extended_by(m)]
            if len(order) == seg_ptr[-1]:
                raise Unsatisfiable(f"positive example {d.example} has no consistent labelling")
            seg_ptr.append(len(order))
        first = set(order)
        order += [(ei, k) for ei, d in enumerate(self.data) for k in range(len(d.models)) if (ei, k) not in first]
        self.order = order
        self.seg_ptr = np.asarray(seg_ptr, dtype=np.int64)
        self.kp = seg_ptr[-1]
        self.slot = {ek: i for i, ek in enumerate(order)}

        models = [self.data[ei].models[k] for ei, k in order]
        consts = [self.data[ei].consts for ei, k in order]
        io = np.zeros(len(order), dtype=np.int64)
        for i, ((ei, k), m) in enumerate(zip(order, models)):
            pos = {c: j for j, c in enumerate(consts[i])}
            for a in m:
                if a.pred in hbit:
                    io[i] |= np.int64(1) << (hbit[a.pred] + pos[a.args[0]])
        self.io = io

        preds = {m.pred: m.arity for m in task.bias.body_modes}
        tensors = _Tensors(models, consts, preds, width)

        # equal-signature rules are interchangeable; keep the cheapest
        items, masks = [], []
        if task.learn_heuristics:
            for p in sorted(self.head_preds):
                items.append(Atom(p, ("X",)))
                masks.append(np.zeros(len(order), dtype=np.int64))
        seen = set()
        shifts = np.arange(width, dtype=np.int64)
        for rule in enumerate_space(task.bias, task.max_body, task.max_vars):
            if rule.head in rule.pos:
                continue  # can never be the only support of its head
            hit = tensors.derived(rule)
            f = (hit.astype(np.int64) << (shifts + hbit[rule.head.pred])).sum(axis=1)
            if not f.any():
                continue
            key = f.tobytes()
            if key in seen:
                continue
            seen.add(key)
            items.append(rule)
            masks.append(f)
        # search order is plain text order, which makes the first solution
        # found at a given cost the lexicographically least rule set
        rank = sorted(range(len(items)), key=lambda i: _item_text(items[i]))
        items = [items[i] for i in rank]
        masks = [masks[i] for i in rank]
        costs = [_item_cost(it) for it in items]
        self.items = items
        self.costs = np.asarray(costs, dtype=np.int64)
        self.F = np.stack(masks) if masks else np.zeros((0, len(order)), dtype=np.int64)
        self.Fp = np.ascontiguousarray(self.F[:, :self.kp])
        self.io_p = np.ascontiguousarray(self.io[:self.kp])

        n = len(items)
        # suffix ORs per cost value, restricted to the pruning candidates
        self.cost_values = sorted(set(costs))
        self.suffix = {}
        for c in self.cost_values:
            suf = np.zeros((n + 1, self.kp), dtype=np.int64)
            for i in range(n - 1, -1, -1):
                suf[i] = suf[i + 1] | (self.Fp[i] if costs[i] == c else 0)
            self.suffix[c] = suf
        # reachable exact cost sums from each suffix, as bit sets
        limit = (1 << (task.max_cost + 1)) - 1
        self.achievable = [0] * (n + 1)
        self.achievable[n] = 1
        for i in range(n - 1, -1, -1):
            nxt = self.achievable[i + 1]
            self.achievable[i] = (nxt | (nxt << costs[i])) & limit
        self.steps = 0

    def _reach(self, i, budget):
        out = np.zeros(self.kp, dtype=np.int64)
        for c in self.cost_values:
            if c <= budget:
                out |= self.suffix[c][i]
        return out

    def _check_deadline(self):
        self.steps += 1
        if self.deadline is not None and self.steps % 256 == 0 and time.monotonic() > self.deadline:
            raise DeadlineExceeded("learning deadline exceeded")

    # ---- leaf evaluation

    def _answer_sets(self, ei, chosen_rules, derived):
        d = self.data[ei]
        out = []
        for k, m in enumerate(d.models):
            slot = self.slot[(ei, k)]
            if derived[slot] != self.io[slot]:
                continue
            instances = list(d.background)
            for item in chosen_rules:
                instances += d.instances(item, self.items[item])
            lm = _reduct_model(instances, [a for a in d.example.context], m)
            if None not in lm and lm == m:
                out.append(m)
        return out

    def _leaf(self, chosen) -> bool:
        rules = [i for i in chosen if isinstance(self.items[i], Rule)]
        heur = [self.items[i] for i in chosen if not isinstance(self.items[i], Rule)]
        derived = np.zeros(len(self.order), dtype=np.int64)
        for i in rules:
            derived |= self.F[i]
        hpreds = {h.pred for h in heur}
        for ei, d in enumerate(self.data):
            sets = self._answer_sets(ei, rules, derived)
            if hpreds and sets:
                proj = [frozenset(a for a in m if a.pred in hpreds) for m in sets]
                sets = [m for m, p in zip(sets, proj) if not any(q < p for q in proj)]
            hit = any(d.example.extended_by(m) for m in sets)
            if hit != (ei < self.n_pos):
                return False
        return True

    def _dfs(self, start, budget, derived, chosen) -> Iterator[tuple]:
        self._check_deadline()
        if budget == 0:
            if self._leaf(chosen):
                yield tuple(chosen)
            return
        for i in range(start, len(self.items)):
            c = int(self.costs[i])
            if c > budget:
                continue
            rest = budget - c
            if not (self.achievable[i + 1] >> rest) & 1:
                continue
            d2 = derived | self.Fp[i]
            if self.kp and not kernels.segments_ok(d2, self.io_p, self._reach(i + 1, rest), self.seg_ptr):
                continue
            chosen.append(i)
            yield from self._dfs(i + 1, rest, d2, chosen)
            chosen.pop()

    def solutions(self, cost) -> Iterator[tuple]:
        # a leaf only passes the pruning test when every positive is covered
        yield from self._dfs(0, cost, np.zeros(self.kp, dtype=np.int64), [])

    def hypothesis(self, chosen) -> Hypothesis:
        rules = tuple(self.items[i] for i in chosen if isinstance(self.items[i], Rule))
        heur = tuple(self.items[i] for i in chosen if not isinstance(self.items[i], Rule))
        return Hypothesis(rules, heur)


def learn(task: LearningTask, deadline: Optional[float] = None) -> Hypothesis:
    """Cheapest hypothesis solving ``task``; ties go to the canonically least
    rule set. Raises :class:`Unsatisfiable` when none exists within
    ``task.max_cost``."""
    search = _Search(task, deadline)
    for cost in range(task.max_cost + 1):
        for chosen in search.solutions(cost):
            h = search.hypothesis(chosen)
            if solves(task.background | h.program(), task.positives, task.negatives):
                return h
    raise Unsatisfiable(f"no hypothesis of cost <= {task.max_cost} covers the examples")
