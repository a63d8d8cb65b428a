"""Grounding, reducts and least models.

:func:`ground`, :func:`reduct` and :func:`least_model` follow the textbook
definitions literally and work on :class:`Rule` objects; they are meant for
inspection and for independent re-checking. The solver instead uses
:func:`instantiate`, which only produces rule instances whose positive body
can be derived and compiles them to integer arrays.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from ..errors import ResourceLimitError
from .syntax import BOTTOM, Atom, Literal, Program, Rule, check_arities, is_variable, predicate_arities

DEFAULT_MAX_ATOMS = 200_000


@dataclass(frozen=True)
class GroundRules:
    rules: tuple[Rule, ...]
    heuristics: tuple[Atom, ...]

    def herbrand_base(self) -> frozenset[Atom]:
        return frozenset(a for r in self.rules for a in r.atoms())


def constants_of(program: Program, facts: Iterable[Atom]) -> list[str]:
    consts = set()
    for r in program.rules:
        for a in r.atoms():
            consts.update(t for t in a.args if not is_variable(t))
    for a in program.heuristics:
        consts.update(t for t in a.args if not is_variable(t))
    for a in facts:
        consts.update(a.args)
    return sorted(consts)


def ground(program: Program, facts: Iterable[Atom] = ()) -> GroundRules:
    """Every ground instance of every rule over the program's constants.

    Facts become bodiless rules; heuristic schemas are instantiated over all
    constants as well.
    """
    facts = list(facts)
    check_arities(facts, predicate_arities(program))
    consts = constants_of(program, facts)
    out = [Rule(a) for a in sorted(set(facts))]
    for rule in program.rules:
        names = sorted(rule.variables())
        for values in itertools.product(consts, repeat=len(names)):
            binding = dict(zip(names, values))
            head = None if rule.head is None else rule.head.substitute(binding)
            body = tuple(Literal(l.atom.substitute(binding), l.negated) for l in rule.body)
            out.append(Rule(head, body))
    heuristics = []
    for schema in program.heuristics:
        names = sorted(schema.variables())
        for values in itertools.product(consts, repeat=len(names)):
            heuristics.append(schema.substitute(dict(zip(names, values))))
    return GroundRules(tuple(out), tuple(sorted(set(heuristics))))


def reduct(gp: GroundRules, interpretation: Iterable[Atom]) -> list[Rule]:
    """Gelfond-Lifschitz reduct; constraint heads become :data:`BOTTOM`."""
    interp = set(interpretation)
    out = []
    for rule in gp.rules:
        if any(a in interp for a in rule.neg):
            continue
        head = BOTTOM if rule.head is None else rule.head
        out.append(Rule(head, tuple(Literal(a) for a in rule.pos)))
    return out


def least_model(definite: Iterable[Rule]) -> frozenset[Atom]:
    rules = list(definite)
    model: set[Atom] = set()
    changed = True
    while changed:
        changed = False
        for r in rules:
            if r.head not in model and all(a in model for a in r.pos):
                model.add(r.head)
                changed = True
    return frozenset(model)


# --------------------------------------------------------------------------
# simplifying instantiation for the solver

class _Index:
    """Ground atoms per predicate, with a first-argument lookup."""

    def __init__(self):
        self.by_pred: dict[str, list[tuple]] = {}
        self.by_first: dict[tuple[str, str], list[tuple]] = {}
        self.members: set[Atom] = set()

    def add(self, atom: Atom) -> bool:
        if atom in self.members:
            return False
        self.members.add(atom)
        self.by_pred.setdefault(atom.pred, []).append(atom.args)
        if atom.args:
            self.by_first.setdefault((atom.pred, atom.args[0]), []).append(atom.args)
        return True

    def __len__(self):
        return len(self.members)


def _unify(pattern: tuple, args: tuple, binding: dict) -> dict | None:
    new = None
    for p, v in zip(pattern, args):
        if is_variable(p):
            bound = binding.get(p) if new is None else new.get(p)
            if bound is None:
                if new is None:
                    new = dict(binding)
                new[p] = v
            elif bound != v:
                return None
        elif p != v:
            return None
    return binding if new is None else new


def _matches(atoms: list[Atom], index: _Index, binding: dict):
    if not atoms:
        yield binding
        return
    first, rest = atoms[0], atoms[1:]
    if first.args and not is_variable(first.args[0]):
        pool = index.by_first.get((first.pred, first.args[0]), ())
    elif first.args and first.args[0] in binding:
        pool = index.by_first.get((first.pred, binding[first.args[0]]), ())
    else:
        pool = index.by_pred.get(first.pred, ())
    for args in list(pool):
        b = _unify(first.args, args, binding)
        if b is not None:
            yield from _matches(rest, index, b)


def _order_body(rule: Rule, derived_preds: set[str]) -> list[Atom]:
    """Join order: extensional atoms first, then greedily the most-bound."""
    pending = list(rule.pos)
    pending.sort(key=lambda a: a.pred in derived_preds)
    ordered, bound = [], set()
    while pending:
        best = min(range(len(pending)),
                   key=lambda i: (pending[i].pred in derived_preds, len(pending[i].variables() - bound)))
        atom = pending.pop(best)
        ordered.append(atom)
        bound |= atom.variables()
    return ordered


@dataclass
class CompiledProgram:
    """Integer form of a simplified ground program.

    ``atoms[i]`` is the atom behind index ``i``; ``facts`` are atoms true in
    every answer set and carry no index. Rule ``r`` has head ``head[r]``
    (``-1`` for constraints), positive body ``pos_idx[pos_ptr[r]:pos_ptr[r+1]]``
    and negative body likewise. ``occ_*`` lists, per atom, the rules whose
    positive body mentions it.
    """

    atoms: list[Atom]
    facts: frozenset[Atom]
    head: np.ndarray
    pos_ptr: np.ndarray
    pos_idx: np.ndarray
    neg_ptr: np.ndarray
    neg_idx: np.ndarray
    occ_ptr: np.ndarray
    occ_rule: np.ndarray
    heuristic_atoms: np.ndarray
    inconsistent: bool = False

    def __post_init__(self):
        self.n_atoms = len(self.atoms)
        self.n_rules = len(self.head)
        self.pos_len = np.diff(self.pos_ptr)
        self.neg_len = np.diff(self.neg_ptr)
        self.pos_rule = np.repeat(np.arange(self.n_rules), self.pos_len)
        self.neg_rule = np.repeat(np.arange(self.n_rules), self.neg_len)
        self.index = {a: i for i, a in enumerate(self.atoms)}
        negated = np.zeros(self.n_atoms, dtype=bool)
        negated[self.neg_idx] = True
        self.negated_atoms = np.flatnonzero(negated)

    def decode(self, truth) -> frozenset[Atom]:
        return self.facts | frozenset(self.atoms[i] for i in np.flatnonzero(truth))


def _csr(rows: list[list[int]]) -> tuple[np.ndarray, np.ndarray]:
    ptr = np.zeros(len(rows) + 1, dtype=np.int64)
    ptr[1:] = np.cumsum([len(r) for r in rows])
    flat = np.fromiter(itertools.chain.from_iterable(rows), dtype=np.int32, count=int(ptr[-1]))
    return ptr, flat


def instantiate(program: Program, facts: Iterable[Atom] = (), max_atoms: int = DEFAULT_MAX_ATOMS) -> CompiledProgram:
    """Ground ``program`` over ``facts`` keeping only derivable instances.

    Instances whose positive body mentions an underivable atom are dropped,
    negative literals over underivable atoms are removed, and literals over
    facts are evaluated away. None of this changes the answer sets.
    """
    facts = set(facts)
    arities = check_arities(facts, predicate_arities(program))
    check_arities(program.heuristics, arities)
    for r in program.rules:
        if r.is_fact() and r.head.is_ground():
            facts.add(r.head)
    rules = [r for r in program.rules if not (r.is_fact() and r.head.is_ground())]
    derived_preds = {r.head.pred for r in rules if r.head is not None}

    possible = _Index()
    for a in facts:
        possible.add(a)
    bodies = [_order_body(r, derived_preds) for r in rules]

    changed = True
    while changed:
        changed = False
        for rule, body in zip(rules, bodies):
            if rule.head is None:
                continue
            for binding in _matches(body, possible, {}):
                if possible.add(rule.head.substitute(binding)):
                    changed = True
                    if len(possible) > max_atoms:
                        raise ResourceLimitError(f"Herbrand base exceeds {max_atoms} atoms")

    atoms = sorted(possible.members - facts)
    index = {a: i for i, a in enumerate(atoms)}
    head_l: list[int] = []
    pos_rows: list[list[int]] = []
    neg_rows: list[list[int]] = []
    seen = set()
    inconsistent = False
    for rule, body in zip(rules, bodies):
        for binding in _matches(body, possible, {}):
            if rule.head is not None:
                h = rule.head.substitute(binding)
                if h in facts:
                    continue
                hi = index[h]
            else:
                hi = -1
            neg = []
            blocked = False
            for a in rule.neg:
                g = a.substitute(binding)
                if g in facts:
                    blocked = True
                    break
                if g in index:
                    neg.append(index[g])
            if blocked:
                continue
            pos = sorted({index[g] for g in (a.substitute(binding) for a in rule.pos) if g not in facts})
            neg = sorted(set(neg))
            key = (hi, tuple(pos), tuple(neg))
            if key in seen:
                continue
            seen.add(key)
            if hi < 0 and not pos and not neg:
                inconsistent = True
            head_l.append(hi)
            pos_rows.append(pos)
            neg_rows.append(neg)

    occ: list[list[int]] = [[] for _ in atoms]
    for r, pos in enumerate(pos_rows):
        for a in pos:
            occ[a].append(r)
    pos_ptr, pos_idx = _csr(pos_rows)
    neg_ptr, neg_idx = _csr(neg_rows)
    occ_ptr, occ_rule = _csr(occ)

    heur = set()
    for schema in program.heuristics:
        for args in possible.by_pred.get(schema.pred, ()):
            if _unify(schema.args, args, {}) is not None:
                atom = Atom(schema.pred, args)
                if atom in index:
                    heur.add(index[atom])

    return CompiledProgram(
        atoms=atoms,
        facts=frozenset(facts),
        head=np.asarray(head_l, dtype=np.int32),
        pos_ptr=pos_ptr, pos_idx=pos_idx,
        neg_ptr=neg_ptr, neg_idx=neg_idx,
        occ_ptr=occ_ptr, occ_rule=occ_rule,
        heuristic_atoms=np.asarray(sorted(heur), dtype=np.int64),
        inconsistent=inconsistent,
    )
