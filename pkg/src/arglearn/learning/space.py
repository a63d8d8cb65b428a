"""Mode declarations and the rule space they generate."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from ..asp.syntax import Atom, Literal, Rule
from ..errors import UnsafeRuleError

VAR_NAMES = "XYZWVU"


@dataclass(frozen=True)
class ModeDecl:
    pred: str
    arity: int = 1
    positive_only: bool = False

    def __str__(self):
        args = ", ".join(["var(arg)"] * self.arity)
        suffix = ", (positive)" if self.positive_only else ""
        return f"{self.pred}({args}){suffix}"


@dataclass(frozen=True)
class ModeBias:
    head_modes: tuple[ModeDecl, ...]
    body_modes: tuple[ModeDecl, ...]

    def __str__(self):
        lines = [f"#modeh({m})." for m in self.head_modes]
        lines += [f"#modeb({m})." for m in self.body_modes]
        return "\n".join(lines) + "\n"


DEFAULT_BIAS = ModeBias(
    head_modes=(ModeDecl("in"), ModeDecl("out")),
    body_modes=(
        ModeDecl("in"),
        ModeDecl("out"),
        ModeDecl("arg", 1, positive_only=True),
        ModeDecl("att", 2),
        ModeDecl("defeated"),
        ModeDecl("not_defended"),
        ModeDecl("supported"),
    ),
)

_RANK = {m.pred: i for i, m in enumerate(DEFAULT_BIAS.body_modes)}


def _rename(rule_parts, perm):
    head, body = rule_parts
    ren = lambda atom: Atom(atom.pred, tuple(perm[v] for v in atom.args))
    return ren(head), tuple(sorted((Literal(ren(l.atom), l.negated) for l in body), key=_lit_key))


def _lit_key(lit: Literal):
    # positive literals first, then in mode-declaration order
    return lit.negated, _RANK.get(lit.atom.pred, len(_RANK)), lit.atom.pred, lit.atom.args


def _first_occurrence(head, body):
    order = []
    for atom in (head, *(l.atom for l in body)):
        for v in atom.args:
            if v not in order:
                order.append(v)
    return order


def canonical(head: Atom, body) -> Rule:
    """Representative of the rule modulo variable renaming and body order."""
    names = sorted({v for a in (head, *(l.atom for l in body)) for v in a.args})
    best = None
    for perm in itertools.permutations(VAR_NAMES[:len(names)]):
        cand = _rename((head, body), dict(zip(names, perm)))
        key = (cand[0].args, [_lit_key(l) for l in cand[1]])
        if best is None or key < best[0]:
            best = (key, cand)
    h, b = best[1]
    order = _first_occurrence(h, b)
    h, b = _rename((h, b), {v: VAR_NAMES[i] for i, v in enumerate(order)})
    return Rule(h, b)


def rule_key(rule: Rule):
    """Canonical ordering: cheaper first, then by text."""
    return rule.cost, str(rule)


def enumerate_space(bias: ModeBias = DEFAULT_BIAS, max_body: int = 3, max_vars: int = 2) -> list[Rule]:
    """All safe rules allowed by ``bias`` up to the given bounds, one per
    renaming class, in canonical order."""
    if max_body < 1 or max_vars < 1:
        raise ValueError("max_body and max_vars must be at least 1")
    names = VAR_NAMES[:max_vars]
    literals = []
    for mode in bias.body_modes:
        for args in itertools.product(names, repeat=mode.arity):
            atom = Atom(mode.pred, args)
            literals.append(Literal(atom, False))
            if not mode.positive_only:
                literals.append(Literal(atom, True))
    heads = [Atom(m.pred, args) for m in bias.head_modes for args in itertools.product(names, repeat=m.arity)]
    seen = {}
    for head in heads:
        for size in range(1, max_body + 1):
            for body in itertools.combinations(literals, size):
                atoms = {l.atom for l in body}
                if len(atoms) < size:
                    continue  # same atom both positive and negated
                used = set(head.args).union(*(l.atom.args for l in body))
                if len(used) > max_vars:
                    continue
                try:
                    rule = canonical(head, body)
                except UnsafeRuleError:
                    continue
                seen.setdefault(str(rule), rule)
    return sorted(seen.values(), key=rule_key)
