"""Flat ABA to abstract framework translation.

Arguments are (claim, minimal assumption set) pairs found by forward
chaining: every atom carries the family of inclusion-minimal assumption sets
that derive it. Attacks follow the contrary map.
"""
from __future__ import annotations

import csv
import io
from itertools import product
from typing import NamedTuple

from .framework import AbaFramework, Framework


class StructuredArgument(NamedTuple):
    index: int
    root: str
    assumptions: frozenset

    @property
    def name(self) -> str:
        return f"a{self.index}"


def _minimise(sets) -> set[frozenset]:
    sets = set(sets)
    return {s for s in sets if not any(o < s for o in sets)}


def support_families(aba: AbaFramework) -> dict[str, set[frozenset]]:
    """For every derivable atom, the inclusion-minimal assumption sets deriving it."""
    family: dict[str, set[frozenset]] = {a: {frozenset([a])} for a in aba.assumptions}
    changed = True
    while changed:
        changed = False
        for head, body in aba.rules:
            if any(b not in family for b in body):
                continue
            combos = {frozenset().union(*parts) for parts in product(*(family[b] for b in body))}
            merged = _minimise(family.get(head, set()) | combos)
            if merged != family.get(head):
                family[head] = merged
                changed = True
    return family


def construct_arguments(aba: AbaFramework) -> list[StructuredArgument]:
    """One argument per (claim, minimal assumption set), indexed from 1 in
    (claim, sorted assumptions) order."""
    pairs = sorted(((root, tuple(sorted(s))) for root, fam in support_families(aba).items() for s in fam))
    return [StructuredArgument(i, root, frozenset(asm)) for i, (root, asm) in enumerate(pairs, start=1)]


def generate_attacks(arguments: list[StructuredArgument], contrary) -> Framework:
    """X attacks Y when the claim of X is the contrary of an assumption of Y."""
    attacks = set()
    for x in arguments:
        for y in arguments:
            if any(contrary.get(a) == x.root for a in y.assumptions):
                attacks.add((x.name, y.name))
    return Framework.aaf([a.name for a in arguments], attacks)


def translate(aba: AbaFramework) -> tuple[Framework, list[StructuredArgument]]:
    arguments = construct_arguments(aba)
    return generate_attacks(arguments, aba.contrary), arguments


def argument_table(arguments: list[StructuredArgument]) -> str:
    """CSV with columns ``index,root,assumptions`` (assumptions space-separated)."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["index", "root", "assumptions"])
    for a in arguments:
        writer.writerow([a.index, a.root, " ".join(sorted(a.assumptions))])
    return buf.getvalue()
