"""Context-dependent partial interpretations and their text format.

One example per statement::

    #pos({in(a), out(b)}, {out(a), in(b)}, {arg(a). arg(b). att(a,b).}).
    #neg({in(a), in(b)}, {}, {arg(a). arg(b). att(a,b).}).
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from ..asp.syntax import Atom, parse_atoms
from ..errors import InsufficientExamplesError, ParseError, ValidationError
from ..framework import Framework, to_facts
from ..oracle import extension_masks

LABEL_PREDS = ("in", "out")


@dataclass(frozen=True)
class CdpiExample:
    positive: bool
    inclusions: tuple[Atom, ...]
    exclusions: tuple[Atom, ...]
    context: tuple[Atom, ...]

    def __post_init__(self):
        for name in ("inclusions", "exclusions", "context"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        overlap = set(self.inclusions) & set(self.exclusions)
        if overlap:
            raise ValidationError(f"atom {min(overlap)} is both included and excluded")
        args = {a.args[0] for a in self.context if a.pred == "arg" and len(a.args) == 1}
        for atom in self.inclusions + self.exclusions:
            if atom.pred not in LABEL_PREDS or len(atom.args) != 1:
                raise ValidationError(f"example atoms must be in/1 or out/1, got {atom}")
            if atom.args[0] not in args:
                raise ValidationError(f"{atom} mentions {atom.args[0]}, which is not an argument of the context")

    def extended_by(self, interpretation) -> bool:
        return all(a in interpretation for a in self.inclusions) and \
            not any(a in interpretation for a in self.exclusions)

    def __str__(self):
        tag = "#pos" if self.positive else "#neg"
        inc = ", ".join(map(str, self.inclusions))
        exc = ", ".join(map(str, self.exclusions))
        ctx = " ".join(f"{a}." for a in self.context)
        return f"{tag}({{{inc}}}, {{{exc}}}, {{{ctx}}})."


_HEAD = re.compile(r"#(pos|neg)\s*\(")


def _braced(text: str, pos: int) -> tuple[str, int]:
    """Content of the ``{...}`` group starting at ``pos`` and the offset after it."""
    while pos < len(text) and text[pos].isspace():
        pos += 1
    if pos >= len(text) or text[pos] != "{":
        raise ParseError("expected '{'", *_where(text, pos))
    end = text.find("}", pos)
    if end < 0:
        raise ParseError("unterminated '{'", *_where(text, pos))
    return text[pos + 1:end], end + 1


def _where(text, offset):
    line = text.count("\n", 0, offset) + 1
    return line, offset - (text.rfind("\n", 0, offset) + 1) + 1


def _expect(text: str, pos: int, char: str) -> int:
    while pos < len(text) and text[pos].isspace():
        pos += 1
    if not text.startswith(char, pos):
        raise ParseError(f"expected {char!r}", *_where(text, pos))
    return pos + 1


def parse_examples(text: str) -> list[CdpiExample]:
    text = re.sub(r"%[^\n]*", lambda m: " " * len(m.group()), text)
    out = []
    pos = 0
    while True:
        rest = text[pos:]
        if not rest.strip():
            return out
        m = _HEAD.match(text, pos + len(rest) - len(rest.lstrip()))
        if not m:
            raise ParseError("expected '#pos(' or '#neg('", *_where(text, pos + len(rest) - len(rest.lstrip())))
        groups = []
        pos = m.end()
        for i in range(3):
            body, pos = _braced(text, pos)
            groups.append(body)
            if i < 2:
                pos = _expect(text, pos, ",")
        pos = _expect(text, pos, ")")
        pos = _expect(text, pos, ".")
        try:
            inc, exc, ctx = (parse_atoms(g) for g in groups)
            out.append(CdpiExample(m.group(1) == "pos", inc, exc, ctx))
        except (ParseError, ValidationError) as exc_:
            raise ParseError(str(exc_), *_where(text, m.start())) from None


def format_examples(examples: Iterable[CdpiExample]) -> str:
    return "".join(f"{e}\n" for e in examples)


def labelling_example(f: Framework, members, positive: bool = True) -> CdpiExample:
    """Label every argument in or out; exclusions hold the opposite labels."""
    members = set(members)
    inc, exc = [], []
    for a in f.sorted_args():
        inside = a in members
        inc.append(Atom("in" if inside else "out", (a,)))
        exc.append(Atom("out" if inside else "in", (a,)))
    return CdpiExample(positive, inc, exc, to_facts(f))


def in_set_example(f: Framework, members, positive: bool = False) -> CdpiExample:
    """Pin down exactly which arguments are in, saying nothing about out."""
    members = set(members)
    inc = [Atom("in", (a,)) for a in f.sorted_args() if a in members]
    exc = [Atom("in", (a,)) for a in f.sorted_args() if a not in members]
    return CdpiExample(positive, inc, exc, to_facts(f))


def generate_examples(s, frameworks: list[Framework], n_pos: int, n_neg: int, seed=0,
                      chosen: Optional[list[tuple[int, frozenset]]] = None):
    """Sample labelled examples with the oracle.

    Positives are extensions labelling every argument in or out. Negatives
    are argument sets that are not extensions, stated as exactly those
    arguments being in. ``chosen`` lists (framework
    index, extension) pairs to use first, in order.
    """
    rng = np.random.default_rng(seed)
    pos_pool, neg_pool = [], []
    for i, f in enumerate(frameworks):
        names, masks = extension_masks(f, s, cap=max(20, len(f.args)))
        good = set(masks)
        for m in range(1 << len(names)):
            member = frozenset(a for j, a in enumerate(names) if (m >> j) & 1)
            (pos_pool if m in good else neg_pool).append((i, member))
    positives, negatives = [], []
    picked = set()
    for i, ext in chosen or ():
        if (i, frozenset(ext)) not in set(pos_pool):
            raise ValidationError(f"{sorted(ext)} is not an extension of framework {i}")
        picked.add((i, frozenset(ext)))
        positives.append(labelling_example(frameworks[i], ext, True))
    need = n_pos - len(positives)
    pool = [p for p in pos_pool if p not in picked]
    if need > len(pool):
        raise InsufficientExamplesError(f"only {len(pool)} further extensions available, {need} requested")
    if n_neg > len(neg_pool):
        raise InsufficientExamplesError(f"only {len(neg_pool)} non-extensions available, {n_neg} requested")
    for j in (rng.choice(len(pool), size=need, replace=False) if need > 0 else ()):
        i, ext = pool[j]
        positives.append(labelling_example(frameworks[i], ext, True))
    for j in (rng.choice(len(neg_pool), size=n_neg, replace=False) if n_neg > 0 else ()):
        i, ext = neg_pool[j]
        negatives.append(in_set_example(frameworks[i], ext, False))
    return positives, negatives
