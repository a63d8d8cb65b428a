"""Argumentation framework types, parsers and fact encoding.

Three abstract kinds share one container:

* AAF - arguments and attacks,
* BAF - adds a support relation disjoint from the attacks,
* VAF - adds a value per argument and a strict preference over values.

Flat assumption-based frameworks live in :class:`AbaFramework`.
"""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping

from .asp.syntax import Atom
from .errors import ParseError, ValidationError

ARG_NAME = re.compile(r"[a-z][A-Za-z0-9_]*\Z")
SYMBOL = re.compile(r"(?:[a-z][A-Za-z0-9_]*|\d+)\Z")


class Kind(str, enum.Enum):
    AAF = "aaf"
    BAF = "baf"
    VAF = "vaf"

    @classmethod
    def parse(cls, text: str) -> "Kind":
        try:
            return cls(text.lower())
        except ValueError:
            raise ValueError(f"unknown framework kind {text!r}") from None


def transitive_closure(pairs: Iterable[tuple[str, str]]) -> frozenset[tuple[str, str]]:
    succ: dict[str, set[str]] = {}
    for a, b in pairs:
        succ.setdefault(a, set()).add(b)
    closure = set()
    for start in succ:
        stack = list(succ[start])
        seen = set()
        while stack:
            node = stack.pop()
            if node in seen:
                continue
            seen.add(node)
            closure.add((start, node))
            stack.extend(succ.get(node, ()))
    return frozenset(closure)


@dataclass(frozen=True)
class Framework:
    """An abstract framework. Immutable; validated on construction."""

    kind: Kind
    args: frozenset[str]
    attacks: frozenset[tuple[str, str]] = frozenset()
    supports: frozenset[tuple[str, str]] = frozenset()
    values: Mapping[str, str] = field(default_factory=dict)
    valprefs: frozenset[tuple[str, str]] = frozenset()

    def __post_init__(self):
        set_ = object.__setattr__
        set_(self, "kind", Kind(self.kind))
        set_(self, "args", frozenset(self.args))
        set_(self, "attacks", frozenset(map(tuple, self.attacks)))
        set_(self, "supports", frozenset(map(tuple, self.supports)))
        set_(self, "values", MappingProxyType(dict(self.values)))
        set_(self, "valprefs", frozenset(map(tuple, self.valprefs)))
        self._validate()

    def _validate(self):
        for a in self.args:
            if not ARG_NAME.match(a):
                raise ValidationError(f"invalid argument name {a!r}")
        for rel_name in ("attacks", "supports"):
            for a, b in getattr(self, rel_name):
                for x in (a, b):
                    if x not in self.args:
                        raise ValidationError(f"{rel_name[:-1]} ({a},{b}) mentions undeclared argument {x}")
        if self.attacks & self.supports:
            a, b = min(self.attacks & self.supports)
            raise ValidationError(f"({a},{b}) is declared both as attack and as support")
        if self.supports and self.kind is not Kind.BAF:
            raise ValidationError("support relation is only allowed in a BAF")
        if self.kind is Kind.VAF:
            missing = sorted(self.args - self.values.keys())
            if missing:
                raise ValidationError(f"VAF arguments without a value: {', '.join(missing)}")
            for a, v in self.values.items():
                if a not in self.args:
                    raise ValidationError(f"value assigned to undeclared argument {a}")
                if not SYMBOL.match(v):
                    raise ValidationError(f"invalid value symbol {v!r}")
            for u, v in self.valprefs:
                if not (SYMBOL.match(u) and SYMBOL.match(v)):
                    raise ValidationError(f"invalid value symbol in valpref({u},{v})")
            cyclic = sorted(u for u, v in transitive_closure(self.valprefs) if u == v)
            if cyclic:
                raise ValidationError(f"value preference is cyclic through {cyclic[0]}")
        elif self.values or self.valprefs:
            raise ValidationError("values and value preferences are only allowed in a VAF")

    @classmethod
    def aaf(cls, args, attacks=()) -> "Framework":
        return cls(Kind.AAF, frozenset(args), frozenset(attacks))

    def sorted_args(self) -> list[str]:
        return sorted(self.args)

    def __len__(self):
        return len(self.args)


def to_facts(f: Framework) -> list[Atom]:
    """Encode ``f`` as ground facts in lexicographic order."""
    facts = [Atom("arg", (a,)) for a in f.args]
    facts += [Atom("att", p) for p in f.attacks]
    facts += [Atom("support", p) for p in f.supports]
    facts += [Atom("val", (a, v)) for a, v in f.values.items()]
    facts += [Atom("valpref", p) for p in f.valprefs]
    return sorted(facts)


def render_apx(f: Framework) -> str:
    return "".join(f"{atom}.\n" for atom in to_facts(f))


_FACT = re.compile(r"\s*([a-z][A-Za-z0-9_]*)\s*\(([^()]*)\)\s*\.")
_ARITY = {"arg": 1, "att": 2, "support": 2, "val": 2, "valpref": 2}


def _strip_comment(line: str, marker: str) -> str:
    cut = line.find(marker)
    return line if cut < 0 else line[:cut]


def _line_col(text: str, offset: int) -> tuple[int, int]:
    line = text.count("\n", 0, offset) + 1
    col = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, col


def parse_apx(text: str) -> Framework:
    """Parse ``arg/att/support/val/valpref`` facts; ``%`` starts a comment."""
    body = "\n".join(_strip_comment(line, "%") for line in text.split("\n"))
    facts: list[tuple[str, tuple[str, ...], int]] = []
    pos = 0
    while True:
        while pos < len(body) and body[pos].isspace():
            pos += 1
        if pos >= len(body):
            break
        m = _FACT.match(body, pos)
        if not m:
            raise ParseError("expected a fact such as arg(a).", *_line_col(body, pos))
        pred, raw = m.group(1), m.group(2)
        terms = tuple(t.strip() for t in raw.split(","))
        if pred not in _ARITY:
            raise ParseError(f"unknown predicate {pred}", *_line_col(body, pos))
        if len(terms) != _ARITY[pred]:
            raise ParseError(f"{pred} expects {_ARITY[pred]} argument(s)", *_line_col(body, pos))
        for t in terms:
            if not SYMBOL.match(t):
                raise ParseError(f"invalid constant {t!r}", *_line_col(body, pos))
        facts.append((pred, terms, m.start(1)))
        pos = m.end()

    args = {t[0] for p, t, _ in facts if p == "arg"}
    rels: dict[str, set] = {p: set() for p in _ARITY}
    values: dict[str, str] = {}
    for pred, terms, offset in facts:
        if pred in ("att", "support", "val"):
            needs = terms if pred != "val" else terms[:1]
            for t in needs:
                if t not in args:
                    raise ParseError(f"argument {t} is not declared", *_line_col(body, offset))
        if pred == "val":
            if terms[0] in values and values[terms[0]] != terms[1]:
                raise ParseError(f"argument {terms[0]} has two values", *_line_col(body, offset))
            values[terms[0]] = terms[1]
        elif pred != "arg":
            rels[pred].add(terms)

    if values or rels["valpref"]:
        kind = Kind.VAF
    elif rels["support"]:
        kind = Kind.BAF
    else:
        kind = Kind.AAF
    try:
        return Framework(kind, frozenset(args), frozenset(rels["att"]), frozenset(rels["support"]),
                         values, frozenset(rels["valpref"]))
    except ValidationError as exc:
        raise ParseError(str(exc)) from None


def parse_iccma(text: str) -> Framework:
    """Parse the ICCMA ``p af <n>`` format. Argument ``i`` becomes ``a<i>``."""
    n = None
    attacks = set()
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = _strip_comment(raw, "#").strip()
        if not line:
            continue
        fields = line.split()
        if n is None:
            if len(fields) != 3 or fields[:2] != ["p", "af"] or not fields[2].isdigit():
                raise ParseError("expected header 'p af <n>'", lineno, 1)
            n = int(fields[2])
            continue
        if len(fields) != 2 or not all(f.isdigit() for f in fields):
            raise ParseError("expected an attack line '<i> <j>'", lineno, 1)
        i, j = map(int, fields)
        for k, idx in enumerate((i, j)):
            if not 1 <= idx <= n:
                raise ParseError(f"index {idx} out of range 1..{n}", lineno, raw.find(fields[k]) + 1)
        attacks.add((f"a{i}", f"a{j}"))
    if n is None:
        raise ParseError("missing header 'p af <n>'", 1, 1)
    return Framework.aaf((f"a{i}" for i in range(1, n + 1)), attacks)


def render_iccma(f: Framework) -> str:
    order = f.sorted_args()
    index = {a: i for i, a in enumerate(order, start=1)}
    lines = [f"p af {len(order)}"]
    lines += [f"{index[a]} {index[b]}" for a, b in sorted(f.attacks, key=lambda p: (index[p[0]], index[p[1]]))]
    return "\n".join(lines) + "\n"


def load_framework(path, fmt: str | None = None) -> Framework:
    with open(path) as fh:
        text = fh.read()
    if fmt is None:
        fmt = "iccma" if text.lstrip().startswith("p af") else "apx"
    if fmt == "apx":
        return parse_apx(text)
    if fmt == "iccma":
        return parse_iccma(text)
    raise ValueError(f"unknown format {fmt!r}")


@dataclass(frozen=True)
class AbaFramework:
    """A flat ABA framework; ``rules`` are ``(head, body)`` pairs."""

    language: frozenset[str]
    rules: tuple[tuple[str, tuple[str, ...]], ...]
    assumptions: frozenset[str]
    contrary: Mapping[str, str]

    def __post_init__(self):
        object.__setattr__(self, "contrary", MappingProxyType(dict(self.contrary)))
        if not self.assumptions:
            raise ValidationError("an ABA framework needs at least one assumption")
        if not self.assumptions <= self.language:
            raise ValidationError("assumptions must belong to the language")
        for head, body in self.rules:
            if head in self.assumptions:
                raise ValidationError(f"rule concludes assumption {head}: framework is not flat")
            for atom in (head, *body):
                if atom not in self.language:
                    raise ValidationError(f"rule atom {atom} is not in the language")
        missing = sorted(self.assumptions - self.contrary.keys())
        if missing:
            raise ValidationError(f"assumption {missing[0]} has no contrary")
        for a, c in self.contrary.items():
            if a not in self.assumptions:
                raise ValidationError(f"contrary given for non-assumption {a}")
            if c not in self.language:
                raise ValidationError(f"contrary {c} is not in the language")


def parse_aba(text: str) -> AbaFramework:
    """Parse ``assumption a`` / ``contrary a c`` / ``rule h b1 ...`` lines."""
    assumptions: list[str] = []
    contrary: dict[str, str] = {}
    rules: list[tuple[str, tuple[str, ...]]] = []
    language: set[str] = set()
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = _strip_comment(raw, "%").strip()
        if not line:
            continue
        keyword, *rest = line.split()
        for tok in rest:
            if not SYMBOL.match(tok):
                raise ParseError(f"invalid atom {tok!r}", lineno, raw.find(tok) + 1)
        if keyword == "assumption" and len(rest) == 1:
            assumptions.append(rest[0])
        elif keyword == "contrary" and len(rest) == 2:
            if rest[0] in contrary:
                raise ParseError(f"duplicate contrary for {rest[0]}", lineno, 1)
            contrary[rest[0]] = rest[1]
        elif keyword == "rule" and len(rest) >= 1:
            rules.append((rest[0], tuple(rest[1:])))
        else:
            raise ParseError(f"malformed line {line!r}", lineno, 1)
        language.update(rest)
    try:
        return AbaFramework(frozenset(language), tuple(rules), frozenset(assumptions), contrary)
    except ValidationError as exc:
        raise ParseError(str(exc)) from None


def render_aba(aba: AbaFramework) -> str:
    lines = [f"assumption {a}" for a in sorted(aba.assumptions)]
    lines += [f"contrary {a} {aba.contrary[a]}" for a in sorted(aba.assumptions)]
    lines += [" ".join(("rule", head, *body)) for head, body in aba.rules]
    return "\n".join(lines) + "\n"
