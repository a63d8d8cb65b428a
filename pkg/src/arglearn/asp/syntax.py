"""Terms, atoms, rules and programs, plus a parser for the clingo-style text format.

Terms are plain strings. A term starting with an uppercase letter or ``_`` is
a variable; anything else (lowercase identifiers, integers) is a constant.
There are no function symbols.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional

from ..errors import ArityError, ParseError, UnsafeRuleError


def is_variable(term: str) -> bool:
    return term[:1].isupper() or term[:1] == "_"


class Atom(NamedTuple):
    pred: str
    args: tuple = ()

    def __str__(self):
        if not self.args:
            return self.pred
        return f"{self.pred}({','.join(self.args)})"

    def is_ground(self) -> bool:
        return not any(is_variable(t) for t in self.args)

    def variables(self) -> set[str]:
        return {t for t in self.args if is_variable(t)}

    def substitute(self, binding: dict) -> "Atom":
        return Atom(self.pred, tuple(binding.get(t, t) for t in self.args))

    @property
    def signature(self) -> tuple[str, int]:
        return self.pred, len(self.args)


BOTTOM = Atom("⊥")


class Literal(NamedTuple):
    atom: Atom
    negated: bool = False

    def __str__(self):
        return f"not {self.atom}" if self.negated else str(self.atom)


@dataclass(frozen=True)
class Rule:
    """``head :- body.``; ``head is None`` makes the rule a constraint."""

    head: Optional[Atom]
    body: tuple[Literal, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "body", tuple(Literal(*lit) for lit in self.body))
        bound = set()
        for lit in self.pos_literals():
            bound |= lit.atom.variables()
        loose = set()
        if self.head is not None:
            loose |= self.head.variables()
        for lit in self.body:
            if lit.negated:
                loose |= lit.atom.variables()
        unsafe = loose - bound
        if unsafe:
            raise UnsafeRuleError(f"unsafe variable(s) {', '.join(sorted(unsafe))} in rule {self}")

    def pos_literals(self):
        return (lit for lit in self.body if not lit.negated)

    @property
    def pos(self) -> tuple[Atom, ...]:
        return tuple(lit.atom for lit in self.body if not lit.negated)

    @property
    def neg(self) -> tuple[Atom, ...]:
        return tuple(lit.atom for lit in self.body if lit.negated)

    def is_constraint(self) -> bool:
        return self.head is None

    def is_fact(self) -> bool:
        return self.head is not None and not self.body

    def variables(self) -> set[str]:
        out = set() if self.head is None else self.head.variables()
        for lit in self.body:
            out |= lit.atom.variables()
        return out

    def atoms(self):
        if self.head is not None:
            yield self.head
        for lit in self.body:
            yield lit.atom

    @property
    def cost(self) -> int:
        """Literal count: head plus body literals."""
        return len(self.body) + (self.head is not None)

    def __str__(self):
        head = "" if self.head is None else str(self.head)
        if not self.body:
            return f"{head}."
        body = ", ".join(map(str, self.body))
        return f"{head} :- {body}." if head else f":- {body}."


def heuristic_text(atom: Atom) -> str:
    return f"#heuristic {atom}. [1@1, false]"


@dataclass(frozen=True)
class Program:
    """Normal rules, constraints and ``[1@1, false]`` heuristic statements."""

    rules: tuple[Rule, ...] = ()
    heuristics: tuple[Atom, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "rules", tuple(self.rules))
        object.__setattr__(self, "heuristics", tuple(self.heuristics))
        check_arities(a for r in self.rules for a in r.atoms())
        check_arities(self.heuristics, predicate_arities(self))

    def __or__(self, other: "Program") -> "Program":
        return Program(self.rules + other.rules, self.heuristics + other.heuristics)

    def with_facts(self, facts: Iterable[Atom]) -> "Program":
        return Program(self.rules + tuple(Rule(a) for a in facts), self.heuristics)

    def __str__(self):
        lines = [str(r) for r in self.rules]
        lines += [heuristic_text(h) for h in self.heuristics]
        return "\n".join(lines) + ("\n" if lines else "")

    def __len__(self):
        return len(self.rules)


def predicate_arities(program: Program) -> dict[str, int]:
    return check_arities(a for r in program.rules for a in r.atoms())


def check_arities(atoms: Iterable[Atom], known: Optional[dict] = None) -> dict[str, int]:
    arity = {} if known is None else dict(known)
    for atom in atoms:
        n = arity.setdefault(atom.pred, len(atom.args))
        if n != len(atom.args):
            raise ArityError(f"predicate {atom.pred} used with arities {n} and {len(atom.args)}")
    return arity


_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<comment>%[^\n]*)
  | (?P<heur>\#heuristic\b)
  | (?P<if>:-)
  | (?P<bottom>⊥)
  | (?P<name>[a-z][A-Za-z0-9_]*)
  | (?P<var>[A-Z_][A-Za-z0-9_]*)
  | (?P<num>\d+)
  | (?P<punct>[(),.\[\]@])
    """,
    re.VERBOSE,
)


class _Tokens:
    def __init__(self, text: str):
        self.text = text
        self.items: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m:
                raise ParseError(f"unexpected character {text[pos]!r}", *self.where(pos))
            kind = m.lastgroup
            if kind not in ("ws", "comment"):
                value = m.group()
                if kind == "name" and value == "not":
                    kind = "not"
                self.items.append((kind, value, pos))
            pos = m.end()
        self.i = 0

    def where(self, offset: int) -> tuple[int, int]:
        line = self.text.count("\n", 0, offset) + 1
        return line, offset - (self.text.rfind("\n", 0, offset) + 1) + 1

    def peek(self, ahead=0):
        j = self.i + ahead
        return self.items[j] if j < len(self.items) else ("eof", "", len(self.text))

    def take(self, kind=None, value=None):
        tok = self.peek()
        if (kind and tok[0] != kind) or (value and tok[1] != value):
            want = value or kind
            raise ParseError(f"expected {want!r}, found {tok[1] or 'end of input'!r}", *self.where(tok[2]))
        self.i += 1
        return tok

    def error(self, message):
        return ParseError(message, *self.where(self.peek()[2]))


def _parse_atom(tokens: _Tokens) -> Atom:
    _, pred, _ = tokens.take("name")
    args = []
    if tokens.peek()[1] == "(":
        tokens.take(value="(")
        while True:
            kind, value, pos = tokens.peek()
            if kind not in ("name", "var", "num"):
                raise tokens.error("expected a term")
            tokens.i += 1
            args.append(value)
            if tokens.peek()[1] == ",":
                tokens.take(value=",")
                continue
            tokens.take(value=")")
            break
    return Atom(pred, tuple(args))


def _parse_body(tokens: _Tokens) -> list[Literal]:
    body = []
    while True:
        negated = False
        if tokens.peek()[0] == "not":
            tokens.take("not")
            negated = True
        body.append(Literal(_parse_atom(tokens), negated))
        if tokens.peek()[1] == ",":
            tokens.take(value=",")
            continue
        return body


def parse_program(text: str) -> Program:
    """Parse rules, constraints and ``#heuristic a. [1@1, false]`` lines."""
    tokens = _Tokens(text)
    rules: list[Rule] = []
    heuristics: list[Atom] = []
    while tokens.peek()[0] != "eof":
        start = tokens.peek()[2]
        kind = tokens.peek()[0]
        try:
            if kind == "heur":
                tokens.take("heur")
                atom = _parse_atom(tokens)
                tokens.take(value=".")
                tokens.take(value="[")
                weight = tokens.take("num")[1]
                tokens.take(value="@")
                prio = tokens.take("num")[1]
                tokens.take(value=",")
                sign = tokens.take("name")[1]
                tokens.take(value="]")
                if (weight, prio, sign) != ("1", "1", "false"):
                    raise ParseError("only '[1@1, false]' heuristic modifiers are supported", *tokens.where(start))
                heuristics.append(atom)
                continue
            head = None
            if kind == "bottom":
                tokens.take("bottom")
            elif kind != "if":
                head = _parse_atom(tokens)
            body: list[Literal] = []
            if tokens.peek()[0] == "if":
                tokens.take("if")
                body = _parse_body(tokens)
            elif head is None:
                raise tokens.error("expected ':-'")
            tokens.take(value=".")
            rules.append(Rule(head, tuple(body)))
        except UnsafeRuleError as exc:
            raise ParseError(str(exc), *tokens.where(start)) from None
    try:
        return Program(tuple(rules), tuple(heuristics))
    except ArityError as exc:
        raise ParseError(str(exc)) from None


def parse_atoms(text: str) -> list[Atom]:
    """Parse a comma- or period-separated list of ground atoms."""
    tokens = _Tokens(text)
    atoms = []
    while tokens.peek()[0] != "eof":
        atoms.append(_parse_atom(tokens))
        if tokens.peek()[1] in (",", "."):
            tokens.i += 1
    for a in atoms:
        if not a.is_ground():
            raise ParseError(f"atom {a} is not ground")
    return atoms
