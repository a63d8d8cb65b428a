"""Bundled program fixtures: background knowledge per framework kind, the
learned semantics programs, and the ASPARTIX admissible encoding.

The ``.lp`` files next to this module are the single source; they are parsed
on first use.
"""
from __future__ import annotations

import enum
from functools import lru_cache
from importlib import resources

from ..asp.syntax import Program, parse_program
from ..errors import ValidationError
from ..framework import Kind


class Semantics(str, enum.Enum):
    CONFLICT_FREE = "conflict_free"
    ADMISSIBLE = "admissible"
    COMPLETE = "complete"
    GROUNDED = "grounded"
    PREFERRED = "preferred"
    STABLE = "stable"

    @classmethod
    def parse(cls, text: str) -> "Semantics":
        key = text.strip().lower().replace("-", "_")
        aliases = {"cf": "conflict_free", "adm": "admissible", "co": "complete", "com": "complete",
                   "gr": "grounded", "grd": "grounded", "pr": "preferred", "prf": "preferred",
                   "st": "stable", "stb": "stable"}
        try:
            return cls(aliases.get(key, key))
        except ValueError:
            raise ValidationError(f"unknown semantics {text!r}") from None


LEARNED = (Semantics.ADMISSIBLE, Semantics.COMPLETE, Semantics.GROUNDED, Semantics.PREFERRED, Semantics.STABLE)

BACKGROUND_FILES = {None: "B", Kind.AAF: "B_AAF", Kind.BAF: "B_BAF", Kind.VAF: "B_VAF"}


def fixture_text(name: str) -> str:
    return resources.files(__package__).joinpath(f"{name}.lp").read_text(encoding="utf-8")


@lru_cache(maxsize=None)
def load(name: str) -> Program:
    return parse_program(fixture_text(name))


def background(kind=None) -> Program:
    """Background knowledge for ``kind``; ``None`` gives the general program."""
    if kind is not None:
        kind = Kind.parse(kind) if isinstance(kind, str) else kind
    return load(BACKGROUND_FILES[kind])


def learned(s) -> Program:
    s = Semantics.parse(s) if isinstance(s, str) else s
    if s is Semantics.CONFLICT_FREE:
        raise ValidationError("no learned program exists for conflict-free sets")
    return load(s.value)


def full_semantics(kind, s) -> Program:
    """Background for ``kind`` together with the learned program for ``s``.

    The same learned program serves all three framework kinds.
    """
    return background(kind) | learned(s)


def aspartix_admissible() -> Program:
    return load("aspartix_adm")


def encoding_text(kind, s) -> str:
    """Printable text of :func:`full_semantics`, background first."""
    kind = Kind.parse(kind) if isinstance(kind, str) else kind
    s = Semantics.parse(s) if isinstance(s, str) else s
    if s is Semantics.CONFLICT_FREE:
        raise ValidationError("no learned program exists for conflict-free sets")
    return fixture_text(BACKGROUND_FILES[kind]) + fixture_text(s.value)
