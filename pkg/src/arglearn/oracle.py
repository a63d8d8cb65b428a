"""Brute-force extension semantics over the defeat relation.

Every subset of the arguments is classified with bit operations (see
:func:`arglearn.kernels.classify_subsets`); grounded and preferred are then
picked out as the least complete and the maximal complete sets.
"""
from __future__ import annotations

import time
from typing import Iterable, Optional

import numpy as np

from . import kernels
from .encodings import Semantics
from .errors import DeadlineExceeded, ResourceLimitError, ValidationError
from .framework import Framework, Kind, transitive_closure

DEFAULT_CAP = 20
_CHUNK = 1 << 16

_FLAG = {
    Semantics.CONFLICT_FREE: kernels.CONFLICT_FREE,
    Semantics.ADMISSIBLE: kernels.ADMISSIBLE,
    Semantics.COMPLETE: kernels.COMPLETE,
    Semantics.STABLE: kernels.STABLE,
}


def defeats(f: Framework) -> frozenset[tuple[str, str]]:
    """The relation used for conflict and defence checks.

    AAF: the attacks. BAF: attacks plus supported and secondary defeats
    through the transitive closure of support. VAF: attacks whose target is
    not preferred to the attacker by value.
    """
    if f.kind is Kind.AAF:
        return f.attacks
    if f.kind is Kind.BAF:
        sup = transitive_closure(f.supports)
        out = set(f.attacks)
        for z, y in f.attacks:
            out.update((x, y) for x, z2 in sup if z2 == z)
        for x, z in f.attacks:
            out.update((x, y) for z2, y in sup if z2 == z)
        return frozenset(out)
    better = transitive_closure(f.valprefs)
    pref = {(x, y) for x in f.args for y in f.args if (f.values[x], f.values[y]) in better}
    pref = transitive_closure(pref)
    return frozenset((x, y) for x, y in f.attacks if (y, x) not in pref)


def _masks(f: Framework):
    names = f.sorted_args()
    pos = {a: i for i, a in enumerate(names)}
    attackers = np.zeros(len(names), dtype=np.int64)
    targets = np.zeros(len(names), dtype=np.int64)
    for x, y in defeats(f):
        attackers[pos[y]] |= np.int64(1) << pos[x]
        targets[pos[x]] |= np.int64(1) << pos[y]
    return names, attackers, targets


def _decode(names, mask: int) -> frozenset[str]:
    return frozenset(a for i, a in enumerate(names) if (mask >> i) & 1)


def _encode(names, members: Iterable[str]) -> int:
    pos = {a: i for i, a in enumerate(names)}
    return sum(1 << pos[a] for a in members)


def _classify_all(n, attackers, targets, deadline):
    total = 1 << n
    parts = []
    for start in range(0, total, _CHUNK):
        if deadline is not None and time.monotonic() > deadline:
            raise DeadlineExceeded("oracle deadline exceeded")
        parts.append(kernels.classify_subsets(n, attackers, targets, start, min(total, start + _CHUNK)))
    return np.concatenate(parts) if parts else np.zeros(0, np.uint8)


def _maximal(masks: np.ndarray) -> list[int]:
    popcount = np.array([bin(int(m)).count("1") for m in masks])
    order = masks[np.argsort(-popcount, kind="stable")]
    kept = np.zeros(0, dtype=np.int64)
    for m in order:
        if not np.any((m & ~kept) == 0):
            kept = np.append(kept, m)
    return [int(m) for m in kept]


def extension_masks(f: Framework, s, cap: int = DEFAULT_CAP, deadline: Optional[float] = None):
    """(sorted argument names, list of extension bitmasks)."""
    s = Semantics.parse(s) if isinstance(s, str) else s
    n = len(f.args)
    if n > cap:
        raise ResourceLimitError(f"oracle limited to {cap} arguments, framework has {n}")
    names, attackers, targets = _masks(f)
    flags = _classify_all(n, attackers, targets, deadline)
    if s in _FLAG:
        return names, np.flatnonzero(flags & _FLAG[s]).tolist()
    complete = np.flatnonzero(flags & kernels.COMPLETE).astype(np.int64)
    if s is Semantics.GROUNDED:
        least = int(np.bitwise_and.reduce(complete))
        return names, [least]
    return names, _maximal(complete)


def extensions(f: Framework, s, cap: int = DEFAULT_CAP, deadline: Optional[float] = None) -> list[frozenset[str]]:
    """All ``s``-extensions of ``f``, ordered by their sorted member lists."""
    names, masks = extension_masks(f, s, cap, deadline)
    return sorted((_decode(names, m) for m in masks), key=sorted)


def is_extension(f: Framework, s, e: Iterable[str], cap: int = DEFAULT_CAP) -> bool:
    s = Semantics.parse(s) if isinstance(s, str) else s
    e = frozenset(e)
    if not e <= f.args:
        raise ValidationError(f"not arguments of the framework: {', '.join(sorted(e - f.args))}")
    if s in (Semantics.GROUNDED, Semantics.PREFERRED):
        return e in extensions(f, s, cap)
    names, attackers, targets = _masks(f)
    m = _encode(names, e)
    flags = kernels.classify_subsets_np(len(names), attackers, targets, m, m + 1)[0]
    return bool(flags & _FLAG[s])


def credulous(f: Framework, s, cap: int = DEFAULT_CAP, deadline: Optional[float] = None) -> frozenset[str]:
    """Arguments that belong to at least one extension."""
    names, masks = extension_masks(f, s, cap, deadline)
    union = 0
    for m in masks:
        union |= m
    return _decode(names, union)
