"""Benchmark driver: random frameworks, timed runs, PAR-2 and MCC."""
from __future__ import annotations

import csv
import io
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional

import numpy as np

from . import oracle
from .asp.grounding import instantiate
from .asp.solver import first_answer_set, solve
from .encodings import Semantics, aspartix_admissible, full_semantics
from .errors import ArgLearnError, DeadlineExceeded, ValidationError
from .framework import Framework, Kind, load_framework, to_facts

ENGINES = ("learned", "aspartix_adm", "oracle")
TIMEOUT_ENV = "ARGLEARN_TIMEOUT"
DEFAULT_THRESHOLD = 1200.0
CSV_HEADER = ["instance", "engine", "semantics", "outcome", "seconds"]


def default_timeout() -> float:
    return float(os.environ.get(TIMEOUT_ENV, DEFAULT_THRESHOLD))


@dataclass(frozen=True)
class RunResult:
    instance: str
    engine: str
    semantics: str
    seconds: float
    outcome: str  # solved | timeout | error
    extension: Optional[frozenset] = None
    message: str = ""


@dataclass(frozen=True)
class ConfusionCounts:
    tp: int = 0
    tn: int = 0
    fp: int = 0
    fn: int = 0

    def __add__(self, other):
        return ConfusionCounts(self.tp + other.tp, self.tn + other.tn, self.fp + other.fp, self.fn + other.fn)

    @property
    def total(self) -> int:
        return self.tp + self.tn + self.fp + self.fn


def par2(results: Iterable[RunResult], threshold_s: float = DEFAULT_THRESHOLD) -> float:
    """Penalised average runtime; unsolved runs count twice the threshold."""
    scores = [2.0 * threshold_s if r.outcome != "solved" else r.seconds for r in results]
    if not scores:
        raise ValueError("par2 of an empty result list")
    return math.fsum(scores) / len(scores)


def mcc(c: ConfusionCounts) -> float:
    """Matthews correlation; 0 when any marginal is empty."""
    denom = (c.tp + c.fp) * (c.tp + c.fn) * (c.tn + c.fp) * (c.tn + c.fn)
    if denom == 0:
        return 0.0
    return (c.tp * c.tn - c.fp * c.fn) / math.sqrt(denom)


# --------------------------------------------------------------------------
# random instances

def _names(n):
    return [f"a{i}" for i in range(1, n + 1)]


def gen_random_af(n_args: int, attack_prob: float = 0.25, seed=None) -> Framework:
    """Directed random graph; every ordered pair, self-loops included, is an
    attack with probability ``attack_prob``."""
    if not 0.0 <= attack_prob <= 1.0:
        raise ValueError("attack_prob must lie in [0, 1]")
    rng = np.random.default_rng(seed)
    names = _names(n_args)
    hit = rng.random((n_args, n_args)) < attack_prob
    attacks = [(names[i], names[j]) for i, j in zip(*np.nonzero(hit))]
    return Framework.aaf(names, attacks)


def gen_random_baf(n_args: int, attack_prob: float = 0.25, support_prob: float = 0.15, seed=None) -> Framework:
    rng = np.random.default_rng(seed)
    names = _names(n_args)
    draw = rng.random((n_args, n_args))
    att = draw < attack_prob
    sup = ~att & (rng.random((n_args, n_args)) < support_prob)
    np.fill_diagonal(sup, False)
    attacks = [(names[i], names[j]) for i, j in zip(*np.nonzero(att))]
    supports = [(names[i], names[j]) for i, j in zip(*np.nonzero(sup))]
    return Framework(Kind.BAF, frozenset(names), frozenset(attacks), frozenset(supports))


def gen_random_vaf(n_args: int, attack_prob: float = 0.25, n_values: int = 3, pref_prob: float = 0.5,
                   seed=None) -> Framework:
    """Values ``v1..vk`` drawn uniformly; preferences only point down a random
    ranking of the values, so they are acyclic."""
    rng = np.random.default_rng(seed)
    names = _names(n_args)
    att = rng.random((n_args, n_args)) < attack_prob
    attacks = [(names[i], names[j]) for i, j in zip(*np.nonzero(att))]
    values = [f"v{i}" for i in range(1, n_values + 1)]
    assign = {a: values[k] for a, k in zip(names, rng.integers(0, n_values, n_args))}
    rank = rng.permutation(n_values)
    prefs = [(values[rank[i]], values[rank[j]])
             for i in range(n_values) for j in range(i + 1, n_values) if rng.random() < pref_prob]
    return Framework(Kind.VAF, frozenset(names), frozenset(attacks), values=assign, valprefs=frozenset(prefs))


def load_instances(directory) -> list[tuple[str, Framework]]:
    """Every ``.apx``/``.af``/``.tgf``-less instance file in ``directory``, by name."""
    out = []
    for path in sorted(Path(directory).iterdir()):
        if path.suffix in (".apx", ".af", ".i23"):
            out.append((path.name, load_framework(path)))
    return out


# --------------------------------------------------------------------------
# engines

def _in_set(model) -> frozenset:
    return frozenset(a.args[0] for a in model if a.pred == "in")


def _engine_program(engine, f: Framework, s: Semantics):
    if engine == "learned":
        return full_semantics(f.kind, s)
    if engine == "aspartix_adm":
        if s is not Semantics.ADMISSIBLE or f.kind is not Kind.AAF:
            raise ValidationError("the ASPARTIX engine covers admissible semantics of AAFs only")
        return aspartix_admissible()
    raise ValidationError(f"unknown engine {engine!r}")


def first_extension(engine: str, f: Framework, s, deadline=None, cap=oracle.DEFAULT_CAP) -> Optional[frozenset]:
    """One extension, or None when the semantics admits none."""
    s = Semantics.parse(s) if isinstance(s, str) else s
    if engine == "oracle":
        found = oracle.extensions(f, s, cap=cap, deadline=deadline)
        return found[0] if found else None
    g = instantiate(_engine_program(engine, f, s), to_facts(f))
    truth = first_answer_set(g, deadline)
    return None if truth is None else _in_set(g.decode(truth))


def all_extensions(engine: str, f: Framework, s, deadline=None, cap=oracle.DEFAULT_CAP) -> list[frozenset]:
    s = Semantics.parse(s) if isinstance(s, str) else s
    if engine == "oracle":
        return oracle.extensions(f, s, cap=cap, deadline=deadline)
    models = solve(_engine_program(engine, f, s), to_facts(f), deadline=deadline)
    return sorted({_in_set(m) for m in models}, key=sorted)


def run_one(instance: str, f: Framework, engine: str, semantics, timeout: float) -> RunResult:
    s = Semantics.parse(semantics) if isinstance(semantics, str) else semantics
    start = time.monotonic()
    deadline = start + timeout
    try:
        if timeout <= 0:
            raise DeadlineExceeded("zero time budget")
        ext = first_extension(engine, f, s, deadline, cap=max(oracle.DEFAULT_CAP, len(f.args)))
        elapsed = time.monotonic() - start
        if elapsed > timeout:
            raise DeadlineExceeded("finished after the deadline")
        msg = "" if ext is not None else "no extension exists"
        return RunResult(instance, engine, s.value, elapsed, "solved", ext, msg)
    except DeadlineExceeded:
        elapsed = max(time.monotonic() - start, timeout)
        return RunResult(instance, engine, s.value, elapsed, "timeout")
    except (ArgLearnError, ValueError, MemoryError) as exc:
        return RunResult(instance, engine, s.value, time.monotonic() - start, "error", message=str(exc))


def run_suite(instances, engines, semantics, timeout: Optional[float] = None, workers: int = 1) -> list[RunResult]:
    """Run every (instance, engine, semantics) triple; rows sorted by key."""
    timeout = default_timeout() if timeout is None else timeout
    jobs = [(name, f, e, s) for name, f in instances for e in engines for s in semantics]
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            results = list(pool.map(lambda j: run_one(*j, timeout), jobs))
    else:
        results = [run_one(*j, timeout) for j in jobs]
    return sorted(results, key=lambda r: (r.instance, r.engine, r.semantics))


def results_csv(results: Iterable[RunResult]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in results:
        writer.writerow([r.instance, r.engine, r.semantics, r.outcome, f"{r.seconds:.6f}"])
    return buf.getvalue()


def confusion(predicted: frozenset, gold: frozenset, universe) -> ConfusionCounts:
    tp = tn = fp = fn = 0
    for a in universe:
        p, g = a in predicted, a in gold
        if p and g:
            tp += 1
        elif p:
            fp += 1
        elif g:
            fn += 1
        else:
            tn += 1
    return ConfusionCounts(tp, tn, fp, fn)


def mcc_eval(engine: str, semantics, frameworks: Iterable[Framework], cap: int = 25) -> tuple[float, ConfusionCounts]:
    """MCC of per-argument credulous acceptance, ``engine`` against the oracle."""
    total = ConfusionCounts()
    for f in frameworks:
        predicted = frozenset().union(*all_extensions(engine, f, semantics, cap=cap))
        gold = oracle.credulous(f, semantics, cap=cap)
        total = total + confusion(predicted, gold, f.args)
    return mcc(total), total
