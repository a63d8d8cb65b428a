"""Command-line entry point: ``arglearn <command> ...``.

Exit status is 0 on success, 1 on a domain failure (no hypothesis, failed
verification, timeout) and 2 on usage or input errors.
"""
from __future__ import annotations

import argparse
import logging
import sys
import time
from importlib import resources
from pathlib import Path

import numpy as np

from . import bench, oracle
from .aba import argument_table, translate
from .asp.solver import solve as solve_program
from .encodings import LEARNED, Semantics, background, encoding_text, fixture_text, full_semantics
from .errors import ArgLearnError, DeadlineExceeded, ParseError, ValidationError
from .framework import Kind, load_framework, parse_aba, render_apx, to_facts
from .learning.examples import format_examples, generate_examples, parse_examples
from .learning.search import LearningTask, learn
from .learning.verify import all_aafs, mismatches

log = logging.getLogger("arglearn")

ENGINE_NAMES = {"learned": "learned", "aspartix": "aspartix_adm", "aspartix_adm": "aspartix_adm", "oracle": "oracle"}


class UsageError(Exception):
    pass


def format_extension(ext) -> str:
    return "{" + ",".join(sorted(ext)) + "}"


def _semantics(text):
    try:
        return Semantics.parse(text)
    except ValidationError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _deadline(seconds):
    return None if seconds is None else time.monotonic() + seconds


def _load(path, fmt=None):
    try:
        return load_framework(path, fmt)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


# --------------------------------------------------------------------------
# commands

def cmd_solve(args):
    f = _load(args.file, args.format)
    engine = ENGINE_NAMES[args.engine]
    if engine == "aspartix_adm" and (args.semantics is not Semantics.ADMISSIBLE or f.kind is not Kind.AAF):
        raise UsageError("the aspartix engine only covers admissible semantics of AAFs")
    deadline = _deadline(args.timeout)
    cap = max(oracle.DEFAULT_CAP, len(f.args))
    if args.n == 1:
        first = bench.first_extension(engine, f, args.semantics, deadline, cap=cap)
        found = [] if first is None else [first]
    else:
        found = bench.all_extensions(engine, f, args.semantics, deadline, cap=cap)
        if args.n:
            found = found[:args.n]
    if not found:
        print("NO EXTENSION")
    for ext in found:
        print(format_extension(ext))
    return 0


def cmd_enumerate(args):
    """Print the full minimal answer sets of the encoding over the framework."""
    f = _load(args.file, args.format)
    program = full_semantics(f.kind, args.semantics)
    models = solve_program(program, to_facts(f), deadline=_deadline(args.timeout))
    for m in models:
        shown = sorted(a for a in m if args.all_atoms or a.pred in ("in", "out"))
        print(" ".join(f"{a}." for a in shown))
    log.info("%d answer set(s)", len(models))
    return 0


def cmd_translate_aba(args):
    try:
        text = Path(args.file).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {args.file}: {exc.strerror}") from None
    f, arguments = translate(parse_aba(text))
    apx = render_apx(f)
    if args.output:
        Path(args.output).write_text(apx)
    else:
        sys.stdout.write(apx)
    table = argument_table(arguments)
    if args.table:
        Path(args.table).write_text(table)
    else:
        sys.stderr.write(table)
    return 0


def bundled_examples(s: Semantics) -> str:
    path = resources.files("arglearn.learning").joinpath("tasks", f"{s.value}.las")
    return path.read_text(encoding="utf-8")


def cmd_learn(args):
    if args.examples:
        try:
            text = Path(args.examples).read_text()
        except OSError as exc:
            raise UsageError(f"cannot read {args.examples}: {exc.strerror}") from None
    else:
        if args.semantics is None:
            raise UsageError("give --semantics or --examples")
        text = bundled_examples(args.semantics)
    examples = parse_examples(text)
    task = LearningTask(
        background(args.kind),
        [e for e in examples if e.positive],
        [e for e in examples if not e.positive],
        learn_heuristics=args.learn_heuristics,
        max_body=args.max_body,
        max_vars=args.max_vars,
        max_cost=args.max_cost,
    )
    h = learn(task, _deadline(args.timeout))
    sys.stdout.write(str(h))
    log.info("cost %d", h.cost)
    if args.verify is None:
        return 0
    if args.semantics is None:
        raise UsageError("--verify needs --semantics")
    checked, wrong, _ = mismatches(background(Kind.AAF) | h.program(), args.semantics, all_aafs(args.verify), stop=1)
    if wrong:
        print(f"verify n<={args.verify}: FAIL")
        return 1
    print(f"verify n<={args.verify}: PASS ({checked} frameworks)")
    return 0


def cmd_gen_examples(args):
    if args.frameworks:
        frameworks = [_load(p) for p in args.frameworks]
    else:
        frameworks = [bench.gen_random_af(int(n), args.attack_prob, seed=args.seed + i)
                      for i, n in enumerate(_sizes(args))]
    pos, neg = generate_examples(args.semantics, frameworks, args.pos, args.neg, seed=args.seed)
    sys.stdout.write(format_examples(pos + neg))
    return 0


def _sizes(args):
    rng = np.random.default_rng(args.seed)
    return rng.integers(args.min_args, args.max_args + 1, size=args.random)


def cmd_show_encoding(args):
    if args.fixture:
        sys.stdout.write(fixture_text(args.fixture))
    else:
        if args.semantics is None:
            raise UsageError("give --semantics or --fixture")
        sys.stdout.write(encoding_text(args.kind, args.semantics))
    return 0


def cmd_bench(args):
    instances = []
    for d in args.dirs:
        instances += bench.load_instances(d)
    if args.random:
        rng = np.random.default_rng(args.seed)
        for i in range(args.random):
            n = int(rng.integers(args.min_args, args.max_args + 1))
            instances.append((f"random-{i:04d}", bench.gen_random_af(n, args.attack_prob, seed=args.seed + i)))
    if not instances:
        raise UsageError("no instances: give directories or --random N")
    engines = [ENGINE_NAMES[e] for e in args.engines]
    results = bench.run_suite(instances, engines, args.semantics, args.timeout, args.workers)
    sys.stdout.write(bench.results_csv(results))
    threshold = bench.default_timeout() if args.timeout is None else args.timeout
    for e in engines:
        for s in args.semantics:
            rows = [r for r in results if r.engine == e and r.semantics == s.value]
            if rows:
                log.info("%s %s PAR-2 %.6f", e, s.value, bench.par2(rows, threshold))
    return 0


# --------------------------------------------------------------------------
# parser

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="arglearn", description="Argumentation semantics: solve, learn, benchmark.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = ap.add_subparsers(dest="command", required=True)
    add = lambda name, help: sub.add_parser(name, help=help, parents=[common])

    def framework_args(p):
        p.add_argument("file", help="framework file")
        p.add_argument("--semantics", "-s", type=_semantics, required=True)
        p.add_argument("--format", choices=["apx", "iccma"], default=None, help="default: guess from content")
        p.add_argument("--timeout", type=float, default=None, help="seconds")

    p = add("solve", "print extensions of a framework")
    framework_args(p)
    p.add_argument("--engine", choices=["learned", "aspartix", "oracle"], default="learned")
    p.add_argument("-n", type=int, default=0, help="print at most N extensions (0 = all)")
    p.set_defaults(func=cmd_solve)

    p = add("enumerate", "print the answer sets of the learned encoding")
    framework_args(p)
    p.add_argument("--all-atoms", action="store_true", help="show every atom, not only in/out")
    p.set_defaults(func=cmd_enumerate)

    p = add("translate-aba", "translate a flat ABA framework to APX")
    p.add_argument("file")
    p.add_argument("-o", "--output", help="APX output file (default stdout)")
    p.add_argument("--table", help="CSV argument table (default stderr)")
    p.set_defaults(func=cmd_translate_aba)

    p = add("learn", "learn a semantics from examples")
    p.add_argument("--semantics", "-s", type=_semantics, choices=list(LEARNED), metavar="SEMANTICS")
    p.add_argument("--examples", help="example file (default: the bundled task for --semantics)")
    p.add_argument("--kind", type=Kind.parse, default=Kind.AAF, help="background knowledge: aaf, baf or vaf")
    p.add_argument("--learn-heuristics", action="store_true")
    p.add_argument("--max-body", type=int, default=3)
    p.add_argument("--max-vars", type=int, default=2)
    p.add_argument("--max-cost", type=int, default=LearningTask.max_cost)
    p.add_argument("--verify", type=int, metavar="N", help="compare with the oracle on all AAFs up to N arguments")
    p.add_argument("--timeout", type=float, default=None)
    p.set_defaults(func=cmd_learn)

    p = add("gen-examples", "sample labelled examples with the oracle")
    p.add_argument("--semantics", "-s", type=_semantics, required=True)
    p.add_argument("--pos", type=int, default=5)
    p.add_argument("--neg", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("frameworks", nargs="*", help="framework files (default: random AAFs)")
    p.add_argument("--random", type=int, default=5, help="number of random AAFs")
    p.add_argument("--min-args", type=int, default=1)
    p.add_argument("--max-args", type=int, default=4)
    p.add_argument("--attack-prob", type=float, default=0.25)
    p.set_defaults(func=cmd_gen_examples)

    p = add("show-encoding", "print a bundled program")
    p.add_argument("--kind", type=Kind.parse, default=Kind.AAF)
    p.add_argument("--semantics", "-s", type=_semantics)
    p.add_argument("--fixture", help="raw fixture name, e.g. B, B_AAF, aspartix_adm")
    p.set_defaults(func=cmd_show_encoding)

    p = add("bench", "time engines on instances; CSV to stdout")
    p.add_argument("dirs", nargs="*", help="directories of .apx/.af/.i23 files")
    p.add_argument("--random", type=int, default=0, help="add N random AAFs")
    p.add_argument("--min-args", type=int, default=5)
    p.add_argument("--max-args", type=int, default=25)
    p.add_argument("--attack-prob", type=float, default=0.25)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--engines", nargs="+", choices=list(ENGINE_NAMES), default=["learned"])
    p.add_argument("--semantics", "-s", nargs="+", type=_semantics, default=[Semantics.STABLE])
    p.add_argument("--timeout", type=float, default=None, help=f"seconds (default ${bench.TIMEOUT_ENV} or 1200)")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_bench)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except (UsageError, ParseError) as exc:
        print(f"arglearn {args.command}: {exc}", file=sys.stderr)
        return 2
    except DeadlineExceeded:
        print("TIMEOUT", file=sys.stderr)
        return 1
    except ArgLearnError as exc:
        name = "UNSATISFIABLE" if type(exc).__name__ == "Unsatisfiable" else "error"
        print(f"arglearn {args.command}: {name}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
