"""Compare the numba kernels with the pure-numpy fallback.

Each backend runs in its own interpreter because the choice is fixed at
import time by ARGLEARN_BACKEND.  Usage:

    python benchmarks/bench_kernels.py [--repeat 3]
"""
import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, sys, time
from arglearn import _accel, oracle
from arglearn.bench import gen_random_af, all_extensions
from arglearn.encodings import background
from arglearn.learning.search import LearningTask, learn
from arglearn.learning.examples import parse_examples
from importlib import resources

repeat = int(sys.argv[1])


def best(fn):
    fn()  # warm-up, includes any jit compilation
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


big = gen_random_af(20, 0.2, seed=3)
afs = [gen_random_af(25, 0.25, seed=i) for i in range(20)]
text = resources.files("arglearn.learning").joinpath("tasks", "complete.las").read_text()
ex = parse_examples(text)
task = LearningTask(background("aaf"), [e for e in ex if e.positive], [e for e in ex if not e.positive])

out = {
    "backend": _accel.BACKEND,
    "classify 2^20 subsets": best(lambda: oracle.extensions(big, "complete", cap=25)),
    "solve 20 AAFs (25 args, preferred)": best(lambda: [all_extensions("learned", f, "preferred") for f in afs]),
    "learn complete": best(lambda: learn(task)),
}
print(json.dumps(out))
"""


def run(backend, repeat):
    env = dict(os.environ, ARGLEARN_BACKEND=backend)
    res = subprocess.run([sys.executable, "-c", WORKER, str(repeat)], env=env, capture_output=True, text=True,
                         check=True)
    return json.loads(res.stdout.strip().splitlines()[-1])


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    nb = run("numba", args.repeat)
    np_ = run("numpy", args.repeat)
    print(f"backends: {nb.pop('backend')} vs {np_.pop('backend')}")
    print(f"{'workload':40s} {'numba s':>10s} {'numpy s':>10s} {'speedup':>8s}")
    for name in nb:
        print(f"{name:40s} {nb[name]:10.4f} {np_[name]:10.4f} {np_[name] / nb[name]:8.2f}")


if __name__ == "__main__":
    main()
