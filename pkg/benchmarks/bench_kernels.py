"""Compare compiled and pure-Python kernels on synthetic workloads.

    python benchmarks/bench_kernels.py [--repeat N] [--seed S]
"""

import argparse
import timeit

import numpy as np

from looplang import _pykernels as pure

try:
    from looplang import _ckernels as compiled
except ImportError:
    compiled = None


def workloads(rng):
    n, k = 2000, 4
    delta = rng.integers(0, n, size=(n, k), dtype=np.int32)
    acc = rng.random(n) < 0.3
    words = rng.integers(0, k, size=(20000, 24), dtype=np.int32)
    lengths = rng.integers(0, 25, size=20000, dtype=np.int32)
    small = rng.integers(0, 40, size=(40, k), dtype=np.int32)
    small_acc = rng.random(40) < 0.5
    rel_a = tuple(int(x) for x in rng.integers(0, 2**62, size=62))
    rel_b = tuple(int(x) for x in rng.integers(0, 2**62, size=62))
    return {
        "refine_partition (2000 states)": lambda m: m.refine_partition(delta, acc),
        "run_dfa_batch (20000 words)": lambda m: m.run_dfa_batch(delta, 0, acc, words, lengths),
        "language_layer (4^8 words)": lambda m: m.language_layer(small, 0, small_acc, k, 8),
        "compose_relations (62x62)": lambda m: m.compose_relations(rel_a, rel_b),
    }


def best(fn, module, repeat):
    return min(timeit.repeat(lambda: fn(module), number=1, repeat=repeat))


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args(argv)
    rng = np.random.default_rng(args.seed)
    print(f"{'kernel':34s} {'python':>10s} {'cython':>10s} {'speedup':>8s}")
    for name, fn in workloads(rng).items():
        tp = best(fn, pure, args.repeat)
        if compiled is None:
            print(f"{name:34s} {tp * 1e3:9.2f}ms {'n/a':>10s} {'':>8s}")
            continue
        tc = best(fn, compiled, args.repeat)
        print(f"{name:34s} {tp * 1e3:9.2f}ms {tc * 1e3:9.2f}ms {tp / tc:7.1f}x")


if __name__ == "__main__":
    main()
