"""Time the compiled and pure-Python canonical labelling kernels.

    python3 benchmarks/bench_canon.py --graphs 2000 --max-vertices 9
"""

import argparse
import random
import time

from grtbv import _canon_py

try:
    from grtbv import _canon
except ImportError:  # extension not built
    _canon = None


def workload(count: int, max_n: int, seed: int):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(4, max_n)
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
        rng.shuffle(pairs)
        out.append((n, pairs[: rng.randint(n, min(len(pairs), 2 * n))]))
    return out


def timed(fn, graphs, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        for n, es in graphs:
            fn(n, es)
        best = min(best, time.perf_counter() - t)
    return best


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--graphs", type=int, default=2000)
    p.add_argument("--max-vertices", type=int, default=9)
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args(argv)

    graphs = workload(args.graphs, args.max_vertices, args.seed)
    t_py = timed(_canon_py.canonical_form, graphs, args.repeat)
    print(f"python   {t_py:8.3f} s  ({1e6 * t_py / len(graphs):8.1f} us/graph)")
    if _canon is None:
        print("cython   not built")
        return
    for n, es in graphs:
        if _canon.canonical_form(n, es) != _canon_py.canonical_form(n, es):
            raise SystemExit(f"kernels disagree on n={n} edges={es}")
    t_cy = timed(_canon.canonical_form, graphs, args.repeat)
    print(f"cython   {t_cy:8.3f} s  ({1e6 * t_cy / len(graphs):8.1f} us/graph)")
    print(f"speedup  {t_py / t_cy:8.2f}x")


if __name__ == "__main__":
    main()
