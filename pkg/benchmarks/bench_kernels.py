"""Time the compiled kernels against the numpy fallback.

Run with ``python3 benchmarks/bench_kernels.py``.  Each kernel is timed on
random complex inputs of a few sizes; the table reports the best of several
repeats and the speed-up of the compiled backend.
"""
import argparse
import timeit

import numpy as np

from framecast import linalg
from framecast._backend import available


def _random(rng, m, n):
    return rng.standard_normal((m, n)) + 1j * rng.standard_normal((m, n))


CASES = {
    "svd": lambda a, b: linalg.svd(a, backend=b),
    "eigh": lambda a, b: linalg.eigh(a @ a.conj().T, backend=b),
    "gram_schmidt": lambda a, b: linalg.gram_schmidt(a, backend=b),
}


def run(sizes, repeat, seed):
    rng = np.random.default_rng(seed)
    backends = available()
    print(f"{'kernel':<14}{'size':>6}" + "".join(f"{b:>12}" for b in backends) + f"{'speedup':>10}")
    for name, fn in CASES.items():
        for n in sizes:
            a = _random(rng, n, n)
            times = {}
            for b in backends:
                number = max(1, int(20 / n))
                t = min(timeit.repeat(lambda: fn(a, b), number=number, repeat=repeat)) / number
                times[b] = t
            speed = times["python"] / times["cython"] if "cython" in times else float("nan")
            print(f"{name:<14}{n:>6}" + "".join(f"{times[b] * 1e3:>10.2f}ms" for b in backends)
                  + f"{speed:>9.1f}x")


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--sizes", type=int, nargs="+", default=[4, 12, 24, 40])
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args(argv)
    run(args.sizes, args.repeat, args.seed)


if __name__ == "__main__":
    main()
