"""Time the compiled kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat 3]
"""
import argparse
import time

import numpy as np

from cantorhaar import kernels
from cantorhaar.radix import RadixSystem

CASES = {
    "sweep binary level 13 (N=8192)": ("sweep", RadixSystem.constant(2), 13),
    "sweep (5,2,7|2) level 8 (N=2240)": ("sweep", RadixSystem((5, 2, 7), (2,)), 8),
    "sample+phi 1e5 x depth 40, binary": ("sample", RadixSystem.constant(2), 40),
    "sample+phi 1e5 x depth 40, (2,3)": ("sample", RadixSystem.periodic(2, 3), 40),
}


def run_case(impl, kind, system, level):
    radices = np.asarray(system.radices(level), dtype=np.int64)
    if kind == "sweep":
        return impl.pushforward_sweep(radices)
    return kernels.sample_phi(42, radices, 0, 100_000, backend=impl)


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = kernels.available_backends()
    names = sorted(backends)
    print("case".ljust(40) + "".join(n.rjust(12) for n in names) + "speedup".rjust(10))
    for label, (kind, system, level) in CASES.items():
        results = {n: run_case(backends[n], kind, system, level) for n in names}
        first = results[names[0]]
        for n in names[1:]:
            same = (first == results[n]) if kind == "sweep" else np.array_equal(first, results[n])
            assert same, f"{n} disagrees with {names[0]} on {label}"
        times = {n: best_of(lambda n=n: run_case(backends[n], kind, system, level), args.repeat) for n in names}
        speedup = times["python"] / times["cython"] if "cython" in times else float("nan")
        print(label.ljust(40) + "".join(f"{times[n]:11.4f}s" for n in names) + f"{speedup:9.1f}x")


if __name__ == "__main__":
    main()
