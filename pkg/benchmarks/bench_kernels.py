"""Compare the compiled kernels with the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]

Times each kernel on typical suite sizes, then one end-to-end relation
block, under both backends.
"""

import argparse
import timeit

import numpy as np

from holevolab import _backend
from holevolab.lab.instances import random_mixed_state
from holevolab.lab.suite import run_suite
from holevolab.measurements import random_povm


def cases(rng):
    rho = random_mixed_state((3, 3, 3), rng).matrix
    P = random_povm(3, 4, rng).elements
    eigs = rng.dirichlet(np.ones(9), size=8)
    return {
        "partial_trace 3x3x3 -> b": lambda: _backend.partial_trace(rho, (3, 3, 3),
                                                                  (False, True, False)),
        "conditional_blocks 4 x (3 | 9)": lambda: _backend.conditional_blocks(P, rho, 3, 9),
        "spectral_entropies 8 x 9, renyi": lambda: _backend.spectral_entropies(
            eigs, 1, 0.5, 1 / np.log(2)),
        "eigvalsh 27x27 (reference, LAPACK)": lambda: np.linalg.eigvalsh(rho),
    }


def time_call(fn, repeat):
    number = 200
    best = min(timeit.repeat(fn, number=number, repeat=repeat))
    return best / number * 1e6


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    backends = _backend.available()
    if "cython" not in backends:
        print("compiled kernels not built; only the fallback is available")
    rng = np.random.default_rng(0)
    table = cases(rng)
    print(f"{'kernel':38s}" + "".join(f"{b:>12s}" for b in backends) + "  python/cython")
    for name, fn in table.items():
        row = []
        for b in backends:
            _backend.use(b)
            row.append(time_call(fn, args.repeat))
        ratio = row[-1] / row[0] if len(row) > 1 else 1.0
        print(f"{name:38s}" + "".join(f"{t:10.2f}us" for t in row) + f"  {ratio:8.2f}x")

    row = []
    for b in backends:
        _backend.use(b)
        best = min(timeit.repeat(lambda: run_suite(["thm3_bias_invariance"], [(3, 3, 3)], 20),
                                 number=1, repeat=max(1, args.repeat // 2)))
        row.append(best * 1e3)
    ratio = row[-1] / row[0] if len(row) > 1 else 1.0
    print(f"{'thm3 block, 20 trials at 3x3x3':38s}" + "".join(f"{t:10.1f}ms" for t in row)
          + f"  {ratio:8.2f}x")


if __name__ == "__main__":
    main()
