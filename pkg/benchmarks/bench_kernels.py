"""Time the compiled kernels against the pure-Python reference.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Each case builds identical inputs once, then reports the best wall time over
``--repeat`` runs for every available backend and the speedup.
"""
import argparse
import timeit

import numpy as np

from antiflat import kernels
from antiflat.ensembles.clifford import doped_circuit


def circuit_case(n: int, k: int):
    ops, thetas = doped_circuit(n, k, np.pi / 4, np.random.default_rng(0))
    psi0 = np.zeros(2**n, dtype=complex)
    psi0[0] = 1.0

    def run(mod):
        mod.apply_circuit(psi0.copy(), n, ops, thetas)

    return f"apply_circuit n={n} ({len(ops)} gates)", run


def metropolis_case(d: int, steps: int):
    rng = np.random.default_rng(1)
    x0 = rng.dirichlet(np.ones(d))
    perturb = np.ascontiguousarray(rng.dirichlet(np.ones(d), steps) - rng.dirichlet(np.ones(d), steps))
    logu = np.log(rng.random(steps))

    def run(mod):
        out = np.empty((steps // 10, d))
        mod.metropolis_block(x0.copy(), 0.5, 0.6 / np.sqrt(d), perturb, logu, 10, 0, out)

    return f"metropolis_block d={d} ({steps} steps)", run


def betacf_case(calls: int):
    rng = np.random.default_rng(2)
    args = [(float(a), float(b), float(x)) for a, b, x in zip(rng.uniform(1, 20, calls), rng.uniform(1, 20, calls), rng.uniform(0.01, 0.5, calls))]

    def run(mod):
        for a, b, x in args:
            mod.betacf(a, b, x)

    return f"betacf ({calls} calls)", run


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=5)
    args = p.parse_args()
    backends = kernels.backends()
    cases = [
        circuit_case(4, 3),
        circuit_case(10, 3),
        metropolis_case(2, 20_000),
        metropolis_case(6, 20_000),
        betacf_case(2_000),
    ]
    names = sorted(backends)
    print(f"{'case':40s}" + "".join(f"{n:>12s}" for n in names) + f"{'speedup':>10s}")
    for label, run in cases:
        times = {}
        for name in names:
            mod = backends[name]
            times[name] = min(timeit.repeat(lambda: run(mod), number=1, repeat=args.repeat))
        row = f"{label:40s}" + "".join(f"{times[n] * 1e3:10.2f}ms" for n in names)
        if "cython" in times:
            row += f"{times['python'] / times['cython']:9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
