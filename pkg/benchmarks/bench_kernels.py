"""Time the pure-Python and compiled echelon kernels on the same inputs.

    python3 benchmarks/bench_kernels.py [--size 40] [--repeat 5] [--prime 2]

The matrices are LC tracker states produced by a random session of linear
creations, so entries have the sizes met in practice.
"""

import argparse
import copy
import random
import timeit

from padicprec import kernels
from padicprec.tracker import DiffRecord, PrecisionModule


def lc_state(p, size, seed):
    rng = random.Random(seed)
    M = PrecisionModule(p, "LC", relcap=40, abscap=80)
    vids = []
    for _ in range(size):
        if len(vids) < 2 or rng.random() < 0.3:
            vid, _ = M.create_from_value(rng.randrange(1, p**20), rng.randint(10, 60))
        else:
            a, b = rng.sample(vids, 2)
            rec = DiffRecord(rng.randrange(1, p**30), ((a, rng.randrange(1, p**10)), (b, rng.randrange(1, p**10))))
            vid, _ = M.create_from_computation(rec)
        vids.append(vid)
    return M._rows, M._exps, M._taint, M._modulus


def bench(impl, state, p, repeat):
    rows, exps, taint, modulus = state
    n = len(rows)
    rng = random.Random(0)
    positions = rng.sample(range(n), min(4, n))
    coeffs = [rng.randrange(p**20) for _ in positions]
    noisy = copy.deepcopy(rows)
    for r in noisy:
        for t in range(1, len(r)):
            r[t] += rng.randrange(modulus)

    work = {}

    def fresh():
        work["rows"], work["exps"], work["taint"] = copy.deepcopy(rows), list(exps), list(taint)
        work["noisy"] = copy.deepcopy(noisy)

    def do_delete():
        impl.delete_column(work["rows"], work["exps"], work["taint"], 0, p, modulus)

    def do_reduce():
        impl.reduce_above(work["noisy"], 0, modulus)

    def do_combine():
        impl.combine_column(rows, positions, coeffs, modulus)

    out = {}
    for name, fn in (("delete_column", do_delete), ("reduce_above", do_reduce), ("combine_column", do_combine)):
        # copies are made in the untimed setup, one fresh state per run
        out[name] = min(timeit.Timer(fn, setup=fresh).repeat(repeat=repeat, number=1))
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    ap.add_argument("--size", type=int, default=40, help="number of tracked variables")
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--prime", type=int, default=2)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()

    backends = kernels.available_backends()
    if "cython" not in backends:
        print("compiled kernels not built; only the Python backend is available")
    state = lc_state(args.prime, args.size, args.seed)
    results = {name: bench(impl, state, args.prime, args.repeat) for name, impl in backends.items()}

    names = sorted(backends)
    print(f"{'kernel':<16}" + "".join(f"{n + ' (ms)':>16}" for n in names) + ("     speedup" if len(names) > 1 else ""))
    for kernel in ("delete_column", "reduce_above", "combine_column"):
        line = f"{kernel:<16}" + "".join(f"{results[n][kernel] * 1e3:>16.3f}" for n in names)
        if len(names) > 1:
            py, cy = results["python"][kernel], results["cython"][kernel]
            line += f"{py / cy if cy > 0 else float('inf'):>11.2f}x"
        print(line)


if __name__ == "__main__":
    main()
