"""Compare the compiled and pure-Python kernel backends.

    python benchmarks/bench_kernels.py [--repeat N]

Kernel timings call both modules directly. End-to-end timings run each
workload in a subprocess with HPRIG_PURE_PYTHON toggled, since the backend
is fixed at import.
"""
import argparse
import os
import random
import subprocess
import sys
import timeit

from hprig import _purekernels

try:
    from hprig import _speedups
except ImportError:
    _speedups = None


def _workloads(rng):
    big = [rng.randint(-10**30, 10**30) for _ in range(40)]
    other = [rng.randint(-10**30, 10**30) for _ in range(40)]
    cubic_roots = [rng.randint(-500, 500) or 1 for _ in range(12)]
    poly = [1]
    for r in cubic_roots:
        poly = _purekernels.poly_mul(poly, [1, -r])
    return big, other, poly


def bench_kernels(repeat):
    rng = random.Random(0)
    big, other, poly = _workloads(rng)
    chain = _purekernels.sturm_chain(poly)
    cases = {
        "poly_mul (40x40, 100-bit)": lambda m: m.poly_mul(big, other),
        "sturm_chain (deg 12)": lambda m: m.sturm_chain(poly),
        "variations_at (deg 12)": lambda m: m.variations_at(chain, 7, 3),
        "sign_at (deg 12)": lambda m: m.sign_at(poly, 355, 113),
    }
    backends = [("python", _purekernels)] + ([("cython", _speedups)] if _speedups else [])
    print(f"{'kernel':<28}" + "".join(f"{name:>12}" for name, _ in backends) + f"{'speedup':>10}")
    for label, fn in cases.items():
        times = []
        for _, mod in backends:
            n, _t = timeit.Timer(lambda: fn(mod)).autorange()
            times.append(min(timeit.repeat(lambda: fn(mod), number=n, repeat=repeat)) / n)
        row = f"{label:<28}" + "".join(f"{t * 1e6:>10.1f}us" for t in times)
        if len(times) == 2:
            row += f"{times[0] / times[1]:>9.2f}x"
        print(row)


END_TO_END = {
    "witnesses len 3..7": "from hprig.rigidity import verify_witnesses; verify_witnesses(3, 7)",
    "realize_sp x128 (len 8)": (
        "import itertools; from hprig.polycore import SignPattern; from hprig.realizer import realize_sp\n"
        "for t in itertools.product((1, -1), repeat=7): realize_sp(SignPattern.from_ints((1,) + t))"
    ),
}


def bench_end_to_end():
    print()
    print(f"{'workload':<28}{'python':>12}{'cython':>12}{'speedup':>10}")
    for label, code in END_TO_END.items():
        times = []
        for pure in ("1", "0"):
            env = dict(os.environ, HPRIG_PURE_PYTHON=pure)
            prog = f"import time; s = time.perf_counter()\n{code}\nprint(time.perf_counter() - s)"
            out = subprocess.run([sys.executable, "-c", prog], env=env, capture_output=True,
                                 text=True, check=True)
            times.append(float(out.stdout.strip()))
        print(f"{label:<28}{times[0]:>11.2f}s{times[1]:>11.2f}s{times[0] / times[1]:>9.2f}x")


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--skip-end-to-end", action="store_true")
    args = parser.parse_args()
    if _speedups is None:
        print("compiled backend not built; timing the pure-Python kernels only")
    bench_kernels(args.repeat)
    if _speedups is not None and not args.skip_end_to_end:
        bench_end_to_end()


if __name__ == "__main__":
    main()
