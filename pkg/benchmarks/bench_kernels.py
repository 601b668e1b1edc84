"""Timing of the compiled and pure-Python kernels, with numpy as a reference.

Usage: python3 benchmarks/bench_kernels.py [--sizes 4 8 16 32] [--repeat 5] [--json out.json]
"""
import argparse
import json
import sys
import timeit

import numpy as np

from kreinspec import numkernel


def _ops(backend):
    if backend == "numpy":
        return {
            "eigvals": np.linalg.eigvals,
            "inverse": np.linalg.inv,
            "charpoly": np.poly,
        }
    return {
        "eigvals": numkernel.eigvals,
        "inverse": numkernel.mat_inverse,
        "charpoly": numkernel.charpoly,
    }


def _time(fn, m, repeat):
    number = 1
    # grow the loop count until one batch takes at least 20 ms
    while True:
        t = timeit.timeit(lambda: fn(m), number=number)
        if t >= 0.02 or number >= 10_000:
            break
        number *= 4
    best = min(timeit.repeat(lambda: fn(m), number=number, repeat=repeat))
    return best / number


def run(sizes, repeat, seed=0):
    rng = np.random.default_rng(seed)
    backends = list(numkernel.available_backends()) + ["numpy"]
    rows = []
    previous = numkernel.backend()
    try:
        for n in sizes:
            m = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
            for name in backends:
                if name != "numpy":
                    numkernel.set_backend(name)
                for op, fn in _ops(name).items():
                    rows.append({"n": n, "op": op, "backend": name, "seconds": _time(fn, m, repeat)})
            if n <= numkernel.ORACLE_MAX_DIM:
                for name in numkernel.available_backends():
                    numkernel.set_backend(name)
                    t = _time(numkernel.charpoly_roots_oracle, m, repeat)
                    rows.append({"n": n, "op": "oracle", "backend": name, "seconds": t})
    finally:
        numkernel.set_backend(previous)
    return rows


def render(rows):
    backends = sorted({r["backend"] for r in rows}, key=["cython", "python", "numpy"].index)
    cells = {(r["n"], r["op"], r["backend"]): r["seconds"] for r in rows}
    keys = sorted({(r["n"], r["op"]) for r in rows})
    head = f"{'n':>4} {'op':<9}" + "".join(f"{b:>12}" for b in backends)
    if {"cython", "python"} <= set(backends):
        head += f"{'py/cy':>9}"
    lines = [head, "-" * len(head)]
    for n, op in keys:
        line = f"{n:>4} {op:<9}"
        for b in backends:
            t = cells.get((n, op, b))
            line += f"{t * 1e6:>10.1f}us" if t is not None else f"{'-':>12}"
        if {"cython", "python"} <= set(backends):
            line += f"{cells[(n, op, 'python')] / cells[(n, op, 'cython')]:>8.1f}x"
        lines.append(line)
    return "\n".join(lines)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", type=int, nargs="+", default=[4, 8, 16, 32])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--json", metavar="FILE", help="also write the raw timings as JSON")
    args = parser.parse_args(argv)
    if any(n < 1 for n in args.sizes) or args.repeat < 1:
        parser.error("sizes and repeat must be positive")
    if "cython" not in numkernel.available_backends():
        print("compiled backend not built; timing the Python fallback only", file=sys.stderr)
    rows = run(args.sizes, args.repeat)
    print(render(rows))
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rows, fh, indent=2)
    return 0


if __name__ == "__main__":
    sys.exit(main())
