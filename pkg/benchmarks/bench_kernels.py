"""Time the compiled kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--sweep]

Each row reports the best of ``--repeat`` runs in milliseconds. ``--sweep``
also times the default benchmark grid end to end under each backend.
"""
import argparse
import os
import subprocess
import sys
import time

import numpy as np

from hybridmark import _backend
from hybridmark.attacks import quality_table
from hybridmark.fixtures import make


def best_ms(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return 1000.0 * min(times)


def kernel_cases():
    img = make("texture").pixels
    plane = img.astype(np.complex128)
    table = quality_table(50).astype(np.float64)
    return {
        "fft_rows 512x512": lambda k: k.fft_rows(plane),
        "fft2 512x512 (rows+cols)": lambda k: k.fft_rows(np.ascontiguousarray(k.fft_rows(plane).T)),
        "jpeg_blocks 512x512 QF50": lambda k: k.jpeg_blocks(img, table),
        "splitmix64_fill 262144": lambda k: k.splitmix64_fill(7, 262144),
        "shuffle_prefix 20000 -> 80": lambda k: k.shuffle_prefix(20000, 80, 42),
    }


def sweep_seconds(backend):
    env = dict(os.environ, HYBRIDMARK_BACKEND=backend)
    code = ("import time; from hybridmark.bench import SweepConfig, run_sweep;"
            "t=time.perf_counter(); run_sweep(SweepConfig()); print(time.perf_counter()-t)")
    out = subprocess.run([sys.executable, "-c", code], env=env, check=True,
                         capture_output=True, text=True)
    return float(out.stdout.strip())


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--sweep", action="store_true", help="also time the full default sweep")
    args = p.parse_args(argv)

    names = _backend.available()
    backends = {n: _backend.load(n) for n in names}
    if "cython" not in backends:
        print("compiled extension not built; only the numpy fallback is timed")
    print(f"{'kernel':<30}" + "".join(f"{n:>12}" for n in names) + ("     speedup" if len(names) > 1 else ""))
    for label, fn in kernel_cases().items():
        row = [best_ms(lambda: fn(k), args.repeat) for k in backends.values()]
        line = f"{label:<30}" + "".join(f"{t:>10.2f}ms" for t in row)
        if len(row) > 1:
            line += f"{row[0] / row[1]:>11.1f}x"
        print(line)
    if args.sweep:
        row = [sweep_seconds(n) for n in names]
        line = f"{'default sweep (126 trials)':<30}" + "".join(f"{t:>11.2f}s" for t in row)
        if len(row) > 1:
            line += f"{row[0] / row[1]:>11.1f}x"
        print(line)


if __name__ == "__main__":
    main()
