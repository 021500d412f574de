"""Compare the compiled and pure-Python kernels.

Times each kernel on fixed inputs for both backends, then times a full
test-ideal computation with each backend in a fresh interpreter (the backend is
chosen at import).  Usage::

    python benchmarks/bench_kernels.py [--repeat 5] [--ring 2,9,5]
"""

import argparse
import os
import random
import subprocess
import sys
import timeit

from dti import _pykernels
from dti.modp import _pad, base_p_digits

try:
    from dti import _ckernels
except ImportError:
    _ckernels = None


def kernel_inputs(seed=1):
    rng = random.Random(seed)
    rows = [tuple(rng.randint(0, 9) for _ in range(6)) for _ in range(3000)]
    X = [tuple(rng.randint(0, 9) for _ in range(6)) for _ in range(150)]
    Y = [tuple(rng.randint(0, 9) for _ in range(6)) for _ in range(150)]
    pts = [tuple(rng.randint(0, 12) for _ in range(6)) for _ in range(5000)]
    p, total, bounds = 2, 2**40 - 12345, [2**38 + rng.randint(0, 2**30) for _ in range(8)]
    L = len(base_p_digits(max([total] + bounds), p))
    digits = (_pad(base_p_digits(total, p), L), [_pad(base_p_digits(b, p), L) for b in bounds], p)
    return {
        "minimal_rows (3000 x 6)": ("minimal_rows", (rows,)),
        "lcm_minimal (150 x 150)": ("lcm_minimal", (X, Y)),
        "divisible_mask (5000 pts, 150 gens)": ("divisible_mask", (pts, X)),
        "carryfree_digits (8 parts, 40 bits)": ("carryfree_digits", digits),
    }


def time_call(fn, args, repeat):
    return min(timeit.repeat(lambda: fn(*args), number=1, repeat=repeat))


def end_to_end(ring, pure):
    env = dict(os.environ)
    env.pop("DTI_PURE_PYTHON", None)
    if pure:
        env["DTI_PURE_PYTHON"] = "1"
    code = (
        "import time; from dti.core import validate_ring; from dti.testideal import compute_test_ideal;"
        f"t=time.perf_counter(); compute_test_ideal(validate_ring({ring})); print(time.perf_counter()-t)"
    )
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    return float(out.stdout)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--ring", default="2,9,5", help="p,d,n for the end-to-end timing")
    args = ap.parse_args(argv)

    if _ckernels is None:
        print("compiled kernels are not built; only the Python backend can be timed")
    print(f"{'kernel':<40} {'python (s)':>12} {'cython (s)':>12} {'speedup':>9}")
    for label, (name, kargs) in kernel_inputs().items():
        py = time_call(getattr(_pykernels, name), kargs, args.repeat)
        if _ckernels is None:
            print(f"{label:<40} {py:>12.5f} {'-':>12} {'-':>9}")
            continue
        assert getattr(_ckernels, name)(*kargs) == getattr(_pykernels, name)(*kargs)
        cy = time_call(getattr(_ckernels, name), kargs, args.repeat)
        print(f"{label:<40} {py:>12.5f} {cy:>12.5f} {py / cy:>8.1f}x")

    py = end_to_end(args.ring, pure=True)
    line = f"{'test ideal (' + args.ring + ')':<40} {py:>12.3f}"
    if _ckernels is not None:
        cy = end_to_end(args.ring, pure=False)
        line += f" {cy:>12.3f} {py / cy:>8.1f}x"
    print(line)


if __name__ == "__main__":
    main()
