"""Compare the compiled and pure-Python elimination kernels.

Run with ``python benchmarks/bench_kernels.py``.  Kernel timings call
both modules directly on the same matrices.  The end-to-end timing runs
an Ext computation in a subprocess once per backend, since the backend
is fixed at import.
"""

from __future__ import annotations

import argparse
import os
import random
import subprocess
import sys
import time

from pnderived import _kernels_py

try:
    from pnderived import _kernels
except ImportError:
    _kernels = None


def _matrix(rng, nrows, ncols, density, bound):
    return [[rng.randint(-bound, bound) if rng.random() < density else 0 for _ in range(ncols)] for _ in range(nrows)]


def _hom_matrices():
    """Differentials of a Hom complex that shows up in Ext computations."""
    from pnderived.complex import twist
    from pnderived.hom import hom_degree_range, hom_differential, hom_layout
    from pnderived.linalg import _integer_rows
    from pnderived.window import omega_resolution

    a = omega_resolution(3, 3)
    b = twist(omega_resolution(3, 2), 4)
    degs = hom_degree_range(a, b)
    layouts = {k: hom_layout(a, b, k) for k in range(degs.start - 1, degs.stop + 1)}
    out = []
    for k in degs:
        d = hom_differential(a, b, k, layouts)
        if d.nrows and d.ncols:
            out.append(_integer_rows(d.rows))
    return out


def _time(fn, args_list, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        for args in args_list:
            fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


_WORKLOADS = {
    "Ext(O, O(d)) on P^3, |d| <= 6": (
        "from pnderived.complex import LineBundleComplex\n"
        "from pnderived.ext import ext_table\n"
        "def work():\n"
        "    for d in range(-6, 7):\n"
        "        ext_table(LineBundleComplex.single(3, 0), LineBundleComplex.single(3, d))\n"
    ),
    "Hom complex of Koszul resolutions, P^3": (
        "from pnderived.complex import twist\n"
        "from pnderived.hom import hom_cohomology_dims\n"
        "from pnderived.window import omega_resolution\n"
        "def work():\n"
        "    for i in range(4):\n"
        "        hom_cohomology_dims(omega_resolution(3, i), twist(omega_resolution(3, 2), 4))\n"
    ),
}


def _end_to_end(setup: str, pure: bool) -> float:
    env = dict(os.environ)
    if pure:
        env["PNDERIVED_PURE_PYTHON"] = "1"
    else:
        env.pop("PNDERIVED_PURE_PYTHON", None)
    code = setup + "import time\nt0 = time.perf_counter()\nwork()\nprint(time.perf_counter() - t0)\n"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    return float(out.stdout.strip())


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    if _kernels is None:
        print("compiled kernels are not built; run `python setup.py build_ext --inplace`")
        return 1
    rng = random.Random(args.seed)
    cases = {
        "rank_int, Hom differentials (P^3)": ("rank_int", [(m,) for m in _hom_matrices()]),
        "rank_int, random 60x60 sparse": ("rank_int", [(_matrix(rng, 60, 60, 0.15, 3),) for _ in range(5)]),
        "rank_mod_p, random 120x120": ("rank_mod_p", [(_matrix(rng, 120, 120, 0.5, 50), 32003) for _ in range(3)]),
        "rref_frac, random 40x50": ("rref_frac", [(_matrix(rng, 40, 50, 0.2, 3),) for _ in range(3)]),
    }
    print(f"{'kernel':40s} {'python (s)':>11s} {'cython (s)':>11s} {'speedup':>8s}")
    for label, (name, data) in cases.items():
        tp = _time(getattr(_kernels_py, name), data, args.repeat)
        tc = _time(getattr(_kernels, name), data, args.repeat)
        print(f"{label:40s} {tp:11.4f} {tc:11.4f} {tp / tc:7.1f}x")
    for label, setup in _WORKLOADS.items():
        tp = _end_to_end(setup, True)
        tc = _end_to_end(setup, False)
        print(f"{label:40s} {tp:11.4f} {tc:11.4f} {tp / tc:7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
