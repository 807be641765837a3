"""Compare the compiled kernels against the pure-Python fallback.

Runs each kernel on identical inputs with both backends, checks that the
results agree, and prints median wall times.  End-to-end timings run the
library in a subprocess with CHOWLAB_PURE_PYTHON set or unset.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import os
import random
import statistics
import subprocess
import sys
import time

from chowlab import _core_py

try:
    from chowlab import _core_ext
except ImportError:
    _core_ext = None


def timed(fn, repeat):
    times = []
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return statistics.median(times), out


def poly_case(backend, rng):
    polys = [tuple(rng.randint(-50, 50) for _ in range(rng.randint(1, 12))) for _ in range(400)]

    def run():
        acc = ()
        for a, b in zip(polys, polys[1:]):
            acc = backend.poly_mul(a, b)
        return acc
    return run


def incidence_case(backend):
    from chowlab.matroid import boolean_matroid
    from chowlab.poset import characteristic, poset_of_flats, zeta

    P = poset_of_flats(boolean_matroid(6))
    a, b = characteristic(P).entries, zeta(P).entries
    return lambda: backend.inc_mul(P.triples, a, b)


def echelon_case(backend, rng):
    ncols = 220
    rows = []
    for _ in range(260):
        cols = sorted(rng.sample(range(ncols), 6))
        rows.append((cols, [rng.randint(-3, 3) or 1 for _ in cols]))

    def run():
        e = backend.Echelon(ncols)
        for cols, vals in rows:
            e.add_row(cols, vals)
        e.finalize()
        return e.rank, sorted(e.pivots())
    return run


END_TO_END = (
    "from chowlab.matroid import uniform_matroid, direct_sum\n"
    "from chowlab.chow import build_model\n"
    "from chowlab.maps import assemble_phi\n"
    "U = uniform_matroid(2, 4)\n"
    "build_model(direct_sum(U, U), 'augmented')\n"
    "assert assemble_phi(U, U, 'aug').is_isomorphism\n"
)


def end_to_end(pure, repeat):
    env = dict(os.environ)
    if pure:
        env["CHOWLAB_PURE_PYTHON"] = "1"
    else:
        env.pop("CHOWLAB_PURE_PYTHON", None)
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        subprocess.run([sys.executable, "-c", END_TO_END], check=True, env=env)
        times.append(time.perf_counter() - t0)
    return statistics.median(times)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if _core_ext is None:
        print("compiled extension not built; only the fallback is available")
        return 1
    print(f"{'kernel':<22}{'python (s)':>12}{'cython (s)':>12}{'speedup':>9}")
    for name, make in (("poly_mul", lambda b: poly_case(b, random.Random(1))),
                       ("inc_mul B6 lattice", incidence_case),
                       ("echelon 260x220", lambda b: echelon_case(b, random.Random(2)))):
        tp, rp = timed(make(_core_py), args.repeat)
        tc, rc = timed(make(_core_ext), args.repeat)
        if rp != rc:
            raise SystemExit(f"{name}: backends disagree")
        print(f"{name:<22}{tp:>12.4f}{tc:>12.4f}{tp / tc:>8.1f}x")
    tp, tc = end_to_end(True, 3), end_to_end(False, 3)
    print(f"{'aug U24+U24 end-to-end':<22}{tp:>12.4f}{tc:>12.4f}{tp / tc:>8.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
