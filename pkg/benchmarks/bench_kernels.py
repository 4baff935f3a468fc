"""Compare the compiled and pure-Python kernel backends.

Usage: python3 benchmarks/bench_kernels.py [--repeat N]

Part 1 times each kernel on identical inputs through both modules.
Part 2 runs one verification suite end to end in a subprocess per backend
(GHILB_PURE_PYTHON selects the fallback) and checks both reports agree.
"""
import argparse
import importlib
import os
import subprocess
import sys
import time

from ghilb import _kernels_py
from ghilb.divided import delta, gamma
from ghilb.rings import QQ, PolyRing
from ghilb.tensor import orbit_expand


def workloads():
    R = PolyRing(QQ, ["u", "v"])
    u, v = R.gens
    xs = [R.one + u + v * v, u * v + 2 * u**2, v**3 - u, u + v]
    d = delta(xs[:3], xs[1:])
    e = orbit_expand(d).terms
    f = (R.one + u + v) ** 6
    g = (u - v + 3) ** 6
    s1 = gamma(2, R.one + u + v + u * v).terms
    s2 = gamma(2, u * u + v + 2).terms
    return {
        "poly_mul_terms": (f.terms, g.terms),
        "tensor_mul_terms": (e, e),
        "shuffle_orbit_terms": (s1, s2),
        "multiset_permutations": ((0, 0, 1, 1, 2, 2, 3, 3),),
        "margin_tensors": ((3, 3, 3), ((2, 2, 2), (1, 2, 3), (3, 2, 1))),
    }


def best_of(fn, args, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def run_suite(pure):
    env = dict(os.environ)
    if pure:
        env["GHILB_PURE_PYTHON"] = "1"
    else:
        env.pop("GHILB_PURE_PYTHON", None)
    cmd = [sys.executable, "-m", "ghilb.cli", "verify", "thm3.6", "--seed", "1", "--trials", "13"]
    t0 = time.perf_counter()
    res = subprocess.run(cmd, capture_output=True, env=env, check=True)
    return time.perf_counter() - t0, res.stdout


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    try:
        cy = importlib.import_module("ghilb._kernels")
    except ImportError:
        print("compiled kernels not built; only the pure-Python backend is available")
        return 1
    print(f"{'kernel':24s} {'python':>10s} {'cython':>10s} {'speedup':>8s}")
    for name, inputs in workloads().items():
        tp, outp = best_of(getattr(_kernels_py, name), inputs, args.repeat)
        tc, outc = best_of(getattr(cy, name), inputs, args.repeat)
        same = list(map(tuple, outp)) == list(map(tuple, outc)) if isinstance(outp, list) else outp == outc
        flag = "" if same else "  OUTPUTS DIFFER"
        print(f"{name:24s} {tp * 1e3:9.2f}ms {tc * 1e3:9.2f}ms {tp / tc:7.1f}x{flag}")
    tp, rp = run_suite(pure=True)
    tc, rc = run_suite(pure=False)
    print(f"{'verify thm3.6 (13)':24s} {tp:9.2f}s  {tc:9.2f}s  {tp / tc:7.1f}x{'' if rp == rc else '  REPORTS DIFFER'}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
