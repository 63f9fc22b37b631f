"""Time the enumeration kernels with and without numba.

    python benchmarks/bench_kernels.py [--vertices 8 10 12] [--method tables]

Each configuration runs in a fresh interpreter so the VFPOLY_DISABLE_NUMBA
switch takes effect; compile time is excluded by a warm-up on v=4.
"""

import argparse
import json
import os
import subprocess
import sys

CHILD = r"""
import json, sys, time
from vfpoly import _accel
from vfpoly.enumerate import search_vertex_faithful
method = sys.argv[1]
search_vertex_faithful(4, method=method)
out = []
for v in map(int, sys.argv[2:]):
    t = time.perf_counter()
    n = len(search_vertex_faithful(v, method=method))
    out.append({"backend": _accel.backend(), "method": method, "v": v, "records": n,
                "seconds": round(time.perf_counter() - t, 3)})
print(json.dumps(out))
"""


def run(method, vertices, disable):
    env = dict(os.environ, VFPOLY_DISABLE_NUMBA="1" if disable else "0")
    res = subprocess.run([sys.executable, "-c", CHILD, method, *map(str, vertices)],
                         env=env, capture_output=True, text=True, check=True)
    return json.loads(res.stdout)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--vertices", type=int, nargs="+", default=[6, 8, 9])
    ap.add_argument("--method", choices=("tables", "pairs"), default="tables")
    args = ap.parse_args()
    rows = run(args.method, args.vertices, False) + run(args.method, args.vertices, True)
    print(f"{'backend':<8} {'method':<7} {'v':>3} {'records':>7} {'seconds':>9}")
    for r in rows:
        print(f"{r['backend']:<8} {r['method']:<7} {r['v']:>3} {r['records']:>7} {r['seconds']:>9.3f}")


if __name__ == "__main__":
    main()
