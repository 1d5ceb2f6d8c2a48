"""Graded dimensions of the truncated enveloping algebras U t_n.

    python3 scripts/braid_dims.py --max-n 5 --max-degree 3
"""
import argparse
import time

from moulds.braid import BraidAlgebra

ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
ap.add_argument("--max-n", type=int, default=5)
ap.add_argument("--max-degree", type=int, default=3)
args = ap.parse_args()

for n in range(3, args.max_n + 1):
    t0 = time.perf_counter()
    A = BraidAlgebra(n, args.max_degree)
    dims = [A.dim(d) for d in range(args.max_degree + 1)]
    print(f"U t_{n}: {dims}  ({time.perf_counter() - t0:.2f}s)")
