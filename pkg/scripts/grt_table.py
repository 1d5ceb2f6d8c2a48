"""Solve the linearised pentagon degree by degree and test each solution
against the DMR and balancing conditions.

    python3 scripts/grt_table.py --degree 4
"""
import argparse

from moulds.bal import solve_balancing_constant
from moulds.braid import commutator_psi_c, grt_solve
from moulds.ncseries import NCSeries, iota0, is_dmr, is_dmr0, ma

ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
ap.add_argument("--degree", type=int, default=4)
args = ap.parse_args()

for d in range(1, args.degree + 1):
    sol = grt_solve(d)
    print(f"degree {d}: dimension {sol.dim}")
    for sigma in sol.kernel:
        phi = NCSeries.one(sigma.gamma, d) + sigma
        r = solve_balancing_constant(ma(phi))
        print(f"  sigma = {sigma}")
        print(f"  iota0 in DMR: {is_dmr(iota0(phi))}, in DMR0: {is_dmr0(iota0(phi))}")
        print(f"  balanced: {r.ok}, C = ma([psi, c]): {r.ok and r.C == ma(commutator_psi_c(phi))}")
