"""Values of psi, psi_red and c0 on a few labeled words, and the balance of minus(paj).

    python3 scripts/bal_demo.py --length 3
"""
import argparse

from moulds.bal import X, XY, Y, ZERO_LABEL, c0, is_well_balanced, labeled_word, psi, psi_red
from moulds.mould import minus, paj

ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
ap.add_argument("--length", type=int, default=3)
args = ap.parse_args()


def show(d):
    return {tuple(map(str, k)) if isinstance(k, tuple) else str(k): str(v) for k, v in d.items()}


for labels in ((Y, XY), (XY, Y), (XY, XY, Y)):
    w = labeled_word(labels)
    print(f"psi{labels}: {len(psi(w))} terms, psi_red: {show(psi_red(w))}")
print(f"c0(x, 0) = {show(c0(labeled_word((X, ZERO_LABEL))))}")
M = minus(paj(args.length))
print(f"minus(paj) up to length {args.length} well balanced: {is_well_balanced(M)}")
