"""Pointer-mean convergence toward the weak value as the coupling shrinks.

Prints, for each case, g, mean/g, Re(A_w) and the error, plus the closed-form
three-box P_C curve for comparison.

    python scripts/weak_convergence.py --halvings 6 --width 1.0
"""
import argparse
import math

import numpy as np

from tsvf_lab import scenarios
from tsvf_lab.hilbert import SIGMA_Z, UP, UP_X
from tsvf_lab.tsvf import TwoStateVector, weak_value
from tsvf_lab.weakpointer import PointerModel, pointer_distribution, pointer_mean


def cases():
    tsv = scenarios.three_box_tsv()
    yield "three boxes, P_C", tsv, scenarios.box_projector("C")
    yield "three boxes, P_A", tsv, scenarios.box_projector("A")
    yield "up_z -> up_x, sigma_z", TwoStateVector(UP, UP_X), SIGMA_Z


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--g0", type=float, default=1.0, help="largest coupling, in units of width")
    ap.add_argument("--halvings", type=int, default=6)
    ap.add_argument("--width", type=float, default=1.0)
    args = ap.parse_args()

    couplings = args.g0 * args.width * 0.5 ** np.arange(args.halvings + 1)
    for name, tsv, obs in cases():
        target = weak_value(tsv, obs).real
        print(f"\n{name}: Re(A_w) = {target:+.6f}")
        print(f"{'g':>10} {'mean/g':>12} {'error':>12}")
        for g in couplings:
            m = pointer_mean(pointer_distribution(tsv, obs, PointerModel(g, args.width))) / g
            print(f"{g:10.5f} {m:12.6f} {abs(m - target):12.2e}")

    print("\nthree boxes, P_C closed form (1 - 2e^-x)/(5 - 4e^-x), x = g^2/(8 width^2)")
    for g in couplings:
        e = math.exp(-g * g / (8 * args.width ** 2))
        print(f"{g:10.5f} {(1 - 2 * e) / (5 - 4 * e):12.6f}")


if __name__ == "__main__":
    main()
