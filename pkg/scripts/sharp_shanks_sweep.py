"""Sweep the angle between the first two spin directions in the three-measurement chain.

For each theta_ab the correctly conditioned decomposition, the faulty one
(final probabilities taken as if no intermediate measurement happened) and
the Born value cos^2(theta_ab/2) are printed together with a Monte Carlo
estimate of the intermediate up frequency.
"""
import argparse
import math

import numpy as np

from tsvf_lab.measurement import MeasurementChain, simulate
from tsvf_lab.scenarios import sharp_shanks_assembly, sharp_shanks_setup
from tsvf_lab.tsvf import abl_general


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--theta-bc", type=float, default=math.pi / 4)
    ap.add_argument("--steps", type=int, default=9)
    ap.add_argument("--trials", type=int, default=50_000)
    ap.add_argument("--seed", type=int, default=42)
    args = ap.parse_args()

    print(f"theta_bc = {args.theta_bc:.4f}")
    print(f"{'theta_ab':>9} {'born':>9} {'assembled':>10} {'naive':>9} {'mc':>9}")
    for k, theta_ab in enumerate(np.linspace(0, math.pi, args.steps)):
        pre, m_mid, m_final = sharp_shanks_setup(theta_ab, args.theta_bc)
        born = math.cos(theta_ab / 2) ** 2
        assembled = sharp_shanks_assembly(theta_ab, args.theta_bc)
        # faulty version: final probabilities from the pre state alone
        p_f = {o.label: float(np.real(np.vdot(pre.amplitudes, o.projector @ pre.amplitudes))) for o in m_final.outcomes}
        naive = sum(p * abl_general(pre, m_mid, m_final.projector(f))["+1"] for f, p in p_f.items() if p > 1e-30)
        mc = simulate(MeasurementChain(pre, (m_mid, m_final)), args.trials, args.seed + k).frequencies(0)["+1"]
        print(f"{theta_ab:9.4f} {born:9.6f} {assembled:10.6f} {naive:9.6f} {mc:9.6f}")


if __name__ == "__main__":
    main()
