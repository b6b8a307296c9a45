"""Minimum-gap scaling for the undriven and gamma_4 = -8 paths.

Usage: python scripts/scaling_study.py --p 0 3 1 1 --sizes 20 30 40 50 60 70 80 90 100
"""

import argparse

from qaaspin.driver import GammaCoefficients
from qaaspin.problem import HwpInstance
from qaaspin.spectral import min_gap_scaling


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p", type=float, nargs=4, default=[0.0, 3.0, 1.0, 1.0])
    ap.add_argument("--sizes", type=int, nargs="+", default=list(range(20, 101, 10)))
    ap.add_argument("--gamma4", type=float, default=-8.0)
    ap.add_argument("--grid", type=int, default=201)
    args = ap.parse_args()
    inst = HwpInstance(tuple(args.p))
    off = min_gap_scaling(inst, None, args.sizes, args.grid)
    on = min_gap_scaling(inst, GammaCoefficients.only_gamma4(args.gamma4), args.sizes, args.grid)
    print("n,min_gap_undriven,min_gap_driven")
    for n, a, b in zip(args.sizes, off.min_gaps, on.min_gaps):
        print(f"{n},{a:.17g},{b:.17g}")
    for name, fit in (("undriven", off), ("driven", on)):
        print(f"# {name}: {fit.verdict}, exp slope {fit.exp_fit[1]:.4g}, power exponent {fit.power_fit[1]:.4g}, "
              f"residual ratio {fit.margin:.3g}")


if __name__ == "__main__":
    main()
