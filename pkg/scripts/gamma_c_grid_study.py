"""Grid refinement of the critical driver strength gamma_c(L).

Prints gamma_c and its maximising instance for several grid densities, which
shows whether the maximum converges as the weight cube is refined.

Usage: python scripts/gamma_c_grid_study.py --L 3 --grids 5 11 21 [--domain positive]
"""

import argparse
import time

from qaaspin.phase_diagram import gamma_c_of_L


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--L", type=float, nargs="+", default=[3.0])
    ap.add_argument("--grids", type=int, nargs="+", default=[5, 11, 21])
    ap.add_argument("--domain", choices=("positive", "symmetric"), default="positive")
    args = ap.parse_args()
    print("L,grid,gamma_c,ratio_2L,arg_p0,arg_p1,arg_p2,arg_p3,seconds")
    for L in args.L:
        for k in args.grids:
            t0 = time.perf_counter()
            gc, arg = gamma_c_of_L(L, k, args.domain)
            dt = time.perf_counter() - t0
            print(f"{L},{k},{gc:.6g},{gc / (2 * L):.4f}," + ",".join(f"{v:.4g}" for v in arg) + f",{dt:.1f}",
                  flush=True)


if __name__ == "__main__":
    main()
