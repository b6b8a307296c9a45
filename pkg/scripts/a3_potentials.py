"""Compare the cusp point of the gamma_4 family across potential forms.

``exact`` uses the square-root potential, ``quartic`` its expansion to fourth
order in q, ``flipped`` the quartic with the cubic transverse sign reversed; the
closed two-line formula is solved as well.

Usage: python scripts/a3_potentials.py --p 0 3 1 1
"""

import argparse
import json

import numpy as np

from qaaspin.problem import HwpInstance
from qaaspin.semiclassical import EffectiveModel, detect_global_bifurcation, solve_a3, solve_bifurcation_1


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p", type=float, nargs=4, default=[0.0, 3.0, 1.0, 1.0])
    args = ap.parse_args()
    inst = HwpInstance(tuple(args.p))
    out = {"p": list(inst.p), "beta": inst.beta.tolist()}
    for pot in ("exact", "quartic", "flipped"):
        sol = solve_a3(inst.beta, pot)
        out[pot] = {"tau_c": sol.tau_c, "gamma_4c": sol.gamma_4c, "x": sol.x, "converged": sol.converged}
    closed = solve_bifurcation_1(inst.beta)
    out["closed_form"] = None if closed is None else {"tau_c": closed[0], "gamma_4c": closed[1]}
    glob = detect_global_bifurcation(EffectiveModel.from_instance(inst), np.linspace(0, 1, 401))
    out["undriven_jump_tau"] = [g.tau0 for g in glob]
    print(json.dumps(out, indent=2))


if __name__ == "__main__":
    main()
