"""Classical spin runs for random drivers that pass the joint acceptance criteria.

For each accepted (instance, driver) pair prints the classical minimiser of
the cost, the final n_z for several schedule lengths and whether the driven
effective model has any bifurcation.

Usage: python scripts/classical_paths.py --count 20 --T 800 3200
"""

import argparse

import numpy as np

from qaaspin.classical_spin import integrate_spin
from qaaspin.driver import gammas_from_A, sample_A
from qaaspin.phase_diagram import gamma_condition, instance_critical, mass_condition
from qaaspin.problem import HwpInstance
from qaaspin.semiclassical import EffectiveModel, detect_global_bifurcation, detect_local_bifurcation


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=20)
    ap.add_argument("--L", type=float, default=3.0)
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--T", type=float, nargs="+", default=[800.0, 3200.0])
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    qs = np.linspace(-1, 1, 20001)
    taus = np.linspace(0, 1, 401)
    print("k,p0,p1,p2,p3,gamma_4c,gamma_4,q_min,bifurcation," + ",".join(f"nz_T{t:g}" for t in args.T))
    found = k = 0
    while found < args.count:
        k += 1
        inst = HwpInstance(tuple(rng.uniform(0, args.L, 4)))
        g = gammas_from_A(sample_A(args.L, 5000 + k)).gamma
        crit = instance_critical(inst)
        if not (crit.solved and mass_condition(np.array(g)) and gamma_condition(g[3], crit.gamma_4c)):
            continue
        found += 1
        model = EffectiveModel(tuple(inst.beta), g)
        q_min = qs[np.argmin(model.G(1.0, np.sqrt(1 - qs**2), qs))]
        bif = bool(detect_global_bifurcation(model, taus) or detect_local_bifurcation(model, taus))
        nz = [integrate_spin(model, t, samples=801).final_nz for t in args.T]
        print(f"{k}," + ",".join(f"{v:.4f}" for v in inst.p) + f",{crit.gamma_4c:.4f},{g[3]:.4f},{q_min:.4f},{bif},"
              + ",".join(f"{v:.4f}" for v in nz), flush=True)


if __name__ == "__main__":
    main()
