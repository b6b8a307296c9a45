"""Command-line front end: seeded runs that write CSV data and JSON summaries.

Every run writes ``manifest.json`` with the fully resolved configuration, so
``qaaspin <command> --config <out>/manifest.json`` repeats it.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Optional

import numpy as np

from . import __version__
from .classical_spin import StiffnessError, integrate_spin
from .driver import DriverMatrix, GammaCoefficients, build_he_dense, build_he_symmetric, sample_A
from .phase_diagram import gamma_c_of_L, instance_critical, success_fraction, verify_success_by_gap
from .problem import HwpInstance
from .semiclassical import (EffectiveModel, detect_global_bifurcation, detect_local_bifurcation,
                            solve_a3, solve_bifurcation_1, u_eval)
from .spectral import gap_profile, min_gap_scaling
from .spin_algebra import EigenSolverError

COMMANDS = ("spectrum", "scaling", "potential", "bifurcation", "phase-diagram", "ensemble", "classical", "validate")
EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC = 0, 2, 3


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    p: list = field(default_factory=lambda: [0.0, 3.0, 1.0, 1.0])
    gamma: Optional[list] = None
    gamma4: Optional[float] = None
    A_file: Optional[str] = None
    L: Optional[float] = None
    L_list: Optional[list] = None
    samples: Optional[int] = None
    n: int = 60
    n_list: Optional[list] = None
    grid: int = 201
    seed: int = 0
    out: Optional[str] = None
    jobs: int = 1
    T_scaled: float = 400.0
    grid_per_axis: int = 21
    domain: str = "positive"
    potential: str = "exact"
    ensemble_model: str = "entries"
    hp_mode: str = "asymptotic"
    verify_gap: bool = False

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "RunConfig":
        known = {f.name for f in fields(cls)}
        for k in d:
            if k not in known:
                raise ConfigError(f"unknown config key: {k}")
        if "command" not in d:
            raise ConfigError("missing config key: command")
        return cls(**d)


def _floats(text, count=None, name="value"):
    try:
        vals = [float(v) for v in str(text).split(",") if v.strip()]
    except ValueError:
        raise ConfigError(f"{name}: expected comma-separated numbers, got {text!r}")
    if count is not None and len(vals) != count:
        raise ConfigError(f"{name}: expected {count} numbers, got {len(vals)}")
    return vals


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qaaspin", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", metavar="command")
    sub.required = True
    S = argparse.SUPPRESS
    for name in COMMANDS:
        sp = sub.add_parser(name, argument_default=S)
        sp.add_argument("--config", help="JSON config file (flags override it)")
        sp.add_argument("--p", help="clause weights p0,p1,p2,p3")
        sp.add_argument("--gamma", help="six driver coefficients")
        sp.add_argument("--gamma4", type=float)
        sp.add_argument("--A-file", dest="A_file", help="JSON clause matrix {'entries': [28]}")
        sp.add_argument("--L", type=float)
        sp.add_argument("--L-list", dest="L_list")
        sp.add_argument("--samples", type=int)
        sp.add_argument("--n", type=int)
        sp.add_argument("--n-list", dest="n_list")
        sp.add_argument("--grid", type=int)
        sp.add_argument("--seed", type=int)
        sp.add_argument("--out")
        sp.add_argument("--jobs", type=int)
        sp.add_argument("--T-scaled", dest="T_scaled", type=float)
        sp.add_argument("--grid-per-axis", dest="grid_per_axis", type=int)
        sp.add_argument("--domain", choices=("positive", "symmetric"))
        sp.add_argument("--potential", choices=("exact", "quartic", "flipped"))
        sp.add_argument("--ensemble-model", dest="ensemble_model", choices=("entries", "interval"))
        sp.add_argument("--hp-mode", dest="hp_mode", choices=("asymptotic", "exact"))
        sp.add_argument("--verify-gap", dest="verify_gap", action="store_true")
    return ap


def parse_config(argv) -> RunConfig:
    """Flags over an optional JSON file; raises ``ConfigError`` on bad input."""
    ns = vars(_parser().parse_args(argv))
    merged: dict = {}
    cfg_path = ns.pop("config", None)
    if cfg_path:
        try:
            merged.update(json.loads(Path(cfg_path).read_text()))
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {cfg_path}: {exc}")
        if merged.get("command", ns["command"]) != ns["command"]:
            raise ConfigError(f"config file is for command {merged['command']!r}")
    for k, v in ns.items():
        if k == "p":
            v = _floats(v, 4, "p")
        elif k == "gamma":
            v = _floats(v, 6, "gamma")
        elif k in ("n_list", "L_list"):
            v = [int(x) if k == "n_list" else x for x in _floats(v, None, k)]
        merged[k] = v
    cfg = RunConfig.from_dict(merged)
    _validate(cfg)
    return cfg


def _validate(cfg: RunConfig) -> None:
    drivers = [k for k in ("gamma", "gamma4", "A_file") if getattr(cfg, k) is not None]
    if len(drivers) > 1:
        raise ConfigError(f"exactly one driver spec allowed, got {', '.join(drivers)}")
    if cfg.command == "ensemble" and drivers:
        raise ConfigError(f"ensemble runs sample their own drivers; remove {drivers[0]}")
    if cfg.p is None or len(cfg.p) != 4:
        raise ConfigError("p: need four clause weights")
    if cfg.gamma is not None and len(cfg.gamma) != 6:
        raise ConfigError("gamma: need six coefficients")
    if cfg.n < 3:
        raise ConfigError("n: must be at least 3")
    if cfg.jobs < 1:
        raise ConfigError("jobs: must be positive")
    if cfg.command in ("ensemble",) and cfg.L is None:
        raise ConfigError("L: required for ensemble runs")


def _driver(cfg: RunConfig):
    if cfg.gamma is not None:
        return GammaCoefficients(tuple(cfg.gamma))
    if cfg.gamma4 is not None:
        return GammaCoefficients.only_gamma4(cfg.gamma4)
    if cfg.A_file is not None:
        try:
            return DriverMatrix.from_json(Path(cfg.A_file).read_text())
        except (OSError, ValueError, KeyError) as exc:
            raise ConfigError(f"A_file: {exc}")
    return None


def _gammas(cfg: RunConfig):
    from .driver import gammas_from_A

    d = _driver(cfg)
    if isinstance(d, DriverMatrix):
        return gammas_from_A(d)
    return d if d is not None else GammaCoefficients((0.0,) * 6)


def _write_json(path: Path, obj) -> None:
    path.write_text(json.dumps(obj, sort_keys=True, indent=2, allow_nan=True) + "\n")


def _write_csv(path: Path, header, rows) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow([f"{v:.17g}" if isinstance(v, (float, np.floating)) else v for v in r])


# --------------------------------------------------------------------------
# commands

def _cmd_spectrum(cfg, out):
    inst = HwpInstance(tuple(cfg.p))
    prof = gap_profile(inst, _driver(cfg), cfg.n, cfg.grid, hp_mode=cfg.hp_mode, jobs=cfg.jobs)
    prof.write_csv(out / "profile.csv")
    return prof.summary()


def _cmd_scaling(cfg, out):
    inst = HwpInstance(tuple(cfg.p))
    ns = cfg.n_list or [20, 30, 40, 50, 60, 70, 80]
    fit = min_gap_scaling(inst, _driver(cfg), ns, cfg.grid, jobs=cfg.jobs, hp_mode=cfg.hp_mode)
    _write_csv(out / "scaling.csv", ["n", "min_gap"], zip(fit.n_list, fit.min_gaps))
    return json.loads(fit.to_json())


def _cmd_potential(cfg, out):
    model = EffectiveModel.from_instance(HwpInstance(tuple(cfg.p)), _gammas(cfg))
    taus = np.linspace(0, 1, cfg.grid)
    qs = np.linspace(-1, 1, 201)
    rows = [(float(t), float(q), float(u_eval(model, t, q))) for t in taus for q in qs]
    _write_csv(out / "potential.csv", ["tau", "q", "U"], rows)
    return {"tau_points": len(taus), "q_points": len(qs)}


def _cmd_bifurcation(cfg, out):
    inst = HwpInstance(tuple(cfg.p))
    sol = solve_a3(inst.beta, cfg.potential)
    model = EffectiveModel.from_instance(inst, _gammas(cfg))
    taus = np.linspace(0, 1, cfg.grid)
    glob = detect_global_bifurcation(model, taus)
    loc = detect_local_bifurcation(model, taus)
    closed = solve_bifurcation_1(inst.beta)
    res = json.loads(sol.to_json())
    res["closed_form"] = None if closed is None else {"tau_c": closed[0], "gamma_4c": closed[1]}
    res["global_bifurcations"] = [asdict(g) for g in glob]
    res["local_bifurcations"] = [asdict(b) for b in loc]
    _write_json(out / "bifurcation.json", res)
    return res


def _cmd_phase(cfg, out):
    Ls = cfg.L_list or ([cfg.L] if cfg.L is not None else [3.0])
    rows = []
    for L in Ls:
        gc, arg = gamma_c_of_L(L, cfg.grid_per_axis, cfg.domain)
        rows.append((float(L), gc, *arg))
    _write_csv(out / "phase_curve.csv", ["L", "gamma_c", "arg_p0", "arg_p1", "arg_p2", "arg_p3"], rows)
    return {"L": [r[0] for r in rows], "gamma_c": [r[1] for r in rows]}


def _cmd_ensemble(cfg, out):
    inst = HwpInstance(tuple(cfg.p))
    crit = instance_critical(inst)
    rep = success_fraction(inst, cfg.L, cfg.samples or 100_000, cfg.seed, cfg.ensemble_model, crit.gamma_4c)
    res = json.loads(rep.to_json())
    if cfg.verify_gap:
        ns = cfg.n_list or [20, 30, 40, 50, 60]
        res["gap_verified_fraction"] = verify_success_by_gap(inst, cfg.L, min(cfg.samples or 200, 1000), ns,
                                                             cfg.seed, jobs=cfg.jobs)
    _write_json(out / "success.json", res)
    return res


def _cmd_classical(cfg, out):
    model = EffectiveModel.from_instance(HwpInstance(tuple(cfg.p)), _gammas(cfg))
    traj = integrate_spin(model, cfg.T_scaled)
    traj.write_csv(out / "trajectory.csv")
    return traj.summary()


def _cmd_validate(cfg, out):
    samples = cfg.samples or 20
    worst = 0.0
    for k in range(samples):
        A = sample_A(cfg.L or 3.0, cfg.seed + k)
        d = build_he_dense(A, cfg.n)
        c = build_he_symmetric(A, cfg.n)
        worst = max(worst, float(np.abs(d - c).max()))
    res = {"n": cfg.n, "samples": samples, "max_deviation": worst, "tolerance": 1e-10, "passed": worst <= 1e-10}
    _write_json(out / "validate.json", res)
    if not res["passed"]:
        raise FloatingPointError(f"oracle deviation {worst:.3e} above 1e-10")
    return res


HANDLERS = {
    "spectrum": _cmd_spectrum,
    "scaling": _cmd_scaling,
    "potential": _cmd_potential,
    "bifurcation": _cmd_bifurcation,
    "phase-diagram": _cmd_phase,
    "ensemble": _cmd_ensemble,
    "classical": _cmd_classical,
    "validate": _cmd_validate,
}


def run(cfg: RunConfig) -> int:
    out = Path(cfg.out or f"out/{cfg.command}")
    out.mkdir(parents=True, exist_ok=True)
    _write_json(out / "manifest.json", cfg.to_dict())
    try:
        summary = HANDLERS[cfg.command](cfg, out)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (EigenSolverError, StiffnessError, FloatingPointError, ArithmeticError) as exc:
        _write_json(out / "error.json", {"error": type(exc).__name__, "message": str(exc)})
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    _write_json(out / "summary.json", {"seed": cfg.seed, **summary})
    print(json.dumps({"seed": cfg.seed, **summary}, sort_keys=True, default=str))
    return EXIT_OK


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        cfg = parse_config(argv)
    except SystemExit as exc:  # argparse usage errors
        return int(exc.code) if isinstance(exc.code, int) else EXIT_CONFIG
    except (ConfigError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return run(cfg)
