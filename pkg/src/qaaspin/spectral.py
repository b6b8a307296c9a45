"""Instantaneous spectrum of H(tau) = (1-tau) H_B + tau (1-tau) H_E + tau H_P.

Energies are in units of ``l^3`` unless ``raw_units`` is requested, which keeps
profiles at different ``n`` on the same scale.
"""

from __future__ import annotations

import csv
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from .driver import DriverMatrix, GammaCoefficients, build_he_symmetric
from .problem import HwpInstance, build_hb, build_hp
from .spin_algebra import eigh, sym_poly

Driver = Union[None, GammaCoefficients, DriverMatrix]
DEFAULT_GRID = 201


def assemble_h(tau: float, hb: np.ndarray, he: Optional[np.ndarray], hp: np.ndarray) -> np.ndarray:
    if not 0 <= tau <= 1:
        raise ValueError("tau must lie in [0, 1]")
    if hb.shape != hp.shape or (he is not None and he.shape != hb.shape):
        raise ValueError("operator dimensions differ")
    h = (1 - tau) * hb + tau * hp
    if he is not None:
        h = h + tau * (1 - tau) * he
    return h


def build_ops(inst: HwpInstance, driver: Driver, n: int, hp_mode: str = "asymptotic",
              include_weight_preserving: bool = True):
    """``(hb, he, hp)`` in units of ``l^3``; ``he`` is None without a driver."""
    l3 = (n / 2) ** 3
    hb = build_hb(n) / l3
    hp = build_hp(n, inst, hp_mode) / l3
    if driver is None:
        he = None
    elif isinstance(driver, GammaCoefficients):
        he = sym_poly(n, driver.gamma) if any(driver.gamma) else None
    elif isinstance(driver, DriverMatrix):
        he = build_he_symmetric(driver, n, include_weight_preserving) / l3
    else:
        raise TypeError(f"unsupported driver {type(driver).__name__}")
    return hb, he, hp


@dataclass
class GapProfile:
    tau_grid: np.ndarray
    lambda0: np.ndarray
    lambda1: np.ndarray
    gap: np.ndarray
    min_gap: float
    tau_at_min: float
    hdot: np.ndarray
    hdot_max: float
    runtime_bound: float
    n: int
    units: str = "l^3"

    def summary(self) -> dict:
        return {
            "n": self.n,
            "min_gap": self.min_gap,
            "tau_at_min": self.tau_at_min,
            "hdot_max": self.hdot_max,
            "runtime_bound": self.runtime_bound,
            "units": self.units,
        }

    def write_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["tau", "lambda0", "lambda1", "gap"])
            for row in zip(self.tau_grid, self.lambda0, self.lambda1, self.gap):
                w.writerow([f"{v:.17g}" for v in row])

    def to_json(self) -> str:
        return json.dumps(self.summary(), sort_keys=True)


def golden_min(f, lo: float, hi: float, xtol: float = 1e-15, maxiter: int = 200):
    """Golden-section search; works on kink-shaped minima where Brent stalls.

    The tolerance is absolute because avoided crossings at large ``n`` are
    narrower than the relative floor of library minimisers.
    """
    inv = (np.sqrt(5.0) - 1) / 2
    a, b = lo, hi
    c = b - inv * (b - a)
    d = a + inv * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(maxiter):
        if b - a <= xtol:
            break
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - inv * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + inv * (b - a)
            fd = f(d)
    return (c, fc) if fc <= fd else (d, fd)


def _low_pair(h: np.ndarray):
    spec = eigh(h, want_vectors=True, n_lowest=2)
    return spec.eigenvalues, spec.eigenvectors


def profile_from_ops(hb, he, hp, grid: int = DEFAULT_GRID, jobs: int = 1, n: Optional[int] = None,
                     scale: float = 1.0) -> GapProfile:
    """Grid scan of the two lowest levels, then a bounded Brent refinement."""
    if grid < 2:
        raise ValueError("grid needs at least two points")
    taus = np.linspace(0.0, 1.0, grid)
    dh_base = hp - hb

    def point(t):
        vals, vecs = _low_pair(assemble_h(t, hb, he, hp))
        dh = dh_base if he is None else dh_base + (1 - 2 * t) * he
        return vals, abs(float(vecs[:, 1] @ dh @ vecs[:, 0]))

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(point, taus))
    else:
        results = [point(t) for t in taus]
    lam = np.array([r[0] for r in results])
    hdot = np.array([r[1] for r in results])
    gaps = lam[:, 1] - lam[:, 0]
    i = int(np.argmin(gaps))
    lo, hi = taus[max(i - 1, 0)], taus[min(i + 1, grid - 1)]
    gap_at = lambda t: float(np.diff(_low_pair(assemble_h(float(t), hb, he, hp))[0])[0])
    best_t, best_g = float(taus[i]), float(gaps[i])
    if hi > lo:
        t, g = golden_min(gap_at, lo, hi)
        if g < best_g:
            best_t, best_g = t, g
    best_g = max(best_g, 0.0)
    hdot_max = float(hdot.max()) * scale
    min_gap = best_g * scale
    runtime = hdot_max / min_gap**2 if min_gap > 0 else float("inf")
    return GapProfile(taus, lam[:, 0] * scale, lam[:, 1] * scale, np.maximum(gaps, 0.0) * scale,
                      min_gap, best_t, hdot * scale, hdot_max, runtime,
                      n if n is not None else hb.shape[0] - 1,
                      "raw" if scale != 1.0 else "l^3")


def gap_profile(inst: HwpInstance, driver: Driver, n: int, grid: int = DEFAULT_GRID,
                hp_mode: str = "asymptotic", include_weight_preserving: bool = True,
                raw_units: bool = False, jobs: int = 1) -> GapProfile:
    """Gap along the schedule for an instance and an optional driver."""
    if n < 3:
        raise ValueError("need n >= 3")
    if grid < 50:
        raise ValueError("grid must have at least 50 points")
    hb, he, hp = build_ops(inst, driver, n, hp_mode, include_weight_preserving)
    scale = (n / 2) ** 3 if raw_units else 1.0
    return profile_from_ops(hb, he, hp, grid, jobs, n, scale)


@dataclass
class ScalingFit:
    n_list: list[int]
    min_gaps: list[float]
    exp_fit: tuple[float, float]     # (a, b) in log gap = a - b n
    exp_residual: float
    power_fit: tuple[float, float]   # (a, b) in log gap = a - b log n
    power_residual: float
    verdict: str
    margin: float                    # ratio worse / better residual

    def to_json(self) -> str:
        d = dict(self.__dict__)
        return json.dumps(d)


def _linfit(x, y):
    design = np.column_stack([np.ones_like(x), -x])
    coef, *_ = np.linalg.lstsq(design, y, rcond=None)
    res = float(np.sum((design @ coef - y) ** 2))
    return (float(coef[0]), float(coef[1])), res


def fit_scaling(n_list: Sequence[int], min_gaps: Sequence[float]) -> ScalingFit:
    n = np.asarray(n_list, dtype=float)
    g = np.asarray(min_gaps, dtype=float)
    if n.size < 5:
        raise ValueError("scaling fits need at least five sizes")
    if np.any(g <= 0):
        raise ValueError("minimum gaps must be positive for a log fit")
    y = np.log(g)
    e, re = _linfit(n, y)
    p, rp = _linfit(np.log(n), y)
    verdict = "exponential" if re < rp else "power-law"
    better, worse = sorted((re, rp))
    margin = worse / better if better > 0 else float("inf")
    return ScalingFit([int(v) for v in n_list], [float(v) for v in g], e, re, p, rp, verdict, margin)


def min_gap_scaling(inst: HwpInstance, driver: Driver, n_list: Sequence[int],
                    grid: int = DEFAULT_GRID, jobs: int = 1, **kw) -> ScalingFit:
    n_list = list(n_list)
    if len(n_list) < 5 or min(n_list) < 20:
        raise ValueError("need at least five sizes, each >= 20")
    gaps = [gap_profile(inst, driver, n, grid, jobs=jobs, **kw).min_gap for n in n_list]
    return fit_scaling(n_list, gaps)


def ground_overlap(inst: HwpInstance, driver: Driver, n: int, tau: float,
                   hp_mode: str = "asymptotic", rel_tol: float = 1e-12) -> float:
    """Weight of the instantaneous ground state on the cost-minimising weights.

    Degenerate ground levels (ties at ``tau = 1``) are handled by projecting
    the whole degenerate subspace.
    """
    hb, he, hp = build_ops(inst, driver, n, hp_mode)
    h = assemble_h(tau, hb, he, hp)
    spec = eigh(h)
    vals, vecs = spec.eigenvalues, spec.eigenvectors
    scale = max(abs(vals).max(), 1.0)
    deg = vals <= vals[0] + rel_tol * scale
    cost = np.diag(hp)
    target = cost <= cost.min() + rel_tol * max(abs(cost).max(), 1.0)
    block = vecs[:, deg]
    proj = block[target, :]
    return float(np.sum(proj**2) / block.shape[1])
