"""Critical driver strength over instance families and random-path success rates.

For an instance the critical coefficient ``gamma_4c`` is the cusp of the
``gamma_4`` family that terminates the first-order line crossed by the
undriven path. It is zero when the undriven path does not tunnel. Paths
with ``|gamma_4| > |gamma_4c|`` on the right side avoid the barrier.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import asdict, dataclass
from typing import Literal, Optional, Sequence

import numpy as np

from .driver import DriverMatrix, gammas_from_entries, sample_A_batch
from .problem import HwpInstance, betas_from_p
from .semiclassical import JUMP_TOL, _newton_batch, solve_a3
from .spectral import min_gap_scaling

Domain = Literal["positive", "symmetric"]
TAU_SCAN_MAX = 0.99


@dataclass(frozen=True)
class PhasePoint:
    p: tuple[float, float, float, float]
    gamma_4c: float
    tau_c: float
    solved: bool


# --------------------------------------------------------------------------
# vectorised potential for many instances at once

def _u_batch(beta, tau, gamma4, q):
    """``U`` for broadcast arrays; ``beta`` has a trailing axis of length 4."""
    w = np.sqrt(np.clip(1 - q * q, 0.0, None))
    b0, b1, b2, b3 = (beta[..., k] for k in range(4))
    gp = ((b3 * q + b2) * q + b1) * q + b0
    return (1 - tau) * 2 * (1 - w) + tau * (1 - tau) * gamma4 * w * q + tau * gp


def tunnels_batch(betas: np.ndarray, gamma4: float = 0.0, n_tau: int = 100,
                  n_q: int = 401, tau_max: float = TAU_SCAN_MAX, chunk: int = 2000) -> np.ndarray:
    """Whether the global minimiser jumps between separated wells.

    A jump counts when ``q*`` moves by more than the jump threshold between
    adjacent schedule points and the potential at the earlier point has a
    barrier between the two locations.
    """
    betas = np.atleast_2d(np.asarray(betas, dtype=float))
    taus = np.linspace(0.0, tau_max, n_tau)
    qs = np.linspace(-1.0, 1.0, n_q)
    out = np.zeros(len(betas), dtype=bool)
    for s in range(0, len(betas), chunk):
        b = betas[s:s + chunk, None, None, :]
        u = _u_batch(b, taus[None, :, None], gamma4, qs[None, None, :])
        imin = np.argmin(u, axis=2)
        jump = np.abs(np.diff(qs[imin], axis=1)) > JUMP_TOL
        hit = np.zeros(b.shape[0], dtype=bool)
        for i, t in zip(*np.nonzero(jump)):
            if hit[i]:
                continue
            a, c = sorted((imin[i, t], imin[i, t + 1]))
            seg = u[i, t, a:c + 1]
            hit[i] = seg.max() > max(seg[0], seg[-1]) + 1e-12
        out[s:s + chunk] = hit
    return out


def _a3_batch(betas: np.ndarray, seeds: int = 12):
    """Cusp roots for many instances: arrays ``(N, S)`` of tau, q, gamma, residual."""
    tt, qq = np.meshgrid(np.linspace(0.03, 0.97, seeds), np.linspace(-0.97, 0.97, seeds), indexing="ij")
    tau0 = np.broadcast_to(tt.ravel(), (len(betas), tt.size))
    q0 = np.broadcast_to(qq.ravel(), (len(betas), qq.size))
    beta_cols = tuple(np.broadcast_to(betas[:, k:k + 1], tau0.shape) for k in range(4))
    return _newton_batch(beta_cols, tau0, q0, "exact")


def critical_gamma_batch(betas: np.ndarray, seeds: int = 12, n_q: int = 801,
                         chunk: int = 200, check_tunnel: bool = True):
    """``(gamma_4c, tau_c, solved)`` for each row of ``betas``.

    Cusps must be global minima of the potential; among those the smallest
    ``|gamma|`` wins. Instances whose undriven path does not tunnel get zero.
    """
    betas = np.atleast_2d(np.asarray(betas, dtype=float))
    N = len(betas)
    gam = np.zeros(N)
    tauc = np.full(N, np.nan)
    solved = np.ones(N, dtype=bool)
    need = tunnels_batch(betas) if check_tunnel else np.ones(N, dtype=bool)
    idx_all = np.nonzero(need)[0]
    qs = np.linspace(-1, 1, n_q)
    for s in range(0, len(idx_all), chunk):
        idx = idx_all[s:s + chunk]
        b = betas[idx]
        tau, q, g, res = _a3_batch(b, seeds)
        ok = (res < 1e-10) & (tau > 1e-6) & (tau < 1 - 1e-6) & np.isfinite(g) & (np.abs(q) < 1 - 1e-9)
        # global-minimum filter on every candidate root
        ucand = _u_batch(b[:, None, :], tau, g, q)
        ugrid = _u_batch(b[:, None, None, :], tau[..., None], g[..., None], qs)
        ok &= ucand <= ugrid.min(axis=-1) + 1e-9
        absg = np.where(ok, np.abs(g), np.inf)
        k = np.argmin(absg, axis=1)
        rows = np.arange(len(idx))
        found = np.isfinite(absg[rows, k])
        gam[idx] = np.where(found, g[rows, k], np.nan)
        tauc[idx] = np.where(found, tau[rows, k], np.nan)
        solved[idx] = found
    return gam, tauc, solved


def instance_critical(inst: HwpInstance, check_tunnel: bool = True) -> PhasePoint:
    """Critical ``gamma_4`` of one instance from the full multistart solver."""
    if check_tunnel and not tunnels_batch(inst.beta[None, :])[0]:
        return PhasePoint(inst.p, 0.0, float("nan"), True)
    sol = solve_a3(inst.beta)
    return PhasePoint(inst.p, sol.gamma_4c, sol.tau_c, sol.converged)


def p_grid(L: float, grid_per_axis: int, domain: Domain = "positive") -> np.ndarray:
    lo = 0.0 if domain == "positive" else -L
    axis = np.linspace(lo, L, grid_per_axis)
    return np.array(list(itertools.product(axis, repeat=4)))


def gamma_c_of_L(L: float, grid_per_axis: int = 21, domain: Domain = "positive",
                 seeds: int = 12, return_points: bool = False):
    """Largest ``|gamma_4c|`` over the weight cube; returns ``(gamma_c, argmax_p)``.

    Instances are deduplicated on ``(beta_1, beta_2, beta_3)``, which alone fix
    the dynamics.
    """
    if not L > 0:
        raise ValueError("L must be positive")
    if grid_per_axis < 5:
        raise ValueError("grid_per_axis must be at least 5")
    ps = p_grid(L, grid_per_axis, domain)
    betas = betas_from_p(ps)
    key = np.round(betas[:, 1:], 12)
    uniq, first, inverse = np.unique(key, axis=0, return_index=True, return_inverse=True)
    g, t, ok = critical_gamma_batch(betas[first], seeds=seeds)
    absg = np.where(ok, np.abs(g), -np.inf)
    j = int(np.argmax(absg))
    result = (float(absg[j]), tuple(float(v) for v in ps[first[j]]))
    if return_points:
        inv = np.ravel(inverse)
        pts = [PhasePoint(tuple(p), float(g[i]), float(t[i]), bool(ok[i])) for p, i in zip(ps, inv)]
        return result + (pts,)
    return result


# --------------------------------------------------------------------------
# success probability

@dataclass
class SuccessReport:
    L: float
    samples: int
    seed: int
    ensemble: str
    gamma_4c: float
    frac_mass_ok: float
    frac_gamma_ok: float
    frac_joint: float
    se_mass: float
    se_gamma: float
    se_joint: float
    analytic_estimate: float

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)


def mass_condition(gammas: np.ndarray) -> np.ndarray:
    """``|g2| + |g6| <= 1 + (|g1| + 3|g3| + |g4| + |g5|)/2`` row-wise."""
    g = np.abs(np.asarray(gammas))
    return g[..., 1] + g[..., 5] <= 1 + 0.5 * (g[..., 0] + 3 * g[..., 2] + g[..., 3] + g[..., 4])


def gamma_condition(gamma4: np.ndarray, gamma_4c: float, tie: float = 1e-9) -> np.ndarray:
    """Tunnelling avoidance on the side selected by the sign of ``gamma_4c``."""
    g4 = np.asarray(gamma4)
    if np.isneginf(gamma_4c) or np.isposinf(gamma_4c):
        return np.zeros(g4.shape, dtype=bool)
    if abs(gamma_4c) <= tie:
        return np.ones(g4.shape, dtype=bool)
    if gamma_4c < 0:
        return g4 <= -abs(gamma_4c)
    return g4 >= abs(gamma_4c)


def analytic_success(L: float, gamma_4c: float) -> float:
    """Independence product ``0.71875 * (4L - |gamma_4c|) / (8L)``."""
    mass = 1 - 15**2 / (50 * 16)
    return mass * (4 * L - abs(gamma_4c)) / (8 * L)


def interval_draws(L: float, samples: int, seed: int):
    """Independent-uniform model behind the analytic estimate.

    Returns ``(x, y, g4)`` with ``x = |g2|+|g6|`` on ``[0, 16L/3]``,
    ``y = |g1|+3|g3|+|g4|+|g5|`` on ``[0, 50L/3]`` and ``g4`` on ``[-4L, 4L]``,
    all independent. The ranges are the extreme values of these combinations
    for clause entries in ``[-L, L]``.
    """
    rng = np.random.default_rng(seed)
    x = rng.uniform(0, 16 * L / 3, samples)
    y = rng.uniform(0, 50 * L / 3, samples)
    g4 = rng.uniform(-4 * L, 4 * L, samples)
    return x, y, g4


def success_fraction(inst: HwpInstance, L: float, samples: int = 100_000, seed: int = 0,
                     ensemble: Literal["entries", "interval"] = "entries",
                     gamma_4c: Optional[float] = None) -> SuccessReport:
    """Monte-Carlo fractions of random paths passing the mass and barrier criteria.

    ``entries`` draws the 28 clause entries uniformly on ``[-L, L]`` and maps
    them to coefficients exactly; ``interval`` uses :func:`interval_draws`.
    """
    if samples < 1000:
        raise ValueError("need at least 1000 samples")
    if gamma_4c is None:
        gamma_4c = instance_critical(inst).gamma_4c
    if ensemble == "entries":
        g = gammas_from_entries(sample_A_batch(L, samples, seed))
        m = mass_condition(g)
        g4 = g[:, 3]
    elif ensemble == "interval":
        x, y, g4 = interval_draws(L, samples, seed)
        m = x <= 1 + 0.5 * y
    else:
        raise ValueError(f"unknown ensemble {ensemble!r}")
    k = gamma_condition(g4, gamma_4c)
    j = m & k

    def frac(v):
        f = float(v.mean())
        return f, float(np.sqrt(f * (1 - f) / samples))

    fm, sm = frac(m)
    fk, sk = frac(k)
    fj, sj = frac(j)
    return SuccessReport(float(L), samples, seed, ensemble, float(gamma_4c), fm, fk, fj, sm, sk, sj,
                         analytic_success(L, gamma_4c))


def verify_success_by_gap(inst: HwpInstance, L: float, samples: int = 200, n_list: Sequence[int] = (20, 30, 40, 50, 60),
                          seed: int = 0, grid: int = 101, jobs: int = 1) -> float:
    """Fraction of sampled drivers whose minimum gap scales polynomially."""
    if samples > 1000:
        raise ValueError("at most 1000 samples")
    if max(n_list) > 200:
        raise ValueError("n must stay at or below 200")
    entries = sample_A_batch(L, samples, seed)
    poly = 0
    for row in entries:
        try:
            fit = min_gap_scaling(inst, DriverMatrix(row), n_list, grid=grid, jobs=jobs)
        except ValueError:
            continue  # a gap closes exactly at some size: the path cannot stay in the ground state
        poly += fit.verdict == "power-law"
    return poly / samples
