"""Classical precession of the large spin along the annealing schedule.

The unit vector ``n`` obeys ``dn/dt = omega x n`` with the field
``omega = (dG/dn_x, 0, dG/dn_z)`` and ``tau = t / T``. The ground direction
is anti-parallel to the field (``n = (1, 0, 0)`` while ``omega(0) = (-2, 0, 0)``),
so alignment is measured against ``sign(J0) * omega / |omega|``.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from .semiclassical import EffectiveModel, minimize_u


class StiffnessError(RuntimeError):
    pass


def omega_field(model: EffectiveModel, tau: float, n) -> np.ndarray:
    nx, _, nz = n
    return np.array([float(model.G_x(tau, nx, nz)), 0.0, float(model.G_z(tau, nx, nz))])


@dataclass
class SpinTrajectory:
    t: np.ndarray
    tau: np.ndarray
    n: np.ndarray            # (samples, 3)
    omega: np.ndarray        # (samples, 3)
    misalignment: np.ndarray  # window-averaged angle to the followed field direction
    max_norm_drift: float
    max_misalignment: float
    final_nz: float
    J: np.ndarray
    T_scaled: float

    @property
    def J_drift(self) -> float:
        return float(np.abs(self.J - self.J[0]).max())

    def summary(self) -> dict:
        return {
            "final_nz": self.final_nz,
            "max_norm_drift": self.max_norm_drift,
            "max_misalignment": self.max_misalignment,
            "J_drift": self.J_drift,
            "T_scaled": self.T_scaled,
        }

    def write_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["t", "tau", "nx", "ny", "nz", "misalignment"])
            for t, tau, n, a in zip(self.t, self.tau, self.n, self.misalignment):
                w.writerow([f"{v:.17g}" for v in (t, tau, *n, a)])

    def to_json(self) -> str:
        return json.dumps(self.summary(), sort_keys=True)


def _window_average(t, x, omega_mag, periods=3.0):
    """Trailing average of ``x`` over ``periods`` precession periods."""
    out = np.empty_like(x)
    csum = np.concatenate([[0.0], np.cumsum(0.5 * (x[1:] + x[:-1]) * np.diff(t))])
    for i in range(len(t)):
        win = periods * 2 * np.pi / max(omega_mag[i], 1e-12)
        j = int(np.searchsorted(t, t[i] - win))
        if j >= i:
            out[i] = x[i]
        else:
            out[i] = (csum[i] - csum[j]) / (t[i] - t[j])
    return out


def integrate_spin(model: EffectiveModel, T_scaled: float, rtol: float = 1e-10, atol: float = 1e-12,
                   samples: int = 4001, frozen_tau: float | None = None,
                   n0=(1.0, 0.0, 0.0)) -> SpinTrajectory:
    """Integrate the precession from ``n0`` over ``t in [0, T_scaled]``.

    With ``frozen_tau`` the field is held at that schedule point (pure precession).
    """
    if not T_scaled > 0:
        raise ValueError("T_scaled must be positive")

    def tau_of(t):
        return frozen_tau if frozen_tau is not None else min(t / T_scaled, 1.0)

    def rhs(t, y):
        w = omega_field(model, tau_of(t), y)
        return np.cross(w, y)

    t_eval = np.linspace(0.0, T_scaled, samples)
    sol = solve_ivp(rhs, (0.0, T_scaled), np.asarray(n0, float), method="DOP853",
                    rtol=rtol, atol=atol, t_eval=t_eval)
    if sol.status != 0:
        raise StiffnessError(f"spin integration failed: {sol.message}")
    n = sol.y.T
    taus = np.array([tau_of(t) for t in sol.t])
    om = np.array([omega_field(model, tu, v) for tu, v in zip(taus, n)])
    mag = np.linalg.norm(om, axis=1)
    with np.errstate(invalid="ignore", divide="ignore"):
        J = np.einsum("ij,ij->i", om, n) / mag
    J = np.where(mag > 0, J, np.nan)
    sign = -1.0 if J[0] < 0 else 1.0
    cosang = np.clip(sign * J, -1.0, 1.0)
    ang = np.arccos(cosang)
    ang = np.where(np.isfinite(ang), ang, 0.0)
    mis = _window_average(sol.t, ang, mag)
    drift = float(np.abs(np.einsum("ij,ij->i", n, n) - 1.0).max())
    return SpinTrajectory(sol.t, taus, n, om, mis, drift, float(mis.max()), float(n[-1, 2]),
                          J, float(T_scaled))


def adiabatic_diagnostics(traj: SpinTrajectory, tau_max: float = 1.0):
    """``(max window-averaged misalignment, drift of J)`` up to ``tau_max``.

    The field vanishes at the end of the schedule for interior minimisers, so
    callers may cut the last stretch of the schedule where ``J`` is undefined.
    """
    keep = traj.tau <= tau_max
    J = traj.J[keep]
    J = J[np.isfinite(J)]
    return float(traj.misalignment[keep].max()), float(np.abs(J - J[0]).max()) if J.size else 0.0


def global_misalignment(model: EffectiveModel, traj: SpinTrajectory, stride: int = 10):
    """``(tau, angle)`` between ``n`` and the direction of the global minimum of ``U``.

    A trapped spin keeps following its local field, so the field angle stays
    small; this angle exposes the trap by comparing against the true ground
    direction ``(sqrt(1 - q*^2), 0, q*)``.
    """
    idx = np.arange(0, len(traj.t), max(int(stride), 1))
    ang = np.empty(idx.size)
    for k, i in enumerate(idx):
        q = minimize_u(model, float(traj.tau[i])).q_star
        target = np.array([np.sqrt(max(1 - q * q, 0.0)), 0.0, q])
        ang[k] = np.arccos(np.clip(traj.n[i] @ target, -1.0, 1.0))
    return traj.tau[idx], ang
