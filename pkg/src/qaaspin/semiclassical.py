"""Large-spin effective model: potential, stationary points and bifurcations.

The classical energy on the unit sphere is

    G(tau, x, z) = (1 - tau) 2 (1 - x) + tau (1 - tau) G_E(x, z) + tau G_P(z)

with ``x = n_x``, ``z = n_z``. On the zero-momentum branch ``x = sqrt(1 - q^2)``
and ``z = q``, which gives the effective potential ``U(q, tau)``.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Literal, Optional, Sequence

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import brentq

from .problem import gp_deriv, gp_eval

MASS_TOL = 1e-8
JUMP_TOL = 0.05
SPINODAL_TOL = 1e-8
GRID_Q = 2001
POLE_TOL = 1e-9


@dataclass(frozen=True)
class EffectiveModel:
    beta: tuple[float, float, float, float]
    gamma: tuple[float, ...] = (0.0,) * 6

    def __post_init__(self):
        b = tuple(float(v) for v in self.beta)
        g = tuple(float(v) for v in self.gamma)
        if len(b) != 4 or len(g) != 6:
            raise ValueError("model needs four beta and six gamma coefficients")
        if not (np.all(np.isfinite(b)) and np.all(np.isfinite(g))):
            raise ValueError("model coefficients must be finite")
        object.__setattr__(self, "beta", b)
        object.__setattr__(self, "gamma", g)

    @classmethod
    def from_instance(cls, inst, gammas=None) -> "EffectiveModel":
        g = (0.0,) * 6 if gammas is None else tuple(getattr(gammas, "gamma", gammas))
        return cls(tuple(inst.beta), g)

    def reflected(self) -> "EffectiveModel":
        """Image under ``z -> -z`` (bit complement)."""
        b0, b1, b2, b3 = self.beta
        g1, g2, g3, g4, g5, g6 = self.gamma
        return EffectiveModel((b0, -b1, b2, -b3), (g1, g2, g3, -g4, g5, -g6))

    # --- G_E and its partial derivatives ---------------------------------
    def ge(self, x, z):
        g1, g2, g3, g4, g5, g6 = self.gamma
        return x * (g1 + g2 * x + g3 * x * x + g4 * z + g5 * z * z + g6 * x * z)

    def ge_x(self, x, z):
        g1, g2, g3, g4, g5, g6 = self.gamma
        return g1 + 2 * g2 * x + 3 * g3 * x * x + g4 * z + g5 * z * z + 2 * g6 * x * z

    def ge_z(self, x, z):
        g = self.gamma
        return x * (g[3] + 2 * g[4] * z + g[5] * x)

    def ge_xx(self, x, z):
        g = self.gamma
        return 2 * g[1] + 6 * g[2] * x + 2 * g[5] * z

    def ge_xz(self, x, z):
        g = self.gamma
        return g[3] + 2 * g[4] * z + 2 * g[5] * x

    def ge_zz(self, x, z):
        return 2 * self.gamma[4] * x

    # --- G and its partial derivatives -----------------------------------
    def G(self, tau, x, z):
        return (1 - tau) * 2 * (1 - x) + tau * (1 - tau) * self.ge(x, z) + tau * gp_eval(self.beta, z)

    def G_x(self, tau, x, z):
        return -2 * (1 - tau) + tau * (1 - tau) * self.ge_x(x, z)

    def G_z(self, tau, x, z):
        return tau * (1 - tau) * self.ge_z(x, z) + tau * gp_deriv(self.beta, z, 1)

    def G_xx(self, tau, x, z):
        return tau * (1 - tau) * self.ge_xx(x, z)

    def G_xz(self, tau, x, z):
        return tau * (1 - tau) * self.ge_xz(x, z)

    def G_zz(self, tau, x, z):
        return tau * (1 - tau) * self.ge_zz(x, z) + tau * gp_deriv(self.beta, z, 2)

    def G_xtau(self, tau, x, z):
        return 2 + (1 - 2 * tau) * self.ge_x(x, z)


def _chain(model: EffectiveModel, tau, q):
    q = np.asarray(q, dtype=float)
    x = np.sqrt(np.clip(1 - q * q, 0.0, None))
    return x, q


def u_eval(model: EffectiveModel, tau: float, q):
    """Effective potential ``G(tau, +sqrt(1-q^2), q)``."""
    x, z = _chain(model, tau, q)
    return model.G(tau, x, z)


@np.errstate(divide="ignore", invalid="ignore")
def u_derivs(model: EffectiveModel, tau: float, q):
    """``(U', U'')`` by the chain rule with ``dx/dq = -q/x``, ``d2x/dq2 = -1/x^3``."""
    x, z = _chain(model, tau, q)
    xp = -z / x
    xpp = -1.0 / x**3
    gx = model.G_x(tau, x, z)
    u1 = model.G_z(tau, x, z) + gx * xp
    u2 = (model.G_zz(tau, x, z) + 2 * model.G_xz(tau, x, z) * xp
          + model.G_xx(tau, x, z) * xp * xp + gx * xpp)
    return u1, u2


@np.errstate(divide="ignore", invalid="ignore")
def u_tau_q(model: EffectiveModel, tau: float, q):
    """Mixed derivative ``d^2 U / dq dtau``."""
    x, z = _chain(model, tau, q)
    xp = -z / x
    b = model
    ge_z = b.ge_z(x, z)
    ge_x = b.ge_x(x, z)
    return (1 - 2 * tau) * ge_z + gp_deriv(b.beta, z, 1) + (2 + (1 - 2 * tau) * ge_x) * xp


def hamiltonian_qp(model: EffectiveModel, tau: float, q, p):
    """Classical energy in canonical variables, ``G(tau, sqrt(1-q^2) cos p, q)``."""
    x, z = _chain(model, tau, q)
    return model.G(tau, x * np.cos(p), z)


# --------------------------------------------------------------------------
# minima

@dataclass(frozen=True)
class Minimum:
    q_star: float
    value: float
    secondary: Optional[tuple[float, float]] = None  # (q, U) of the best competing minimum


def _refine(model, tau, lo, hi):
    """Root of ``U'`` in ``[lo, hi]`` (assumed to bracket a sign change)."""
    f = lambda q: float(u_derivs(model, tau, q)[0])
    # U' is singular at the poles; probe just inside instead
    lo = max(lo, -1 + 1e-13)
    hi = min(hi, 1 - 1e-13)
    flo, fhi = f(lo), f(hi)
    if not (np.isfinite(flo) and np.isfinite(fhi)):
        return None
    if flo == 0:
        return lo
    if fhi == 0:
        return hi
    if flo * fhi > 0:
        return None
    return brentq(f, lo, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=200)


def _grid_minima(model, tau, grid):
    u = u_eval(model, tau, grid)
    pad = np.concatenate([[np.inf], u, [np.inf]])
    left, mid, right = pad[:-2], pad[1:-1], pad[2:]
    mask = ((mid <= left) & (mid < right)) | ((mid < left) & (mid <= right))
    return u, list(np.nonzero(mask)[0])


def _polish(model, tau, grid, i):
    m = len(grid)
    if i == 0 or i == m - 1:
        # endpoint: keep it unless an interior stationary point sits next to it
        j = 1 if i == 0 else m - 2
        q = _refine(model, tau, grid[min(i, j)], grid[max(i, j)]) if 0 < tau < 1 else None
        return float(grid[i]) if q is None else float(q)
    for lo, hi in ((grid[i - 1], grid[i + 1]), (grid[i - 1], grid[i]), (grid[i], grid[i + 1])):
        q = _refine(model, tau, lo, hi)
        if q is not None:
            return float(q)
    return float(grid[i])


def minimize_u(model: EffectiveModel, tau: float, grid_size: int = GRID_Q) -> Minimum:
    """Global minimiser of ``U(., tau)`` from a grid, polished to ``|U'| ~ 1e-10``."""
    if not 0 <= tau <= 1:
        raise ValueError("tau must lie in [0, 1]")
    grid = np.linspace(-1.0, 1.0, grid_size)
    u, idx = _grid_minima(model, tau, grid)
    cands = []
    for i in idx:
        q = _polish(model, tau, grid, i)
        cands.append((float(u_eval(model, tau, q)), q))
    cands.sort()
    val, q = cands[0]
    second = None
    others = [(v, qq) for v, qq in cands[1:] if abs(qq - q) > 2.0 / (grid_size - 1)]
    if others:
        second = (others[0][1], others[0][0])
    return Minimum(q_star=q, value=val, secondary=second)


@dataclass(frozen=True)
class StationaryPoint:
    q_star: float
    p_star: float
    kind: Literal["elliptic", "saddle"]
    omega_star_sq: float
    mass: float
    omega_x: float
    u2: float
    mass_singular: bool

    @property
    def omega_star(self) -> float:
        return float(np.sqrt(max(self.omega_star_sq, 0.0)))


def stationary_analysis(model: EffectiveModel, tau: float, q_star: Optional[float] = None) -> StationaryPoint:
    """Frequency, mass and branch at the global minimum of ``U``."""
    q = minimize_u(model, tau).q_star if q_star is None else float(q_star)
    x = np.sqrt(max(1 - q * q, 0.0))
    gx = float(model.G_x(tau, x, q))
    omega_x = -gx
    inv_mass = x * omega_x
    u2 = float(u_derivs(model, tau, q)[1]) if x > 0 else float("inf")
    singular = abs(omega_x) < MASS_TOL
    mass = float("inf") if inv_mass == 0 else float(1.0 / inv_mass)
    om2 = u2 * inv_mass
    return StationaryPoint(
        q_star=q,
        p_star=0.0 if omega_x > 0 else float(np.pi),
        kind="elliptic" if om2 > 0 else "saddle",
        omega_star_sq=float(om2),
        mass=mass,
        omega_x=omega_x,
        u2=u2,
        mass_singular=singular,
    )


def gap_estimate(model: EffectiveModel, tau: float, n: int) -> float:
    """Semiclassical gap in units of ``l^3``: ``eps * Omega*`` with ``eps = 2/n``."""
    return 2.0 / n * stationary_analysis(model, tau).omega_star


# --------------------------------------------------------------------------
# bifurcation detection

@dataclass(frozen=True)
class LocalBifurcation:
    tau0: float
    q_star: float
    a0: float
    b0: float
    c0: float
    d0: float
    p_star_pair: tuple[float, float]


def _omega_x_along(model, tau):
    q = minimize_u(model, tau).q_star
    x = np.sqrt(max(1 - q * q, 0.0))
    return -float(model.G_x(tau, x, q)), q


def detect_local_bifurcation(model: EffectiveModel, tau_grid: Sequence[float],
                             probe: float = 1e-3) -> list[LocalBifurcation]:
    """Sign changes of ``omega_x`` along the minimum path and their local data.

    ``p_star_pair`` is evaluated at ``tau0 + probe`` on whichever side the
    square root is real; it is ``(nan, nan)`` if neither side is.
    """
    taus = np.asarray(tau_grid, dtype=float)
    om, qs = np.array([_omega_x_along(model, t) for t in taus]).T
    # at a pole the mass vanishes anyway and the sign of omega_x is irrelevant
    om[np.abs(qs) >= 1 - POLE_TOL] = np.nan
    out = []
    roots = []
    zero = np.abs(om) < 1e-14
    for i in range(len(taus) - 1):
        if zero[i] and 0 < i and om[i - 1] * om[i + 1] < 0:
            roots.append(float(taus[i]))
        elif not zero[i] and not zero[i + 1] and om[i] * om[i + 1] < 0:
            roots.append(brentq(lambda t: _omega_x_along(model, t)[0], taus[i], taus[i + 1], xtol=1e-12))
    for t0 in roots:
        q = minimize_u(model, t0).q_star
        x = np.sqrt(max(1 - q * q, 0.0))
        a0 = float(model.G_xx(t0, x, q) * (1 - q * q))
        b0 = float(model.G_xtau(t0, x, q) * x)
        c0 = float(u_derivs(model, t0, q)[1])
        d0 = float(u_tau_q(model, t0, q))
        pair = (float("nan"), float("nan"))
        for dt in (probe, -probe):
            arg = 6 * b0 * dt / a0 if a0 != 0 else float("nan")
            if arg > 0:
                pair = (float(np.sqrt(arg)), -float(np.sqrt(arg)))
                break
        out.append(LocalBifurcation(t0, float(q), a0, b0, c0, d0, pair))
    return out


@dataclass(frozen=True)
class GlobalBifurcation:
    tau0: float
    q_left: float
    q_right: float
    barrier_height: float


def _local_min_near(model, tau, q0, width=0.05):
    """Local minimiser of ``U`` close to ``q0`` (bounded grid then polish)."""
    lo, hi = max(-1.0, q0 - width), min(1.0, q0 + width)
    grid = np.linspace(lo, hi, 201)
    u = u_eval(model, tau, grid)
    i = int(np.argmin(u))
    if 0 < i < len(grid) - 1:
        q = _refine(model, tau, grid[i - 1], grid[i + 1])
        if q is not None:
            return float(q)
    return float(grid[i])


def detect_global_bifurcation(model: EffectiveModel, tau_grid: Sequence[float]) -> list[GlobalBifurcation]:
    """First-order jumps of the global minimiser larger than ``JUMP_TOL``."""
    taus = np.asarray(tau_grid, dtype=float)
    qs = np.array([minimize_u(model, t).q_star for t in taus])
    found = []
    for i in np.nonzero(np.abs(np.diff(qs)) > JUMP_TOL)[0]:
        lo, hi = float(taus[i]), float(taus[i + 1])
        ql, qr = float(qs[i]), float(qs[i + 1])
        # bisect on which branch is global, tracking both local minima
        for _ in range(60):
            if hi - lo < 1e-12:
                break
            mid = 0.5 * (lo + hi)
            qm = minimize_u(model, mid).q_star
            if abs(qm - ql) <= abs(qm - qr):
                lo, ql = mid, qm
            else:
                hi, qr = mid, qm
        if abs(qr - ql) <= JUMP_TOL:
            continue  # continuous after all (steep but smooth)
        t0 = 0.5 * (lo + hi)
        a, b = sorted((ql, qr))
        seg = np.linspace(a, b, 2001)
        useg = u_eval(model, t0, seg)
        barrier = float(useg.max() - max(useg[0], useg[-1]))
        if barrier <= 1e-12:
            continue  # degenerate plateau, nothing to tunnel through
        found.append(GlobalBifurcation(t0, ql, qr, barrier))
    return found


# --------------------------------------------------------------------------
# minimum path ODE

@dataclass
class QStarTrajectory:
    tau: np.ndarray
    q: np.ndarray
    halted: bool
    halt_tau: Optional[float] = None


def q_star_ode(model: EffectiveModel, tau_span=(0.0, 0.999), q0: float = 0.0,
               tol: float = 1e-9, dense: int = 201) -> QStarTrajectory:
    """Follow the local minimum by ``dq*/dtau = -(d^2U/dq dtau) / U''``.

    Integration stops at a spinodal (``U'' < 1e-8``) or at the sphere's pole.
    """
    t0, t1 = tau_span

    def rhs(t, y):
        q = y[0]
        u2 = u_derivs(model, t, q)[1]
        return [-u_tau_q(model, t, q) / u2]

    def spinodal(t, y):
        return u_derivs(model, t, y[0])[1] - SPINODAL_TOL

    def pole(t, y):
        return 1.0 - 1e-9 - abs(y[0])

    spinodal.terminal = pole.terminal = True
    spinodal.direction = pole.direction = -1
    sol = solve_ivp(rhs, (t0, t1), [q0], method="DOP853", rtol=tol, atol=tol,
                    events=(spinodal, pole), dense_output=True)
    end = sol.t[-1]
    taus = np.linspace(t0, end, dense)
    halted = bool(sol.status == 1 and len(sol.t_events[0]))
    return QStarTrajectory(taus, sol.sol(taus)[0], halted, float(end) if halted else None)


# --------------------------------------------------------------------------
# A3 (cusp) points for the gamma_4-only driver

Potential = Literal["exact", "quartic", "flipped"]
TAU_BOUNDS = (0.0, 1.0)
X_BOUND = 1.5


@dataclass
class BifurcationSolution:
    tau_c: float
    gamma_4c: float
    x: float
    residuals: tuple[float, float, float]
    converged: bool
    potential: str = "exact"
    candidates: list = field(default_factory=list)

    def to_json(self) -> str:
        d = asdict(self)
        d.pop("candidates")
        return json.dumps(d)


@np.errstate(divide="ignore", invalid="ignore", over="ignore")
def _coeffs(beta, tau, q, potential: str):
    """``U^(k) = a_k + gamma * b_k`` for ``k = 1, 2, 3`` (arrays broadcast)."""
    _, b1, b2, b3 = beta
    tau = np.asarray(tau, dtype=float)
    q = np.asarray(q, dtype=float)
    s = 1 - tau
    gp1 = b1 + 2 * b2 * q + 3 * b3 * q * q
    gp2 = 2 * b2 + 6 * b3 * q
    gp3 = 6 * b3 + 0 * q
    if potential == "exact":
        w = np.sqrt(np.clip(1 - q * q, 1e-300, None))
        # derivatives of 2(1 - w) and of w q, with w = sqrt(1 - q^2)
        gb1 = 2 * q / w
        gb2 = 2 / w**3
        gb3 = 6 * q / w**5
        e1 = (1 - 2 * q * q) / w
        e2 = q * (2 * q * q - 3) / w**3
        e3 = -3 / w**5
    elif potential == "quartic":
        gb1, gb2, gb3 = 2 * q + q**3, 2 + 3 * q * q, 6 * q
        e1, e2, e3 = 1 - 1.5 * q * q, -3 * q, -3 + 0 * q
    elif potential == "flipped":
        # quartic expansion with the sign of the cubic transverse term flipped;
        # kept as a cross-check of an alternative sign convention
        gb1, gb2, gb3 = 2 * q - q**3, 2 - 3 * q * q, -6 * q
        e1, e2, e3 = 1 - 1.5 * q * q, -3 * q, -3 + 0 * q
    else:
        raise ValueError(f"unknown potential {potential!r}")
    a = np.stack([s * gb1 + tau * gp1, s * gb2 + tau * gp2, s * gb3 + tau * gp3])
    b = np.stack([tau * s * e1, tau * s * e2, tau * s * e3])
    return a, b


def a3_residuals(beta, tau, gamma, q, potential: Potential = "exact"):
    a, b = _coeffs(beta, tau, q, potential)
    return a + gamma * b


def _eliminated(beta, tau, q, potential):
    """Two residuals after solving the third condition for ``gamma``."""
    a, b = _coeffs(beta, tau, q, potential)
    with np.errstate(divide="ignore", invalid="ignore"):
        g = -a[2] / b[2]
    return np.stack([a[0] + g * b[0], a[1] + g * b[1]]), g


def _newton_batch(beta, tau, q, potential, iters=200, damping=0.5, tol=1e-12, h=1e-7):
    """Damped Newton on the eliminated 2x2 system, vectorised over seeds.

    ``beta`` entries may be scalars or arrays broadcastable to ``tau``.
    Converged or failed lanes are dropped from later iterations.
    """
    shape = np.broadcast(tau, q).shape
    tau = np.broadcast_to(np.asarray(tau, float), shape).ravel().copy()
    q = np.broadcast_to(np.asarray(q, float), shape).ravel().copy()
    beta = tuple(np.broadcast_to(np.asarray(b, float), shape).ravel() for b in beta)
    qmax = 1 - 1e-9 if potential == "exact" else X_BOUND
    live = np.arange(tau.size)
    for _ in range(iters):
        bl = tuple(b[live] for b in beta)
        t, x = tau[live], q[live]
        f, _ = _eliminated(bl, t, x, potential)
        norm = np.abs(f).max(axis=0)
        keep = np.isfinite(norm) & (norm > tol)
        if not keep.any():
            break
        live, t, x, f, norm = live[keep], t[keep], x[keep], f[:, keep], norm[keep]
        bl = tuple(b[live] for b in beta)
        ft, _ = _eliminated(bl, t + h, x, potential)
        fq, _ = _eliminated(bl, t, x + h, potential)
        j11 = (ft[0] - f[0]) / h
        j21 = (ft[1] - f[1]) / h
        j12 = (fq[0] - f[0]) / h
        j22 = (fq[1] - f[1]) / h
        det = j11 * j22 - j12 * j21
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            dt = (j22 * f[0] - j12 * f[1]) / det
            dq = (j11 * f[1] - j21 * f[0]) / det
        ok = np.isfinite(dt) & np.isfinite(dq)
        live, t, x, dt, dq, norm = live[ok], t[ok], x[ok], dt[ok], dq[ok], norm[ok]
        bl = tuple(b[live] for b in beta)
        # full step when it reduces the residual, otherwise the damped one
        t_new = np.clip(t - dt, 1e-9, 1 - 1e-9)
        q_new = np.clip(x - dq, -qmax, qmax)
        f_new, _ = _eliminated(bl, t_new, q_new, potential)
        better = np.abs(f_new).max(axis=0) < norm
        tau[live] = np.where(better, t_new, np.clip(t - damping * dt, 1e-9, 1 - 1e-9))
        q[live] = np.where(better, q_new, np.clip(x - damping * dq, -qmax, qmax))
        if live.size == 0:
            break
    f, g = _eliminated(beta, tau, q, potential)
    res = np.abs(f).max(axis=0)
    return tau.reshape(shape), q.reshape(shape), g.reshape(shape), res.reshape(shape)


def _is_global_min(beta, tau, gamma, q, potential, slack=1e-9):
    if potential == "flipped":
        return True
    model = EffectiveModel(tuple(beta), (0, 0, 0, gamma, 0, 0))
    grid = np.linspace(-1, 1, 4001)
    if potential == "exact":
        u = u_eval(model, tau, grid)
        uc = float(u_eval(model, tau, q))
    else:
        def uq(z):
            return ((1 - tau) * (z * z + z**4 / 4) + tau * (1 - tau) * gamma * (z - z**3 / 2)
                    + tau * gp_eval(beta, z))
        u, uc = uq(grid), float(uq(q))
    return uc <= u.min() + slack


def solve_a3(beta: Sequence[float], potential: Potential = "exact", seeds: int = 50,
             require_global: bool = True) -> BifurcationSolution:
    """Cusp point ``U' = U'' = U''' = 0`` of the ``gamma_4`` family.

    Multistart damped Newton from a ``seeds x seeds`` grid in ``(tau, x)``
    after eliminating ``gamma`` through the third condition. Among distinct
    roots with ``tau in (0, 1)`` (and, if ``require_global``, a cusp that is the
    global minimum of the potential) the one with the smallest ``|gamma|``
    is returned.
    """
    beta = tuple(float(v) for v in beta)
    if len(beta) != 4 or not np.all(np.isfinite(beta)):
        raise ValueError("beta must be four finite numbers")
    qb = 0.98 if potential == "exact" else X_BOUND
    tt, qq = np.meshgrid(np.linspace(0.02, 0.98, seeds), np.linspace(-qb, qb, seeds), indexing="ij")
    tau, q, g, res = _newton_batch(beta, tt.ravel(), qq.ravel(), potential)
    ok = (res < 1e-10) & (tau > 1e-6) & (tau < 1 - 1e-6) & np.isfinite(g)
    ok &= np.abs(q) <= (1 - 1e-9 if potential == "exact" else X_BOUND)
    roots: list[tuple[float, float, float]] = []
    for t, x, gg in sorted(zip(tau[ok], q[ok], g[ok]), key=lambda r: abs(r[2])):
        if any(abs(t - r[0]) < 1e-6 and abs(x - r[1]) < 1e-6 for r in roots):
            continue
        roots.append((float(t), float(x), float(gg)))
    physical = [r for r in roots if not require_global or _is_global_min(beta, r[0], r[2], r[1], potential)]
    if not physical:
        return BifurcationSolution(float("nan"), float("nan"), float("nan"),
                                   (float("nan"),) * 3, False, potential, roots)
    t, x, gg = physical[0]
    r = a3_residuals(beta, t, gg, x, potential)
    return BifurcationSolution(t, gg, x, tuple(float(v) for v in r), True, potential, roots)


def bifurcation_1_residuals(beta, tau, gamma):
    """Residuals of the closed two-line critical condition."""
    _, b1, b2, b3 = beta
    r1 = tau * (1 - b2) - 1 - (2 / 3) * tau**2 * (1 - tau) * (b1 + b3) ** 2 / (2 - tau * (2 - b2)) ** 2
    r2 = gamma * (1 - tau) - ((1 - tau) * (3 * b1 + b3) + tau * b2 * b3) / (tau * b2 - 2 * (1 - tau))
    return r1, r2


def solve_bifurcation_1(beta) -> Optional[tuple[float, float]]:
    """Root of the closed form: first line for ``tau``, second for ``gamma``."""
    f = lambda t: bifurcation_1_residuals(beta, t, 0.0)[0]
    grid = np.linspace(1e-6, 1 - 1e-6, 4001)
    vals = np.array([f(t) for t in grid])
    idx = np.nonzero(np.sign(vals[:-1]) * np.sign(vals[1:]) < 0)[0]
    if idx.size == 0:
        return None
    t = brentq(f, grid[idx[0]], grid[idx[0] + 1], xtol=1e-14)
    _, b1, b2, b3 = beta
    g = ((1 - t) * (3 * b1 + b3) + t * b2 * b3) / ((t * b2 - 2 * (1 - t)) * (1 - t))
    return float(t), float(g)
