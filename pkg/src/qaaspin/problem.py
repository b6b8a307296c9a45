"""Generalised Hamming Weight Problem instances and their Hamiltonians.

A clause on three bits contributes ``p_m`` when ``m`` of its bits are 1; the
cost of a string sums this over all ``C(n, 3)`` triples and therefore depends
only on the Hamming weight. For large ``n`` it becomes ``l^3 G_P(q)`` with the
cubic ``G_P(q) = sum_k beta_k q^k`` and ``q = 1 - w/l``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import comb
from typing import Literal, Sequence

import numpy as np

from .spin_algebra import build_nx

_XI = np.array([1.0, 1.0, -1.0, -1.0])
_C3 = np.array([1.0, 3.0, 3.0, 1.0])
_SIGN = np.array([1.0, -1.0, 1.0, -1.0])

# beta = P_TO_BETA @ p
P_TO_BETA = np.column_stack([
    _C3 / 6.0,
    _XI / 2.0,
    _XI * _SIGN / 2.0,
    _C3 * _SIGN / 6.0,
])


def betas_from_p(p: Sequence[float]) -> np.ndarray:
    """Cubic coefficients ``beta_0..beta_3`` of the large-n cost."""
    p = np.asarray(p, dtype=float)
    if p.shape[-1] != 4:
        raise ValueError("expected four clause weights")
    return p @ P_TO_BETA.T


def p_from_betas(beta: Sequence[float]) -> np.ndarray:
    return np.linalg.solve(P_TO_BETA, np.asarray(beta, dtype=float))


@dataclass(frozen=True)
class HwpInstance:
    p: tuple[float, float, float, float]
    beta: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        p = tuple(float(x) for x in self.p)
        if len(p) != 4 or not all(np.isfinite(p)):
            raise ValueError(f"instance needs four finite weights, got {self.p!r}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "beta", betas_from_p(p))

    @classmethod
    def from_betas(cls, beta: Sequence[float]) -> "HwpInstance":
        return cls(tuple(p_from_betas(beta)))

    def reflected(self) -> "HwpInstance":
        """Bit-complement image: ``p_k -> p_{3-k}`` (``q -> -q``)."""
        return HwpInstance(self.p[::-1])

    def to_json(self) -> str:
        return json.dumps({"p": list(self.p)})

    @classmethod
    def from_json(cls, text: str) -> "HwpInstance":
        obj = json.loads(text)
        extra = set(obj) - {"p"}
        if extra:
            raise ValueError(f"unknown keys in instance: {sorted(extra)}")
        return cls(tuple(obj["p"]))


def exact_cost(n: int, w: int, p: Sequence[float]) -> float:
    """Clause sum for any string of weight ``w``: ``sum_m p_m C(w,m) C(n-w,3-m)``."""
    if n < 3:
        raise ValueError("need n >= 3")
    if not 0 <= w <= n:
        raise ValueError(f"weight {w} out of range 0..{n}")
    return float(sum(p[m] * comb(w, m) * comb(n - w, 3 - m) for m in range(4)))


def gp_eval(beta: Sequence[float], q):
    """Horner evaluation of ``G_P``; ``q`` may be an array."""
    b0, b1, b2, b3 = beta
    return ((b3 * q + b2) * q + b1) * q + b0


def gp_deriv(beta: Sequence[float], q, order: int = 1):
    b0, b1, b2, b3 = beta
    if order == 1:
        return (3 * b3 * q + 2 * b2) * q + b1
    if order == 2:
        return 6 * b3 * q + 2 * b2
    if order == 3:
        return 6 * b3 + 0 * q
    raise ValueError("order must be 1, 2 or 3")


@dataclass(frozen=True)
class CostShape:
    kind: Literal["monotonic", "single-minimum", "double-minimum"]
    critical_points: tuple[float, ...]
    critical_values: tuple[float, ...]
    minima: tuple[float, ...]
    q_star: float
    endpoint_values: tuple[float, float]


def classify_cost(beta: Sequence[float], tol: float = 1e-10) -> CostShape:
    """Shape of ``G_P`` on ``[-1, 1]`` from the roots of ``G_P'``.

    Minima include the endpoints when the slope points outward. Ties between
    minima are broken toward an interior point, otherwise toward larger q.
    """
    b0, b1, b2, b3 = (float(x) for x in beta)
    a, b, c = 3 * b3, 2 * b2, b1
    crit: list[float] = []
    if abs(a) > 0:
        disc = b * b - 4 * a * c
        if disc > 0:
            sq = np.sqrt(disc)
            # numerically stable quadratic roots
            t = -0.5 * (b + np.copysign(sq, b))
            with np.errstate(over="ignore"):
                roots = [t / a, c / t] if t != 0 else [0.0, 0.0]
            crit = sorted(r for r in roots if -1 < r < 1)
        elif disc == 0:
            r = -b / (2 * a)
            crit = [r] if -1 < r < 1 else []
    elif abs(b) > 0:
        r = -c / b
        crit = [r] if -1 < r < 1 else []

    def g(q):
        return gp_eval(beta, q)

    def gpp(q):
        return gp_deriv(beta, q, 2)

    minima: list[float] = []
    slope_lo = gp_deriv(beta, -1.0)
    slope_hi = gp_deriv(beta, 1.0)
    if slope_lo > 0 or (slope_lo == 0 and gpp(-1.0) > 0):
        minima.append(-1.0)
    interior_min = [r for r in crit if gpp(r) > 0]
    minima.extend(interior_min)
    if slope_hi < 0 or (slope_hi == 0 and gpp(1.0) > 0):
        minima.append(1.0)
    if not minima:
        # constant cost (plateau): report the smallest-|q| representative
        minima = [0.0]

    best = min(g(q) for q in minima)
    ties = [q for q in minima if g(q) <= best + tol]
    inside = [q for q in ties if -1 < q < 1]
    q_star = min(inside, key=abs) if inside else max(ties)

    n_interior = len(interior_min)
    if len(minima) >= 2:
        kind = "double-minimum"
    elif n_interior == 1:
        kind = "single-minimum"
    else:
        kind = "monotonic"
    return CostShape(
        kind=kind,
        critical_points=tuple(crit),
        critical_values=tuple(float(g(r)) for r in crit),
        minima=tuple(minima),
        q_star=float(q_star),
        endpoint_values=(float(g(-1.0)), float(g(1.0))),
    )


def build_hp(n: int, inst: HwpInstance, mode: Literal["asymptotic", "exact"] = "asymptotic") -> np.ndarray:
    """Diagonal problem Hamiltonian in the weight basis (raw units)."""
    if n < 3:
        raise ValueError("need n >= 3")
    w = np.arange(n + 1)
    if mode == "asymptotic":
        l = n / 2
        diag = l**3 * gp_eval(inst.beta, 1.0 - 2.0 * w / n)
    elif mode == "exact":
        diag = np.array([exact_cost(n, int(k), inst.p) for k in w])
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return np.diag(diag)


def build_hb(n: int) -> np.ndarray:
    """Transverse-field driver ``l^3 (2 - 2 n_x)``; ground state has weights ``sqrt C(n,w)``."""
    l = n / 2
    return l**3 * (2.0 * np.eye(n + 1) - 2.0 * build_nx(n))
