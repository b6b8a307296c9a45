"""Operators on the maximal-spin (permutation-symmetric) subspace of n qubits.

Basis states are indexed by Hamming weight ``w = 0..n``; ``|w>`` is the
normalised symmetric superposition of all weight-``w`` bit strings. Spin
projection is ``m = l - w`` with ``l = n/2``, so bit value 0 is spin up.

All builders return dense, exactly symmetric ``(n+1, n+1)`` float arrays.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
import scipy.linalg

RESIDUAL_TOL = 1e-12


class EigenSolverError(ArithmeticError):
    """Raised when a symmetric eigensolve fails or returns inaccurate pairs."""

    def __init__(self, message: str, matrix_norm: float):
        super().__init__(f"{message} (||M|| = {matrix_norm:.6g})")
        self.matrix_norm = matrix_norm


@dataclass(frozen=True)
class Spectrum:
    eigenvalues: np.ndarray
    eigenvectors: Optional[np.ndarray] = None


def _check_n(n: int) -> int:
    if int(n) != n or n < 2:
        raise ValueError(f"qubit count must be an integer >= 2, got {n!r}")
    return int(n)


def build_nz(n: int) -> np.ndarray:
    """Normalised z projection ``n_z = S_z / l``: diagonal ``1 - 2w/n``."""
    n = _check_n(n)
    w = np.arange(n + 1)
    return np.diag(1.0 - 2.0 * w / n)


def build_nx(n: int) -> np.ndarray:
    """Normalised x projection ``n_x = S_x / l`` (tridiagonal, zero diagonal).

    ``<w-1| n_x |w> = sqrt(w (n - w + 1)) / n``, the standard ladder element
    divided by ``2l``.
    """
    n = _check_n(n)
    w = np.arange(1, n + 1)
    off = np.sqrt(w * (n - w + 1.0)) / n
    return np.diag(off, 1) + np.diag(off, -1)


def _sym(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return 0.5 * (a @ b + b @ a)


def sym_poly_basis(n: int) -> list[np.ndarray]:
    """The six driver operators, mixed products in symmetric (Weyl) order.

    Order: ``Nx, Nx^2, Nx^3, {Nx Nz}, {Nx Nz^2}, {Nx^2 Nz}``.
    """
    nx = build_nx(n)
    nz = build_nz(n)
    nx2 = nx @ nx
    nz2 = nz @ nz
    ops = [nx, nx2, nx2 @ nx, _sym(nx, nz), _sym(nx, nz2), _sym(nx2, nz)]
    return [0.5 * (op + op.T) for op in ops]


def sym_poly(n: int, gammas: Sequence[float]) -> np.ndarray:
    """``sum_k gamma_k B_k`` over :func:`sym_poly_basis`."""
    g = np.asarray(gammas, dtype=float)
    if g.shape != (6,):
        raise ValueError(f"expected 6 gamma coefficients, got shape {g.shape}")
    if not np.all(np.isfinite(g)):
        raise ValueError("gamma coefficients must be finite")
    out = np.zeros((n + 1, n + 1))
    if not g.any():
        _check_n(n)
        return out
    for gk, op in zip(g, sym_poly_basis(n)):
        if gk:
            out += gk * op
    return out


def eigh(m: np.ndarray, want_vectors: bool = True, n_lowest: Optional[int] = None) -> Spectrum:
    """Ascending spectrum of a real symmetric matrix.

    Backed by LAPACK. Every returned pair is checked against
    ``||M v - lambda v|| <= tol * ||M||``; ``n_lowest`` restricts the solve to
    the bottom of the spectrum.
    """
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise EigenSolverError("matrix has non-finite entries", float("nan"))
    norm = float(np.linalg.norm(m, 2)) if m.shape[0] <= 64 else float(np.abs(m).sum(axis=1).max())
    if np.abs(m - m.T).max(initial=0.0) > 1e-12 * max(norm, 1.0):
        raise ValueError("matrix is not symmetric")
    subset = None
    if n_lowest is not None:
        subset = [0, min(n_lowest, m.shape[0]) - 1]
    try:
        vals, vecs = scipy.linalg.eigh(m, subset_by_index=subset, driver="evr" if subset else "evd")
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure path
        raise EigenSolverError(f"eigensolver did not converge: {exc}", norm) from exc
    scale = max(norm, np.finfo(float).tiny)
    resid = np.linalg.norm(m @ vecs - vecs * vals, axis=0)
    # LAPACK residuals grow ~ sqrt(dim) * eps * ||M||
    tol = max(RESIDUAL_TOL, 50 * np.finfo(float).eps * np.sqrt(m.shape[0]))
    if resid.size and resid.max() > tol * scale:
        raise EigenSolverError(f"eigenpair residual {resid.max():.3e} above tolerance", norm)
    return Spectrum(vals, vecs if want_vectors else None)
