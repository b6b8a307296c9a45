"""Random 3-bit clause drivers and their large-spin coefficients.

The clause matrix ``A`` is a real symmetric 8x8 matrix with zero diagonal,
indexed by the triple configuration ``c = 4 z_i + 2 z_j + z_k`` (``i<j<k``,
bit value 0 is spin up, written ``+``). The driver sums ``A`` over every
triple of bits. In the weight basis this is a banded matrix with
``|w' - w| <= 3``; in the large-spin limit its off-diagonal part becomes
``l^3 sum_k gamma_k B_k`` with the six operators of
:func:`qaaspin.spin_algebra.sym_poly_basis`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Iterable, Optional, Sequence

import numpy as np

from .spin_algebra import build_nz, sym_poly, sym_poly_basis

CONFIG_LABELS = ("+++", "++-", "+-+", "+--", "-++", "-+-", "--+", "---")
N_ENTRIES = 28
_IU = np.triu_indices(8, k=1)
_WEIGHT = np.array([bin(c).count("1") for c in range(8)])
DENSE_MAX_N = 14


@dataclass(frozen=True)
class DriverMatrix:
    entries: np.ndarray

    def __post_init__(self):
        a = np.array(self.entries, dtype=float)
        if a.shape == (N_ENTRIES,):
            a = _from_upper(a)
        if a.shape != (8, 8):
            raise ValueError(f"driver matrix must be 8x8 or 28 upper entries, got {a.shape}")
        if np.abs(a - a.T).max() > 0 or np.abs(np.diag(a)).max() > 0:
            raise ValueError("driver matrix must be symmetric with zero diagonal")
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)

    @property
    def upper(self) -> np.ndarray:
        return self.entries[_IU]

    def __add__(self, other: "DriverMatrix") -> "DriverMatrix":
        return DriverMatrix(self.entries + other.entries)

    def __mul__(self, k: float) -> "DriverMatrix":
        return DriverMatrix(k * self.entries)

    __rmul__ = __mul__

    def reflected(self) -> "DriverMatrix":
        """Bit-complement conjugation of the clause (``c -> 7 - c``)."""
        idx = 7 - np.arange(8)
        return DriverMatrix(self.entries[np.ix_(idx, idx)])

    def to_json(self) -> str:
        return json.dumps({"entries": self.upper.tolist()})

    @classmethod
    def from_json(cls, text: str) -> "DriverMatrix":
        obj = json.loads(text)
        extra = set(obj) - {"entries"}
        if extra:
            raise ValueError(f"unknown keys in driver matrix: {sorted(extra)}")
        return cls(np.asarray(obj["entries"], dtype=float))


def _from_upper(u: np.ndarray) -> np.ndarray:
    a = np.zeros((8, 8))
    a[_IU] = u
    return a + a.T


def basis_matrix(k: int) -> DriverMatrix:
    """Elementary symmetric matrix for the k-th upper-triangle entry."""
    u = np.zeros(N_ENTRIES)
    u[k] = 1.0
    return DriverMatrix(u)


@dataclass(frozen=True)
class GammaCoefficients:
    gamma: tuple[float, ...]

    def __post_init__(self):
        g = tuple(float(x) for x in self.gamma)
        if len(g) != 6 or not all(np.isfinite(g)):
            raise ValueError(f"need six finite gamma coefficients, got {self.gamma!r}")
        object.__setattr__(self, "gamma", g)

    @classmethod
    def only_gamma4(cls, g4: float) -> "GammaCoefficients":
        return cls((0.0, 0.0, 0.0, float(g4), 0.0, 0.0))

    def reflected(self) -> "GammaCoefficients":
        """Image under ``n_z -> -n_z``: odd powers of ``n_z`` change sign."""
        g1, g2, g3, g4, g5, g6 = self.gamma
        return GammaCoefficients((g1, g2, g3, -g4, g5, -g6))

    def __getitem__(self, k: int) -> float:
        return self.gamma[k]

    def to_json(self) -> str:
        return json.dumps({"gamma": list(self.gamma)})

    @classmethod
    def from_json(cls, text: str) -> "GammaCoefficients":
        obj = json.loads(text)
        extra = set(obj) - {"gamma"}
        if extra:
            raise ValueError(f"unknown keys in gamma coefficients: {sorted(extra)}")
        return cls(tuple(obj["gamma"]))


# --------------------------------------------------------------------------
# sampling and the operator parameterisation

def sample_A(L: float, seed: int) -> DriverMatrix:
    """28 i.i.d. uniform entries on ``[-L, L]``, deterministic per seed."""
    if not L > 0:
        raise ValueError("L must be positive")
    rng = np.random.default_rng(seed)
    return DriverMatrix(rng.uniform(-L, L, size=N_ENTRIES))


def sample_A_batch(L: float, samples: int, seed: int) -> np.ndarray:
    """``(samples, 28)`` upper-triangle entries from one seeded stream."""
    rng = np.random.default_rng(seed)
    return rng.uniform(-L, L, size=(samples, N_ENTRIES))


_PAIRS = ((0, 1), (0, 2), (1, 2))
_I2 = np.eye(2)
_SX = np.array([[0.0, 1.0], [1.0, 0.0]])
_SZ = np.diag([1.0, -1.0])
_SP = np.array([[0.0, 1.0], [0.0, 0.0]])  # |+><-|, raises S_z
_SM = _SP.T


def _kron3(ops: Sequence[np.ndarray]) -> np.ndarray:
    return np.kron(np.kron(ops[0], ops[1]), ops[2])


def _on(site_ops: dict[int, np.ndarray]) -> np.ndarray:
    return _kron3([site_ops.get(k, _I2) for k in range(3)])


def _proj(s: int) -> np.ndarray:
    return 0.5 * (_I2 + s * _SZ)


@dataclass
class FlipParams:
    """Flip-type parameterisation of the clause matrix (28 numbers).

    ``single[a, i, j]``: flip bit ``a`` while the other two bits (in increasing
    order) are in states ``(s_i, s_j)``, index 0 for ``+`` and 1 for ``-``.
    ``double[p, i]`` / ``double_t[p, i]``: flip the pair ``_PAIRS[p]`` with
    equal / opposite spins, the remaining bit in state ``s_i``.
    ``B, C, D, E``: the four triple-flip channels.
    """

    single: np.ndarray = field(default_factory=lambda: np.zeros((3, 2, 2)))
    double: np.ndarray = field(default_factory=lambda: np.zeros((3, 2)))
    double_t: np.ndarray = field(default_factory=lambda: np.zeros((3, 2)))
    B: float = 0.0
    C: float = 0.0
    D: float = 0.0
    E: float = 0.0

    @classmethod
    def from_products(cls, a=(0, 0, 0), b=((0, 0), (0, 0)), a2=(0, 0, 0), b2=(0, 0),
                      at=(0, 0, 0), bt=(0, 0), B=0.0, C=0.0, D=0.0, E=0.0) -> "FlipParams":
        """Factorised form ``a_alpha b_{ss'}``, ``a_{alpha beta} b_s``, ``~a ~b_s``.

        ``b`` is indexed ``[s, s']`` and ``b2``/``bt`` by ``s`` with 0 for ``+``.
        """
        return cls(
            single=np.einsum("a,ij->aij", np.asarray(a, float), np.asarray(b, float)),
            double=np.outer(np.asarray(a2, float), np.asarray(b2, float)),
            double_t=np.outer(np.asarray(at, float), np.asarray(bt, float)),
            B=B, C=C, D=D, E=E,
        )


def parametrized_A(params: FlipParams) -> DriverMatrix:
    """Assemble ``A`` from the Pauli-operator form of each flip channel."""
    spins = (1, -1)
    a = np.zeros((8, 8))
    for alpha in range(3):
        beta, gamma = [k for k in range(3) if k != alpha]
        for i, s in enumerate(spins):
            for j, s2 in enumerate(spins):
                coef = params.single[alpha, i, j]
                if coef:
                    a += coef * _on({alpha: _SX, beta: _proj(s), gamma: _proj(s2)})
    for p, (al, be) in enumerate(_PAIRS):
        ga = 3 - al - be
        for i, s in enumerate(spins):
            pr = _proj(s)
            if params.double[p, i]:
                op = _on({al: _SP, be: _SP, ga: pr}) + _on({al: _SM, be: _SM, ga: pr})
                a += params.double[p, i] * op
            if params.double_t[p, i]:
                op = _on({al: _SP, be: _SM, ga: pr}) + _on({al: _SM, be: _SP, ga: pr})
                a += params.double_t[p, i] * op
    triples = {
        "B": (_SP, _SP, _SP),
        "C": (_SP, _SP, _SM),
        "D": (_SM, _SP, _SP),
        "E": (_SP, _SM, _SP),
    }
    for name, ops in triples.items():
        coef = getattr(params, name)
        if coef:
            op = _kron3(ops)
            a += coef * (op + op.T)
    return DriverMatrix(a)


def deterministic_params() -> FlipParams:
    """The deterministic driver of the random-path literature (``gamma_4 = -8``)."""
    return FlipParams.from_products(a=(1, 1, 1), b=((-2, 0), (0, 2)))


# --------------------------------------------------------------------------
# driver Hamiltonian in the symmetric subspace

def symmetric_states(n: int) -> np.ndarray:
    """``(2^n, n+1)`` matrix whose columns are the normalised ``|w>``."""
    z = np.arange(2**n)
    pop = np.zeros(2**n, dtype=int)
    for k in range(n):
        pop += (z >> k) & 1
    v = np.zeros((2**n, n + 1))
    v[z, pop] = 1.0
    return v / np.sqrt(v.sum(axis=0))


def build_he_dense(A: DriverMatrix, n: int) -> np.ndarray:
    """Embed ``A`` on every triple of the full ``2^n`` space, then project.

    Qubit ``i`` is tensor axis ``i``; triple order ``i<j<k`` maps onto the
    clause configuration bits from most to least significant.
    """
    if n < 3:
        raise ValueError("need n >= 3")
    if n > DENSE_MAX_N:
        raise ValueError(f"dense construction limited to n <= {DENSE_MAX_N}")
    vecs = symmetric_states(n)
    psi = vecs.reshape((2,) * n + (n + 1,))
    out = np.zeros_like(psi)
    a = A.entries
    for tri in combinations(range(n), 3):
        moved = np.moveaxis(psi, tri, (0, 1, 2))
        shape = moved.shape
        res = (a @ moved.reshape(8, -1)).reshape(shape)
        out += np.moveaxis(res, (0, 1, 2), tri)
    proj = vecs.T @ out.reshape(2**n, n + 1)
    return 0.5 * (proj + proj.T)


def _clause_kernel(a: np.ndarray) -> np.ndarray:
    """``K[m, m']``: sum of ``A[c', c] / C(3, m)`` over ``|c| = m``, ``|c'| = m'``."""
    k = np.zeros((4, 4))
    for c in range(8):
        for c2 in range(8):
            k[_WEIGHT[c], _WEIGHT[c2]] += a[c2, c]
    return k / np.array([comb(3, m) for m in range(4)])[:, None]


def build_he_symmetric(A: DriverMatrix, n: int, include_weight_preserving: bool = True) -> np.ndarray:
    """Closed-form driver in the weight basis (raw units).

    ``<w+d|H|w> = sqrt(C(n,w)/C(n,w+d)) sum_m K[m, m+d] C(w,m) C(n-w,3-m)``.
    """
    if n < 3:
        raise ValueError("need n >= 3")
    k = _clause_kernel(np.asarray(A.entries if isinstance(A, DriverMatrix) else A, float))
    w = np.arange(n + 1, dtype=float)
    # C(w, m) C(n-w, 3-m) as polynomials in w
    cw = [np.ones_like(w), w, w * (w - 1) / 2, w * (w - 1) * (w - 2) / 6]
    u = n - w
    cu = [np.ones_like(u), u, u * (u - 1) / 2, u * (u - 1) * (u - 2) / 6]
    counts = [cw[m] * cu[3 - m] for m in range(4)]
    h = np.zeros((n + 1, n + 1))
    dmin = 0 if include_weight_preserving else 1
    for d in range(dmin, 4):
        src = np.arange(0, n + 1 - d)
        # sqrt(C(n,w)/C(n,w+d)) = prod_{j<d} sqrt((w+j+1)/(n-w-j))
        ratio = np.ones(src.size)
        for j in range(d):
            ratio *= (src + j + 1.0) / (n - src - j)
        ratio = np.sqrt(ratio)
        val = np.zeros(src.size)
        for m in range(0, 4 - d):
            if k[m, m + d]:
                val += k[m, m + d] * counts[m][src]
        val *= ratio
        if d == 0:
            h[src, src] += val
        else:
            h[src + d, src] += val
            h[src, src + d] += val
    return h


# --------------------------------------------------------------------------
# large-spin coefficients

def nuisance_basis(n: int) -> list[np.ndarray]:
    """Diagonal cost redefinitions ``I, Nz, Nz^2, Nz^3`` absorbed in fits."""
    nz = np.diag(build_nz(n))
    return [np.diag(nz**k) for k in range(4)]


def fit_gammas(h_scaled: np.ndarray, n: int) -> np.ndarray:
    """Least-squares coefficients of ``h_scaled`` on the six driver operators.

    Diagonal cubic terms in ``Nz`` are fitted alongside and discarded.
    """
    basis = sym_poly_basis(n) + nuisance_basis(n)
    design = np.stack([b.ravel() for b in basis], axis=1)
    coef, *_ = np.linalg.lstsq(design, h_scaled.ravel(), rcond=None)
    return coef[:6]


def derive_gamma_table(ns: Iterable[int] = (200, 400, 800)) -> np.ndarray:
    """Derive the ``6 x 28`` map from clause entries to large-spin coefficients.

    For each elementary matrix the finite-n fit is extrapolated to ``1/n -> 0``
    with a polynomial in ``1/n`` through all supplied sizes.
    """
    ns = list(ns)
    inv = 1.0 / np.asarray(ns, dtype=float)
    vander = np.vander(inv, len(ns), increasing=True)
    table = np.zeros((6, N_ENTRIES))
    for k in range(N_ENTRIES):
        e = basis_matrix(k)
        fits = []
        for n in ns:
            h = build_he_symmetric(e, n, include_weight_preserving=False) / (n / 2) ** 3
            fits.append(fit_gammas(h, n))
        coef = np.linalg.solve(vander, np.asarray(fits))
        table[:, k] = coef[0]
    return table


def _load_table() -> np.ndarray:
    from ._gamma_table import GAMMA_TABLE

    return np.asarray(GAMMA_TABLE, dtype=float)


def gammas_from_A(A: DriverMatrix) -> GammaCoefficients:
    return GammaCoefficients(tuple(_load_table() @ A.upper))


def gammas_from_entries(upper: np.ndarray) -> np.ndarray:
    """Vectorised map for a ``(..., 28)`` stack of upper-triangle entries."""
    return np.asarray(upper) @ _load_table().T


def he_model_error(A: DriverMatrix, n: int, gammas: Optional[GammaCoefficients] = None) -> float:
    """Largest off-diagonal deviation between the scaled driver and its γ model.

    Only ``w' != w`` entries are compared: diagonal terms are cost
    redefinitions that the six-operator model does not carry.
    """
    if n < 10:
        raise ValueError("model error is defined for n >= 10")
    g = gammas if gammas is not None else gammas_from_A(A)
    h = build_he_symmetric(A, n, include_weight_preserving=False) / (n / 2) ** 3
    diff = h - sym_poly(n, g.gamma)
    np.fill_diagonal(diff, 0.0)
    return float(np.abs(diff).max())
