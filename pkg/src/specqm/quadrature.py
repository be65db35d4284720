"""Gauss-Chebyshev product-integration weights and antiderivative matrices.

The unit-weight rule on the interior Chebyshev mesh,

    int_{-1}^{1} f(t) dt ~ sum_j w_j f(t_j),

is exact for polynomials of degree <= N-1, all weights positive, and the
weights sum to 2.  The companion constant matrices map integrand node
values to node values of the running integrals from either endpoint:

    int_{-1}^{t_i} f dt   ~  (W_lower  @ [f])_i
    int_{t_i}^{1}  f dt   ~  (W_upper @ [f])_i

so that rowwise  W_lower + W_upper  reproduces the plain weights.
Interval scaling by (b-a)/2 is applied by the callers at solve time; the
matrices themselves depend only on N and are cached.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass

import numpy as np

from .chebyshev import ChebGrid, analysis_matrix, chebyshev_t_row, make_grid


def gauss_cheb_weights(n: int) -> np.ndarray:
    """Unit-weight quadrature weights on the order-N interior mesh."""
    if n < 1:
        raise ValueError("order must be >= 1")
    t = make_grid(n).ref_nodes
    tt = chebyshev_t_row(2 * ((n - 1) // 2) + 1, t)
    w = np.zeros(n)
    for i in range(0, (n - 1) // 2 + 1):
        term = tt[2 * i] / (4.0 * i * i - 1.0)
        if i == 0:
            term = 0.5 * term
        w += term
    return -(4.0 / n) * w


def gauss_cheb_weighted_integral(values: np.ndarray) -> float:
    """Classical rule (pi/N) sum f(t_j) for integrals against 1/sqrt(1-t^2)."""
    values = np.asarray(values, dtype=float)
    return float(np.pi / values.size * values.sum())


def _t_antiderivative_lower(n: int, t: np.ndarray) -> np.ndarray:
    """S[i, j] = int_{-1}^{t_i} T_j(t) dt for j = 0..n-1 (0-based order)."""
    tt = chebyshev_t_row(n + 1, t)
    s = np.empty((t.size, n))
    s[:, 0] = tt[1] + 1.0
    if n > 1:
        s[:, 1] = 0.25 * (tt[2] - 1.0)
    for j in range(3, n + 1):  # j is the 1-based column index
        s[:, j - 1] = (tt[j] / (2.0 * j)
                       - tt[j - 2] / (2.0 * (j - 2))
                       + (-1.0) ** j / (j * (j - 2.0)))
    return s


def _t_antiderivative_upper(n: int, t: np.ndarray) -> np.ndarray:
    """S[i, j] = int_{t_i}^{1} T_j(t) dt."""
    tt = chebyshev_t_row(n + 1, t)
    s = np.empty((t.size, n))
    s[:, 0] = 1.0 - tt[1]
    if n > 1:
        s[:, 1] = -0.25 * (tt[2] - 1.0)
    for j in range(3, n + 1):
        s[:, j - 1] = (-tt[j] / (2.0 * j)
                       + tt[j - 2] / (2.0 * (j - 2))
                       - 1.0 / (j * (j - 2.0)))
    return s


def antideriv_matrices(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Antiderivative matrices (W_lower, W_upper) for the order-N mesh.

    Built as S * d^{-1} * M with d = diag(N, N/2, ..., N/2) folded in
    analytically; exact for polynomial integrands of degree <= N-1.
    """
    if n < 1:
        raise ValueError("order must be >= 1")
    t = make_grid(n).ref_nodes
    m = analysis_matrix(n).copy()
    m[0] /= n
    m[1:] /= 0.5 * n
    return _t_antiderivative_lower(n, t) @ m, _t_antiderivative_upper(n, t) @ m


@dataclass(frozen=True)
class SpectralOperators:
    """Precomputed order-N operator set: weights, W matrices, analysis matrix."""

    order: int
    weights: np.ndarray
    antideriv_lower: np.ndarray
    antideriv_upper: np.ndarray
    analysis: np.ndarray

    def __post_init__(self):
        for arr in (self.weights, self.antideriv_lower,
                    self.antideriv_upper, self.analysis):
            arr.setflags(write=False)


_op_cache: dict[int, SpectralOperators] = {}
_op_lock = threading.Lock()


def spectral_operators(n: int) -> SpectralOperators:
    """Shared, immutable operator set for order N (write-once cache)."""
    ops = _op_cache.get(n)
    if ops is None:
        lower, upper = antideriv_matrices(n)
        ops = SpectralOperators(order=n,
                                weights=gauss_cheb_weights(n),
                                antideriv_lower=lower,
                                antideriv_upper=upper,
                                analysis=analysis_matrix(n))
        with _op_lock:
            ops = _op_cache.setdefault(n, ops)
    return ops


def integrate_interval(grid: ChebGrid, values: np.ndarray) -> float:
    """Definite integral over [a, b] from samples at the mapped nodes."""
    values = np.asarray(values, dtype=float)
    w = spectral_operators(grid.order).weights
    return float(grid.halfwidth * (w @ values))


@dataclass(frozen=True)
class RationalMap:
    """Bijection of (-1, 1) onto (0, inf):  r = scale*(1+t)/(1-t)."""

    scale: float

    def __post_init__(self):
        if self.scale <= 0.0:
            raise ValueError("scale must be positive")

    def forward(self, t):
        t = np.asarray(t, dtype=float)
        return self.scale * (1.0 + t) / (1.0 - t)

    def jacobian(self, t):
        """dr/dt = 2*scale/(1-t)^2."""
        t = np.asarray(t, dtype=float)
        return 2.0 * self.scale / (1.0 - t) ** 2


def rational_map_nodes(mapping: RationalMap, grid: ChebGrid) -> tuple[np.ndarray, np.ndarray]:
    """Mapped nodes and Jacobian factors for improper integrals on [0, inf).

    With (r_j, J_j) = rational_map_nodes(...), int_0^inf f(r) dr is
    approximated by sum_j w_j J_j f(r_j).
    """
    t = grid.ref_nodes
    return mapping.forward(t), mapping.jacobian(t)


def integrate_halfline(mapping: RationalMap, n: int, f) -> float:
    """Integrate f over [0, inf) through the rational map at order N."""
    grid = make_grid(n)
    r, jac = rational_map_nodes(mapping, grid)
    w = spectral_operators(n).weights
    return float(w @ (jac * f(r)))
