"""Chebyshev polynomials, collocation grids, cardinal functions and differentiation.

Everything here works on the interior ("classical") Chebyshev mesh,
the zeros of T_N mapped affinely onto an arbitrary interval [a, b].
Nodes are stored in the natural descending order

    t_k = cos(pi*(k - 1/2)/N),   k = 1..N,

and all matrices produced by this package use that ordering consistently.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


def chebyshev_t(n: int, t):
    """First-kind Chebyshev polynomial T_n(t) by the three-term recurrence.

    Works for scalar or array ``t`` and for |t| > 1 as well (the upward
    recurrence is stable there, which is needed by the singular-quadrature
    polynomials evaluated near the interval ends).
    """
    if n < 0:
        raise ValueError("order must be non-negative")
    t = np.asarray(t, dtype=float)
    prev = np.ones_like(t)
    if n == 0:
        return prev if prev.shape else float(prev)
    cur = t.copy()
    for _ in range(n - 1):
        prev, cur = cur, 2.0 * t * cur - prev
    return cur if cur.shape else float(cur)


def chebyshev_u(n: int, t):
    """Second-kind Chebyshev polynomial U_n(t); U_{-1} = 0, U_0 = 1."""
    if n < -1:
        raise ValueError("order must be >= -1")
    t = np.asarray(t, dtype=float)
    prev = np.zeros_like(t)
    if n == -1:
        return prev if prev.shape else float(prev)
    cur = np.ones_like(t)
    for _ in range(n):
        prev, cur = cur, 2.0 * t * cur - prev
    return cur if cur.shape else float(cur)


def chebyshev_t_row(nmax: int, t: np.ndarray) -> np.ndarray:
    """Table T_n(t) for n = 0..nmax-1; shape (nmax, len(t))."""
    t = np.atleast_1d(np.asarray(t, dtype=float))
    out = np.empty((nmax, t.size))
    out[0] = 1.0
    if nmax > 1:
        out[1] = t
    for n in range(2, nmax):
        out[n] = 2.0 * t * out[n - 1] - out[n - 2]
    return out


def chebyshev_u_row(nmax: int, t: np.ndarray) -> np.ndarray:
    """Table U_n(t) for n = 0..nmax-1; shape (nmax, len(t))."""
    t = np.atleast_1d(np.asarray(t, dtype=float))
    out = np.empty((nmax, t.size))
    out[0] = 1.0
    if nmax > 1:
        out[1] = 2.0 * t
    for n in range(2, nmax):
        out[n] = 2.0 * t * out[n - 1] - out[n - 2]
    return out


@dataclass(frozen=True)
class ChebGrid:
    """Collocation grid of order N on [a, b].

    ``nodes`` are the images of cos(pi*(k-1/2)/N), k = 1..N, under the
    affine map onto [a, b]; they are strictly decreasing and strictly
    interior.  Immutable: safe to share between threads.
    """

    order: int
    a: float
    b: float
    nodes: np.ndarray
    ref_nodes: np.ndarray  # same nodes on the reference interval [-1, 1]

    def __post_init__(self):
        self.nodes.setflags(write=False)
        self.ref_nodes.setflags(write=False)

    @property
    def halfwidth(self) -> float:
        return 0.5 * (self.b - self.a)

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.b + self.a)

    def to_reference(self, x):
        """Map x in [a, b] to t in [-1, 1]."""
        return (2.0 * np.asarray(x, dtype=float) - self.a - self.b) / (self.b - self.a)

    def from_reference(self, t):
        """Map t in [-1, 1] to x in [a, b]."""
        return self.midpoint + self.halfwidth * np.asarray(t, dtype=float)


def make_grid(n: int, a: float = -1.0, b: float = 1.0) -> ChebGrid:
    """Build the order-N interior Chebyshev grid on [a, b]."""
    if n < 1:
        raise ValueError("grid order must be >= 1")
    if not a < b:
        raise ValueError("require a < b")
    k = np.arange(1, n + 1)
    t = np.cos(np.pi * (k - 0.5) / n)
    x = 0.5 * (b + a) + 0.5 * (b - a) * t
    return ChebGrid(order=n, a=float(a), b=float(b), nodes=x, ref_nodes=t)


def analysis_matrix(n: int) -> np.ndarray:
    """Matrix M with M[j, k] = T_j(t_k) = cos(pi*(k+1/2)*j/n), 0-based."""
    j = np.arange(n)[:, None]
    k = np.arange(n)[None, :]
    return np.cos(np.pi * (k + 0.5) * j / n)


def coeffs_from_values(grid: ChebGrid, values: np.ndarray) -> np.ndarray:
    """Spectral coefficients c_j = (2/N) sum_k T_{j-1}(t_k) f(t_k).

    The synthesis convention halves the first coefficient, so a constant
    function f = c yields coefficients (2c, 0, ..., 0).
    """
    values = np.asarray(values, dtype=float)
    n = grid.order
    if values.shape != (n,):
        raise ValueError("value array length must equal the grid order")
    return (2.0 / n) * analysis_matrix(n) @ values


def values_from_coeffs(grid: ChebGrid, coeffs: np.ndarray) -> np.ndarray:
    """Synthesize node values from spectral coefficients (first term halved)."""
    coeffs = np.asarray(coeffs, dtype=float)
    n = grid.order
    c = coeffs.copy()
    c[0] *= 0.5
    return analysis_matrix(n).T @ c


def cardinal(grid: ChebGrid, j: int, x) -> float | np.ndarray:
    """Cardinal polynomial for node j (1-based): 1 at node j, 0 at the others.

    Evaluated through the Chebyshev sum (2/N) sum' T_i(t_j) T_i(t); values
    outside [a, b] are the polynomial's natural extension.
    """
    n = grid.order
    if not 1 <= j <= n:
        raise ValueError("node index out of range")
    t = np.asarray(grid.to_reference(x), dtype=float)
    tj = grid.ref_nodes[j - 1]
    rows_t = chebyshev_t_row(n, np.atleast_1d(t))
    rows_j = chebyshev_t_row(n, np.array([tj]))[:, 0]
    rows_j[0] *= 0.5
    out = (2.0 / n) * rows_j @ rows_t
    return out if t.shape else float(out[0])


def cardinal_row(grid: ChebGrid, x) -> np.ndarray:
    """All N cardinal functions at points x; shape (N,) or (N, len(x))."""
    n = grid.order
    t = np.atleast_1d(np.asarray(grid.to_reference(x), dtype=float))
    rows_t = chebyshev_t_row(n, t)          # (n, m)
    m = analysis_matrix(n)                  # T_{i}(t_j)
    half = np.full(n, 2.0 / n)
    rows_t[0] *= 0.5
    out = half[:, None] * (m.T @ rows_t)    # (n_nodes, m)
    x_arr = np.asarray(x)
    return out if x_arr.shape else out[:, 0]


def interpolate(grid: ChebGrid, values: np.ndarray, x):
    """Evaluate the degree-(N-1) interpolant through the node values at x.

    Points outside [a, b] are permitted (polynomial extrapolation) but no
    accuracy is promised there.
    """
    values = np.asarray(values, dtype=float)
    if values.shape != (grid.order,):
        raise ValueError("value array length must equal the grid order")
    out = values @ cardinal_row(grid, x)
    x_arr = np.asarray(x)
    return out if x_arr.shape else float(out)


def interpolate2d(grid_x: ChebGrid, grid_y: ChebGrid, values: np.ndarray, x, y):
    """Tensor-product cardinal interpolation of a node matrix f(x_i, y_j)."""
    values = np.asarray(values, dtype=float)
    if values.shape != (grid_x.order, grid_y.order):
        raise ValueError("node matrix shape must match the two grid orders")
    gx = cardinal_row(grid_x, x)
    gy = cardinal_row(grid_y, y)
    out = gx.T @ values @ gy if gx.ndim == 2 else gx @ values @ gy
    return float(out) if np.ndim(out) == 0 else out


def diff_matrix(grid: ChebGrid) -> np.ndarray:
    """Spectral differentiation matrix: f'(x_i) = sum_j D[i, j] f(x_j).

    D = (2/N) sum' T'_{k}(t_i) T_{k}(t_j) with T'_k = k U_{k-1}, rescaled
    by 2/(b-a) for the general interval.
    """
    n = grid.order
    t = grid.ref_nodes
    tt = chebyshev_t_row(n, t)          # T_k(t_j), k rows
    uu = chebyshev_u_row(n, t)          # U_k(t_i)
    dt = np.zeros((n, n))               # T'_k(t_i)
    for k in range(1, n):
        dt[k] = k * uu[k - 1]
    tt = tt.copy()
    tt[0] *= 0.5
    d = (2.0 / n) * dt.T @ tt
    return d * (2.0 / (grid.b - grid.a))
