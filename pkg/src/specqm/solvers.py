"""Generic collocation solvers on a single Chebyshev interval.

Each solver assembles one dense linear system out of the constant
antiderivative matrices and the appropriate weight family, solves it,
and returns the solution on the grid together with conditioning
diagnostics.  Conventions used throughout (h = (b-a)/2, column scaling
written as a Schur product with a row-broadcast vector):

    running integral from a:   int_a^{x_i} f = h * (W_lower @ [f])_i
    running integral to b:     int_{x_i}^b f = h * (W_upper @ [f])_i
    full-interval quadrature:  int_a^b    f = h * (w . [f])

Second-order problems are reduced to double running integrals, so the
boundary data enters only through the right-hand side and no boundary
rows have to be patched into the matrices.
"""

from __future__ import annotations

import numpy as np

from .chebyshev import ChebGrid
from .linsys import SolveReport, solve_dense
from .quadrature import spectral_operators
from .singular import cauchy_weights, log_weights

_MIN_SECOND_ORDER = 3  # double-integration matrices underdetermined below this


def kernel_on_grid(grid: ChebGrid, kernel) -> np.ndarray:
    """Sample k(x, s) on the grid: K[i, j] = k(x_i, x_j)."""
    if callable(kernel):
        xi = grid.nodes[:, None]
        xj = grid.nodes[None, :]
        return np.asarray(kernel(xi, xj), dtype=float) * np.ones((grid.order, grid.order))
    k = np.asarray(kernel, dtype=float)
    if k.shape != (grid.order, grid.order):
        raise ValueError("kernel matrix shape must match the grid order")
    return k


def _as_mesh(grid: ChebGrid, f) -> np.ndarray:
    if callable(f):
        return np.asarray(f(grid.nodes), dtype=float) * np.ones(grid.order)
    arr = np.asarray(f, dtype=float)
    if arr.ndim == 0:
        return np.full(grid.order, float(arr))
    if arr.shape != (grid.order,):
        raise ValueError("mesh vector length must equal the grid order")
    return arr


def _require_order(grid: ChebGrid, minimum: int) -> None:
    if grid.order < minimum:
        raise ValueError(f"grid order must be >= {minimum} for this solver")


def solve_ode_ivp(p, q, y_a: float, dy_a: float, grid: ChebGrid):
    """Solve y'' + p(x) y = q(x) with y(a), y'(a) given.

    Returns (report, dy) where report.solution holds the node values of y
    and dy those of y', recovered from the once-integrated equation.
    """
    _require_order(grid, _MIN_SECOND_ORDER)
    ops = spectral_operators(grid.order)
    h = grid.halfwidth
    pv = _as_mesh(grid, p)
    qv = _as_mesh(grid, q)
    wl = ops.antideriv_lower
    double = h * h * (wl @ (wl * pv[None, :]))
    a = np.eye(grid.order) + double
    rhs = (y_a * np.ones(grid.order)
           + dy_a * (grid.nodes - grid.a)
           + h * h * (wl @ (wl @ qv)))
    report = solve_dense(a, rhs)
    y = report.solution
    dy = dy_a - h * (wl @ (pv * y)) + h * (wl @ qv)
    return report, dy


def solve_ode_mixed(p, q, y_a: float, dy_b: float, grid: ChebGrid) -> SolveReport:
    """Solve y'' + p(x) y = q(x) with y(a) and y'(b) given."""
    _require_order(grid, _MIN_SECOND_ORDER)
    ops = spectral_operators(grid.order)
    h = grid.halfwidth
    pv = _as_mesh(grid, p)
    qv = _as_mesh(grid, q)
    wl, wu = ops.antideriv_lower, ops.antideriv_upper
    a = np.eye(grid.order) - h * h * (wl @ (wu * pv[None, :]))
    rhs = (y_a * np.ones(grid.order)
           + dy_b * (grid.nodes - grid.a)
           - h * h * (wl @ (wu @ qv)))
    return solve_dense(a, rhs)


def solve_volterra(kernel, f, lam: float, grid: ChebGrid,
                   direction: str = "lower") -> SolveReport:
    """Volterra equation of the second kind.

    direction="lower": y(x) - lam * int_a^x k(x,s) y(s) ds = f(x)
    direction="upper": y(x) - lam * int_x^b k(x,s) y(s) ds = f(x)
    """
    ops = spectral_operators(grid.order)
    k = kernel_on_grid(grid, kernel)
    fv = _as_mesh(grid, f)
    if direction == "lower":
        w = ops.antideriv_lower
    elif direction == "upper":
        w = ops.antideriv_upper
    else:
        raise ValueError("direction must be 'lower' or 'upper'")
    a = np.eye(grid.order) - lam * grid.halfwidth * (k * w)
    return solve_dense(a, fv)


def solve_fredholm(kernel, f, lam: float, grid: ChebGrid) -> SolveReport:
    """Fredholm equation of the second kind, Nystrom-style on the mesh."""
    ops = spectral_operators(grid.order)
    k = kernel_on_grid(grid, kernel)
    fv = _as_mesh(grid, f)
    a = np.eye(grid.order) - lam * grid.halfwidth * (k * ops.weights[None, :])
    return solve_dense(a, fv)


def solve_semicontinuous(kernel_lower, kernel_upper, f, lam: float,
                         grid: ChebGrid) -> SolveReport:
    """Fredholm solve for a kernel given by k1 below and k2 above the diagonal."""
    ops = spectral_operators(grid.order)
    k1 = kernel_on_grid(grid, kernel_lower)
    k2 = kernel_on_grid(grid, kernel_upper)
    a = np.eye(grid.order) - lam * grid.halfwidth * (
        k1 * ops.antideriv_lower + k2 * ops.antideriv_upper)
    return solve_dense(a, _as_mesh(grid, f))


def solve_cauchy_singular(kernel, f, lam: float, z: float,
                          grid: ChebGrid) -> SolveReport:
    """Singular equation y(x) - lam * PV int_a^b k(x,s)/(s-z) y(s) ds = f(x).

    The Cauchy kernel is invariant under the affine map, so no interval
    factor appears; the weights carry the whole integral.  Only the
    particular solution is returned (the homogeneous solutions of a
    singular equation are not captured by this discretization).
    """
    if not grid.a < z < grid.b:
        raise ValueError("singularity must lie strictly inside (a, b)")
    tau = float(grid.to_reference(z))
    w, _ = cauchy_weights(grid.order, tau)
    k = kernel_on_grid(grid, kernel)
    a = np.eye(grid.order) - lam * (k * w[None, :])
    return solve_dense(a, _as_mesh(grid, f))


def solve_log_singular(kernel, f, lam: float, z: float,
                       grid: ChebGrid) -> SolveReport:
    """Weakly singular equation with kernel k(x,s) log|s-z|, a <= z <= b.

    The affine map contributes a log(h) shift on top of the dedicated
    weights: log|s-z| = log|t-tau| + log(h) in reference coordinates.
    """
    if not grid.a <= z <= grid.b:
        raise ValueError("singularity must lie inside [a, b]")
    ops = spectral_operators(grid.order)
    tau = float(np.clip(grid.to_reference(z), -1.0, 1.0))
    h = grid.halfwidth
    wz = ops.weights * np.log(h) + log_weights(grid.order, tau)
    k = kernel_on_grid(grid, kernel)
    a = np.eye(grid.order) - lam * h * (k * wz[None, :])
    return solve_dense(a, _as_mesh(grid, f))


def solve_integrodiff_1(p, q, kernel, y_a: float, grid: ChebGrid) -> SolveReport:
    """First-order integro-differential equation with a full-interval coupling:

        y'(x) + p(x) y(x) = q(x) + int_a^b k(x,s) y(s) ds,   y(a) given.

    Integrating once from a gives one running integral of the unknown and
    one running integral of the quadrature term, hence the h * W_lower and
    h^2 * W_lower @ (K . w) blocks.
    """
    ops = spectral_operators(grid.order)
    h = grid.halfwidth
    pv = _as_mesh(grid, p)
    qv = _as_mesh(grid, q)
    k = kernel_on_grid(grid, kernel)
    wl = ops.antideriv_lower
    a = (np.eye(grid.order)
         + h * (wl * pv[None, :])
         - h * h * (wl @ (k * ops.weights[None, :])))
    rhs = y_a * np.ones(grid.order) + h * (wl @ qv)
    return solve_dense(a, rhs)


def solve_integrodiff_2(p, kernel, y_a: float, dy_a: float,
                        grid: ChebGrid) -> SolveReport:
    """Second-order equation with an exchange-type coupling:

        y''(x) + p(x) y(x) = int_a^b k(x,s) y(s) ds,   y(a), y'(a) given.

    Double integration of both sides: the local term gets the usual
    h^2 * W @ (W . p) block, the exchange term a double running integral
    of the full-interval quadrature, h^3 * W @ W @ (K . w).
    """
    _require_order(grid, _MIN_SECOND_ORDER)
    ops = spectral_operators(grid.order)
    h = grid.halfwidth
    pv = _as_mesh(grid, p)
    k = kernel_on_grid(grid, kernel)
    wl = ops.antideriv_lower
    a = (np.eye(grid.order)
         + h * h * (wl @ (wl * pv[None, :]))
         - h ** 3 * (wl @ (wl @ (k * ops.weights[None, :]))))
    rhs = y_a * np.ones(grid.order) + dy_a * (grid.nodes - grid.a)
    return solve_dense(a, rhs)
