"""Momentum-space scattering and bound states.

The half-line momentum integrals are compressed onto the reference
Chebyshev mesh by the rational map k = scale*(1+t)/(1-t).  Expanding
potential and K-matrix in the cardinal basis makes the principal-value
propagator integral collapse onto the diagonal (one Cauchy weight per
node), so solving the scattering equation costs a single dense solve.
Bound states come from a symmetric eigenproblem in the same variables,
and the point-charge problem is handled directly with the dedicated
log-singular weights, no subtraction scheme required.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import special as sp
from scipy.optimize import brentq

from .chebyshev import ChebGrid, cardinal_row, make_grid
from .linsys import SolveReport, solve_dense
from .potentials import COULOMB, PotentialModel
from .quadrature import RationalMap, rational_map_nodes, spectral_operators
from .singular import cauchy_weights, log_weights
from .special import legendre_p_table

POLE_COND = 1e12


@dataclass(frozen=True)
class MomentumMesh:
    """Mapped momentum nodes; tau is the on-shell image for scattering meshes."""

    order: int
    scale: float
    grid: ChebGrid
    nodes: np.ndarray
    tau: float | None = None

    def __post_init__(self):
        self.nodes.setflags(write=False)


def scattering_mesh(n: int, p: float, sigma: float = 1.0) -> MomentumMesh:
    """Mesh k = p*sigma*(1+t)/(1-t); the on-shell point sits at t = tau."""
    if p <= 0.0 or sigma <= 0.0:
        raise ValueError("momentum and slope must be positive")
    grid = make_grid(n)
    nodes, _ = rational_map_nodes(RationalMap(p * sigma), grid)
    return MomentumMesh(order=n, scale=p * sigma, grid=grid, nodes=nodes,
                        tau=(1.0 - sigma) / (1.0 + sigma))


def bound_mesh(n: int, model_range: float, sigma: float = 1.0) -> MomentumMesh:
    """Mesh k = (sigma/a)*(1+t)/(1-t) used on the imaginary momentum axis."""
    if sigma <= 0.0:
        raise ValueError("slope must be positive")
    grid = make_grid(n)
    scale = sigma / model_range
    nodes, _ = rational_map_nodes(RationalMap(scale), grid)
    return MomentumMesh(order=n, scale=scale, grid=grid, nodes=nodes)


def _projection_closed_form(model: PotentialModel, k, kp):
    a, s = model.a, model.s
    x = a * (np.asarray(k, dtype=float) + np.asarray(kp, dtype=float))
    y = a * (np.asarray(k, dtype=float) - np.asarray(kp, dtype=float))
    if model.kind == "exponential":
        return -2.0 * s * a / ((1.0 + x * x) * (1.0 + y * y))
    if model.kind == "hulthen":
        num = np.real(sp.digamma(1.0 + 1j * x)) - np.real(sp.digamma(1.0 + 1j * y))
        return -2.0 * s * a * num / (x * x - y * y)
    if model.kind == "morse":
        e = np.exp(model.d / a)
        return (-4.0 * s * a * e / ((1.0 + x * x) * (1.0 + y * y))
                + 0.25 * s * a * e * e
                / ((1.0 + 0.25 * x * x) * (1.0 + 0.25 * y * y)))
    raise ValueError(f"no closed s-wave form for kind {model.kind!r}")


def coulomb_projection(model: PotentialModel, l: int, k, kp):
    """Point-charge projection q*Q_l(z)/(k k'), log-singular on the diagonal."""
    k = np.asarray(k, dtype=float)
    kp = np.asarray(kp, dtype=float)
    if np.any(k <= 0) or np.any(kp <= 0):
        raise ValueError("momenta must be positive")
    if np.any(k == kp):
        raise ValueError("diagonal k = k' is log-divergent; use the dedicated "
                         "log-singular solver")
    z = (k * k + kp * kp) / (2.0 * k * kp)
    p_tab = legendre_p_table(l, z)
    w = np.zeros_like(z)
    for m in range(1, l + 1):
        w += p_tab[m - 1] * p_tab[l - m] / m
    q_leg = p_tab[l] * 0.5 * np.log((z + 1.0) / (z - 1.0)) - w
    return model.coulomb_q * q_leg / (k * kp)


def projection_quadrature(model: PotentialModel, l: int, k: float, kp: float,
                          n: int = 256) -> float:
    """Radial quadrature of the partial-wave projection (generic fallback).

    Integrates j_l(k'r) * 2muV(r) * j_l(kr) * r^2 through the rational map;
    reliable for momenta that the mapped mesh resolves (k*a of order one).
    """
    grid = make_grid(n)
    r, jac = rational_map_nodes(RationalMap(model.a), grid)
    w = spectral_operators(n).weights
    vals = (sp.spherical_jn(l, kp * r) * model.short_range_2mu_v(r)
            * sp.spherical_jn(l, k * r) * r * r)
    return float(w @ (jac * vals))


def potential_projection(model: PotentialModel, l: int, k, kp):
    """Partial-wave momentum projection U_l(k, k') of 2muV.

    Closed forms cover the s-wave short-range shapes and the point
    charge at any l; other combinations fall back to radial quadrature.
    """
    if model.kind == COULOMB:
        return coulomb_projection(model, l, k, kp)
    if model.has_coulomb:
        short = (_projection_closed_form(model, k, kp) if l == 0
                 else projection_quadrature(model, l, float(k), float(kp)))
        return short + coulomb_projection(model, l, k, kp)
    if l == 0:
        return _projection_closed_form(model, k, kp)
    return projection_quadrature(model, l, float(k), float(kp))


def _projection_matrix(model: PotentialModel, l: int, nodes: np.ndarray) -> np.ndarray:
    ki = nodes[:, None]
    kj = nodes[None, :]
    if l == 0 or model.kind == COULOMB:
        return np.asarray(potential_projection(model, l, ki, kj), dtype=float)
    out = np.empty((nodes.size, nodes.size))
    for i, k in enumerate(nodes):
        for j, kp in enumerate(nodes):
            out[i, j] = projection_quadrature(model, l, k, kp)
    return out


@dataclass(frozen=True)
class KMatrixResult:
    """Off-shell K-matrix expansion and its on-shell reductions."""

    mesh: MomentumMesh
    k_matrix: np.ndarray          # cardinal-basis coefficients <k_i|K|k_j>
    half_shell: np.ndarray        # <k_i|K|p>
    on_shell: float               # <p|K|p>
    tan_delta: float
    cond: float

    @property
    def pole(self) -> bool:
        return self.cond > POLE_COND


def kmatrix_solve(model: PotentialModel, l: int, p: float, n: int = 64,
                  sigma: float = 1.0) -> KMatrixResult:
    """Standing-wave scattering solve: (1 + U Gamma) K = U.

    Gamma is the diagonalized principal-value propagator built from the
    Cauchy weights at the on-shell image tau; tan(delta) = -p <p|K|p>.
    """
    if model.has_coulomb:
        raise ValueError("momentum-space continuum with a Coulomb tail is not "
                         "supported; use the configuration-space solvers")
    mesh = scattering_mesh(n, p, sigma)
    t = mesh.grid.ref_nodes
    tau = mesh.tau
    u = _projection_matrix(model, l, mesh.nodes)
    omega, _ = cauchy_weights(n, tau)
    gamma = (4.0 * p * sigma**3 / (np.pi * (1.0 + sigma) ** 2)
             * omega / (1.0 - t * tau) * ((1.0 + t) / (1.0 - t)) ** 2)
    a = np.eye(n) + u * gamma[None, :]
    rep = solve_dense(a, u)
    kmat = rep.solution
    g_tau = cardinal_row(mesh.grid, tau)
    half = kmat @ g_tau
    on_shell = float(g_tau @ half)
    return KMatrixResult(mesh=mesh, k_matrix=kmat, half_shell=half,
                         on_shell=on_shell, tan_delta=-p * on_shell,
                         cond=rep.cond)


@dataclass(frozen=True)
class TMatrixResult:
    """Outgoing-wave T-matrix from the K-matrix via off-shell unitarity."""

    t_matrix: np.ndarray          # complex <k_i|T(p^2 + i0)|k_j>
    on_shell_amplitude: complex   # e^(i delta) sin(delta)
    tan_delta: float

    @property
    def unitarity_defect(self) -> float:
        """|Im(1/amplitude) + 1|; zero for an exactly unitary amplitude."""
        return abs(np.imag(1.0 / self.on_shell_amplitude) + 1.0)


def tmatrix_from_k(result: KMatrixResult, p: float) -> TMatrixResult:
    """Convert the standing-wave solution to the outgoing T-matrix."""
    k_on = result.on_shell
    denom = 1.0 + 1j * p * k_on
    if abs(denom) < 1e-14:
        raise ArithmeticError("T-matrix pole: 1 + i p K vanishes on shell")
    tmat = (result.k_matrix
            - 1j * p * np.outer(result.half_shell, result.half_shell) / denom)
    amplitude = -p * k_on / denom
    return TMatrixResult(t_matrix=tmat, on_shell_amplitude=complex(amplitude),
                         tan_delta=result.tan_delta)


def bound_state_eigen(model: PotentialModel, l: int, kappa: float, n: int = 64,
                      sigma: float = 1.0) -> np.ndarray:
    """Eigenvalues lambda(kappa) of the symmetrized bound-state kernel.

    A bound state sits where the largest eigenvalue equals one.  The
    kernel is real symmetric by construction, so the spectrum is real.
    """
    if kappa <= 0.0:
        raise ValueError("kappa must be positive")
    if model.has_coulomb:
        raise ValueError("use the log-singular point-charge solver for Coulomb")
    mesh = bound_mesh(n, model.a, sigma)
    t = mesh.grid.ref_nodes
    w = spectral_operators(n).weights
    u = _projection_matrix(model, l, mesh.nodes)
    scale = np.sqrt(w) / (1.0 - t) * mesh.nodes / np.hypot(kappa, mesh.nodes)
    m = -(4.0 * sigma / (model.a * np.pi)) * (scale[:, None] * u * scale[None, :])
    return np.linalg.eigvalsh(m)


def momentum_bound_state(model: PotentialModel, l: int = 0,
                         bracket: tuple[float, float] | None = None,
                         n: int = 64, sigma: float = 1.0) -> float:
    """kappa at which the largest kernel eigenvalue crosses one."""

    def gap(kappa: float) -> float:
        return float(bound_state_eigen(model, l, kappa, n, sigma)[-1]) - 1.0

    if bracket is None:
        lo, hi = 1e-4 / model.a, 1.0 / model.a
        while gap(hi) > 0.0 and hi < 1e4 / model.a:
            lo, hi = hi, 2.0 * hi
        bracket = (lo, hi)
    lo, hi = bracket
    if np.sign(gap(lo)) == np.sign(gap(hi)):
        raise ValueError("bracket does not straddle lambda(kappa) = 1")
    return float(brentq(gap, lo, hi, xtol=1e-300, rtol=1e-14))


def hydrogen_kernel(l: int, x: float, n: int = 64, sigma: float = 1.0) -> np.ndarray:
    """Point-charge bound-state kernel at dimensionless kappa*a = x.

    The log-singular part of the Legendre-function kernel is integrated
    with the dedicated weights at each row's node; the remaining regular
    part (including the log(1 - t_i t_j) piece produced by the rational
    change of variables) uses the plain weights.  All entries are finite,
    including the diagonal.
    """
    num = _hydrogen_numerator(l, n, sigma)
    xi = bound_mesh(n, 1.0, sigma).nodes
    d = 1.0 / np.sqrt(xi * xi + x * x)
    return d[:, None] * num * d[None, :]


def _hydrogen_numerator(l: int, n: int, sigma: float) -> np.ndarray:
    mesh = bound_mesh(n, 1.0, sigma)
    t = mesh.grid.ref_nodes
    xi = mesh.nodes
    w = spectral_operators(n).weights
    z = (xi[:, None] ** 2 + xi[None, :] ** 2) / (2.0 * np.outer(xi, xi))
    np.fill_diagonal(z, 1.0)
    p_tab = legendre_p_table(l, z)
    w_leg = np.zeros_like(z)
    for m in range(1, l + 1):
        w_leg += p_tab[m - 1] * p_tab[l - m] / m
    p_leg = p_tab[l]
    log_reg = np.log(1.0 - np.outer(t, t))
    omega = np.empty((n, n))
    for i in range(n):
        omega[i] = log_weights(n, t[i])
    return (4.0 * sigma / np.pi) * (
        w[None, :] * (p_leg * log_reg - w_leg) - p_leg * omega) / (1.0 - t[None, :]) ** 2


def hydrogen_bound_states(l: int, n: int = 64, sigma: float = 1.0,
                          x_min: float = 0.22, x_max: float = 1.2,
                          scan: int = 160) -> np.ndarray:
    """Bound-state values x = kappa*a of the point-charge problem in [x_min, x_max].

    Roots of det(1 - M(x^2)) located by a sign scan over 1/x (where the
    spectrum is equally spaced) and polished by root bracketing; returned
    in decreasing order, so index m corresponds to x = 1/(m + l + 1).
    """
    num = _hydrogen_numerator(l, n, sigma)
    xi = bound_mesh(n, 1.0, sigma).nodes

    def scaled_det(x: float) -> float:
        d = 1.0 / np.sqrt(xi * xi + x * x)
        sign, logdet = np.linalg.slogdet(np.eye(n) - d[:, None] * num * d[None, :])
        return sign * np.exp(logdet / n)

    inv = np.linspace(1.0 / x_max, 1.0 / x_min, scan)
    vals = [scaled_det(1.0 / m) for m in inv]
    roots = []
    for i in range(1, scan):
        if np.sign(vals[i - 1]) != np.sign(vals[i]):
            root_inv = brentq(lambda m: scaled_det(1.0 / m), inv[i - 1], inv[i],
                              xtol=1e-300, rtol=1e-14)
            roots.append(1.0 / root_inv)
    return np.array(sorted(roots, reverse=True))


def scattering_length_momentum(model: PotentialModel, n: int = 64,
                               sigma: float = 1.0) -> tuple[float, SolveReport]:
    """s-wave scattering length as a zero-energy momentum-space solve.

    A = [G] . [X] with (1 + U Gamma(0)) X = U G and G the cardinal values
    at the k = 0 endpoint; standard sign convention (A = -lim delta/p).
    """
    if model.has_coulomb:
        raise ValueError("momentum-space Coulomb scattering lengths are not "
                         "supported; use the configuration-space solvers")
    mesh = bound_mesh(n, model.a, sigma)
    t = mesh.grid.ref_nodes
    w = spectral_operators(n).weights
    u = _projection_matrix(model, 0, mesh.nodes)
    gamma0 = (4.0 * sigma / (np.pi * model.a)) * w / (1.0 - t) ** 2
    g = cardinal_row(mesh.grid, -1.0)
    rep = solve_dense(np.eye(n) + u * gamma0[None, :], u @ g)
    return float(g @ rep.solution), rep
