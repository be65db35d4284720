"""Dedicated quadrature weights for Cauchy principal-value and log-singular integrals.

Two families of z-dependent weights on the interior Chebyshev mesh:

    PV int_{-1}^{1} f(t)/(t - z) dt      ~  sum_j  cauchy_w[j]  f(t_j),   |z| < 1
    int_{-1}^{1} f(t) log|t - z| dt      ~  sum_j  log_w[j]     f(t_j),   |z| <= 1

Both rules are exact when f is a polynomial of degree <= N-1.  The Cauchy
weights split into a polynomial part plus the cardinal function times
log[(1-z)/(1+z)]; the split form is what a general +-i*epsilon rule needs.
The log rule stays finite at z = +-1, where closed endpoint limits apply.

Sum-rule identities (f == 1) used throughout the tests:

    sum_j cauchy_w[j] = log[(1-z)/(1+z)]
    sum_j log_w[j]    = (1-z) log(1-z) + (1+z) log(1+z) - 2
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .chebyshev import (
    cardinal_row,
    chebyshev_t_row,
    chebyshev_u_row,
    make_grid,
)

_ENDPOINT_GUARD = 1e-12   # Cauchy PV integral is undefined at z = +-1
_ENDPOINT_SNAP = 1e-13    # treat |z| this close to 1 as the endpoint (log rule)


def _check_interior(z: float) -> float:
    z = float(z)
    if abs(z) >= 1.0 - _ENDPOINT_GUARD:
        raise ValueError("principal-value singularity too close to an endpoint")
    return z


def _poly_parts(nmax: int, z: float) -> np.ndarray:
    """Polynomial parts S_n(z) of the Cauchy integrals, n = 0..nmax.

    S_n = 2 U_{n-1}(z) - 4 sum_{i=2,4,...}^{n-1} U_{n-1-i}(z)/(i^2 - 1);
    odd-index terms drop out identically (odd Chebyshev polynomials have
    zero mean), which also disposes of the ill-defined i = 1 term.
    """
    s = np.zeros(nmax + 1)
    if nmax == 0:
        return s
    u = chebyshev_u_row(nmax, np.array([z]))[:, 0]
    n = np.arange(nmax + 1)
    s[1:] = 2.0 * u[n[1:] - 1]
    for i in range(2, nmax, 2):
        lo = i + 1
        s[lo:] -= 4.0 * u[: nmax + 1 - lo] / (i * i - 1.0)
    return s


def _cauchy_integrals(nmax: int, z: float) -> tuple[np.ndarray, np.ndarray, float]:
    """(I_n, S_n, L) where I_n = S_n + T_n(z)*L, L = log[(1-z)/(1+z)]."""
    s = _poly_parts(nmax, z)
    t = chebyshev_t_row(nmax + 1, np.array([z]))[:, 0]
    ell = np.log((1.0 - z) / (1.0 + z))
    return s + t * ell, s, ell


def cauchy_integral_t(n: int, z: float) -> float:
    """Principal value of int_{-1}^{1} T_n(t)/(t - z) dt in closed form."""
    if n < 0:
        raise ValueError("order must be non-negative")
    z = _check_interior(z)
    i, _, _ = _cauchy_integrals(n, z)
    return float(i[n])


def cauchy_weights(n: int, z: float) -> tuple[np.ndarray, np.ndarray]:
    """Principal-value weights and their regular (polynomial) part at z.

    Returns (w, w_reg) with w = w_reg + cardinal_j(z) * log[(1-z)/(1+z)].
    The regular part is what a general Cauchy rule with the singular term
    restored analytically uses.
    """
    if n < 1:
        raise ValueError("order must be >= 1")
    z = _check_interior(z)
    grid = make_grid(n)
    i_vals, s_vals, ell = _cauchy_integrals(n - 1, z)
    m = chebyshev_t_row(n, grid.ref_nodes)   # T_k(t_j)
    i_vals = i_vals.copy()
    s_vals = s_vals.copy()
    i_vals[0] *= 0.5
    s_vals[0] *= 0.5
    w = (2.0 / n) * (m.T @ i_vals)
    w_reg = (2.0 / n) * (m.T @ s_vals)
    return w, w_reg


def _log_integrals(nmax: int, z: float) -> np.ndarray:
    """J_n(z) = int T_n(t) log|t-z| dt for n = 0..nmax, interior z."""
    i_vals, _, _ = _cauchy_integrals(nmax + 1, z)
    lm = np.log(abs(1.0 - z))
    lp = np.log(abs(1.0 + z))
    j = np.empty(nmax + 1)
    j[0] = lm + lp - i_vals[1]
    if nmax >= 1:
        j[1] = 0.25 * ((lm - lp) - i_vals[2])
    for k in range(3, nmax + 2):          # k = 1-based index, order k-1
        j[k - 1] = (-(lm - (-1.0) ** k * lp) / (k * (k - 2.0))
                    - i_vals[k] / (2.0 * k)
                    + i_vals[k - 2] / (2.0 * (k - 2.0)))
    return j


def _log_integrals_endpoint(nmax: int, sign: int) -> np.ndarray:
    """Endpoint limits J_n(+-1), finite although the Cauchy integrals diverge."""
    s = _poly_parts(nmax + 1, float(sign))
    log2 = np.log(2.0)
    j = np.empty(nmax + 1)
    j[0] = 2.0 * log2 - 2.0
    if nmax >= 1:
        j[1] = -1.0 if sign > 0 else 1.0
    for k in range(3, nmax + 2):
        j[k - 1] = (-(1.0 + (-1.0) ** (k - 1)) * log2 / (k * (k - 2.0))
                    - s[k] / (2.0 * k)
                    + s[k - 2] / (2.0 * (k - 2.0)))
    return j


def log_integral_t(n: int, z: float) -> float:
    """int_{-1}^{1} T_n(t) log|t - z| dt, valid for -1 <= z <= 1."""
    if n < 0:
        raise ValueError("order must be non-negative")
    z = float(z)
    if abs(z) > 1.0:
        raise ValueError("singularity outside [-1, 1]; use the regular rule")
    if 1.0 - abs(z) < _ENDPOINT_SNAP:
        return float(_log_integrals_endpoint(n, 1 if z > 0 else -1)[n])
    return float(_log_integrals(n, z)[n])


def log_weights(n: int, z: float) -> np.ndarray:
    """Weights for int f(t) log|t-z| dt with the singularity inside [-1, 1]."""
    if n < 1:
        raise ValueError("order must be >= 1")
    z = float(z)
    if abs(z) > 1.0:
        raise ValueError("singularity outside [-1, 1]; use the regular rule")
    if 1.0 - abs(z) < _ENDPOINT_SNAP:
        j = _log_integrals_endpoint(n - 1, 1 if z > 0 else -1)
    else:
        j = _log_integrals(n - 1, z)
    grid = make_grid(n)
    m = chebyshev_t_row(n, grid.ref_nodes)
    j = j.copy()
    j[0] *= 0.5
    return (2.0 / n) * (m.T @ j)


@dataclass(frozen=True)
class SingularWeightSet:
    """Bundle of singularity-location-dependent weights for one (N, z)."""

    order: int
    z: float
    cauchy: np.ndarray
    cauchy_regular: np.ndarray
    log: np.ndarray

    def __post_init__(self):
        for arr in (self.cauchy, self.cauchy_regular, self.log):
            arr.setflags(write=False)


def singular_weight_set(n: int, z: float) -> SingularWeightSet:
    """All three weight families at once (requires interior z)."""
    w, w_reg = cauchy_weights(n, z)
    return SingularWeightSet(order=n, z=float(z), cauchy=w,
                             cauchy_regular=w_reg, log=log_weights(n, z))


def cauchy_sum_rule(z: float) -> float:
    """Exact value of sum_j cauchy_w[j](z)."""
    return float(np.log((1.0 - z) / (1.0 + z)))


def log_sum_rule(z: float) -> float:
    """Exact value of sum_j log_w[j](z), continuous through z = +-1."""
    z = float(z)
    out = -2.0
    if z < 1.0:
        out += (1.0 - z) * np.log(1.0 - z)
    if z > -1.0:
        out += (1.0 + z) * np.log(1.0 + z)
    return out


def cardinal_at(n: int, z: float) -> np.ndarray:
    """Cardinal-function values G_j(z) on the order-N reference grid."""
    return cardinal_row(make_grid(n), z)
