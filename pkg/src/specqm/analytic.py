"""Exact closed-form benchmarks for the model potentials.

s-wave phase shifts, scattering lengths and bound-state conditions for
the exponential, Hulthen and Morse shapes plus the point-charge Coulomb
case, used as the independent reference when measuring solver errors.

Conventions: delta(s, xi) is the continuum phase at dimensionless
momentum xi = p*a; scattering lengths follow A = -lim delta/p (so a weak
attractive well gives A < 0).  The corresponding closed forms here are
the sign-flipped versions of the traditional +lim delta/xi convention,
with the Hulthen digamma signs fixed to reproduce the correct Born tail
A/a -> -2*zeta(3)*s.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import special as sp
from scipy.optimize import brentq

from .potentials import COULOMB, EXPONENTIAL, HULTHEN, MORSE, PotentialModel
from .special import (
    bessel_j_complex_order,
    kummer_m,
    legendre_pq,
    log_gamma_complex,
    tricomi_u,
)

EULER_GAMMA = 0.5772156649015329


@dataclass(frozen=True)
class ExactResult:
    """Closed-form value plus branch/pole diagnostics."""

    value: float
    formula: str
    tan_value: float | None = None
    near_pole: bool = False


def _morse_z(model: PotentialModel) -> float:
    return 2.0 * np.exp(model.d / model.a) * np.sqrt(abs(model.s))


def exact_phase(model: PotentialModel, xi: float, l: int = 0) -> ExactResult:
    """s-wave phase shift delta(s, xi); Coulomb gives the pure Coulomb phase.

    Phases are reported as the principal imaginary-log/arg value; use the
    tan_value field for branch-insensitive comparisons.
    """
    if xi <= 0.0:
        raise ValueError("momentum must be positive")
    s = model.s
    if model.kind == EXPONENTIAL:
        if s == 0.0:
            delta = 0.0
        else:
            nu = 2j * xi
            w = (np.log(bessel_j_complex_order(nu, 2.0 * np.sqrt(s)))
                 + log_gamma_complex(1.0 + 2j * xi))
            delta = float(np.imag(w) - xi * np.log(s))
        tag = "exponential-phase"
    elif model.kind == HULTHEN:
        if s == 0.0:
            delta = 0.0
        else:
            root = np.sqrt(complex(s - xi * xi))
            w = (log_gamma_complex(1.0 + 2j * xi)
                 + log_gamma_complex(root - 1j * xi)
                 + log_gamma_complex(-root - 1j * xi))
            delta = float(np.imag(w))
        tag = "hulthen-phase"
    elif model.kind == MORSE:
        if s == 0.0:
            delta = 0.0
        elif s > 0.0:
            m = kummer_m(complex(0.5 - np.sqrt(s), xi), 1.0 + 2j * xi,
                         complex(_morse_z(model)))
            delta = float(np.angle(m))
        else:
            z = _morse_z(model)
            m = kummer_m(complex(0.5, xi - np.sqrt(-s)), 1.0 + 2j * xi,
                         complex(0.0, z))
            delta = float(np.angle(m) - 0.5 * z)
        tag = "morse-phase"
    elif model.kind == COULOMB:
        delta = float(np.imag(log_gamma_complex(l + 1.0 - 1j / xi)))
        tag = "coulomb-phase"
    else:  # pragma: no cover
        raise ValueError(model.kind)
    return ExactResult(value=delta, formula=tag, tan_value=float(np.tan(delta)))


def exact_scattering_length(model: PotentialModel) -> ExactResult:
    """Closed-form s-wave scattering length in units of the range."""
    s = model.s
    a = model.a
    if s == 0.0:
        return ExactResult(value=0.0, formula="free")
    if model.kind == EXPONENTIAL:
        rt = 2.0 * np.sqrt(s)
        j0 = sp.j0(rt)
        val = 2.0 * (EULER_GAMMA + np.log(np.sqrt(s))) - np.pi * sp.y0(rt) / j0
        pole = abs(j0) < 1e-8
        tag = "exponential-alen"
    elif model.kind == HULTHEN:
        rt = np.sqrt(s)
        val = EULER_GAMMA * 2.0 + float(np.real(sp.digamma(1.0 + rt))
                                        + np.real(sp.digamma(complex(1.0 - rt))))
        pole = abs(1.0 - rt) < 1e-8 or not np.isfinite(val)
        tag = "hulthen-alen"
    elif model.kind == MORSE:
        z = _morse_z(model)
        if s > 0.0:
            rt = np.sqrt(s)
            ratio = (sp.gamma(0.5 - rt) * tricomi_u(0.5 - rt, 1.0, z)
                     / kummer_m(0.5 - rt, 1.0, z))
            val = 2.0 * EULER_GAMMA + sp.digamma(0.5 - rt) + np.log(z) + ratio
            pole = not np.isfinite(val) or abs(val) > 1e10
        else:
            rt = 1j * np.sqrt(-s)
            with np.errstate(all="ignore"):
                ratio = (complex(sp.gamma(complex(0.5 - rt)))
                         * tricomi_u(complex(0.5 - rt), complex(1.0), 1j * z)
                         / kummer_m(complex(0.5 - rt), complex(1.0), 1j * z))
                val = float(np.real(2.0 * EULER_GAMMA
                                    + sp.digamma(complex(0.5 - rt))
                                    + np.log(1j * z) + ratio))
            pole = not np.isfinite(val)
        tag = "morse-alen"
    else:
        raise ValueError("no finite scattering length for a pure Coulomb tail")
    return ExactResult(value=float(val) * a, formula=tag, near_pole=bool(pole))


def exact_bound_condition(model: PotentialModel, x: float, l: int = 0,
                          n: int = 1) -> float:
    """Residual of the transcendental bound-state condition at x = kappa*a."""
    s = model.s
    if model.kind == EXPONENTIAL:
        return float(sp.jv(2.0 * x, 2.0 * np.sqrt(s)))
    if model.kind == HULTHEN:
        return float(x - (s - n * n) / (2.0 * n))
    if model.kind == MORSE:
        z = _morse_z(model)
        if s > 0.0:
            return float(kummer_m(0.5 + x - np.sqrt(s), 1.0 + 2.0 * x, z))
        return float(np.real(kummer_m(complex(0.5 + x, -np.sqrt(-s)),
                                      1.0 + 2.0 * x, complex(0.0, z))))
    if model.kind == COULOMB:
        return float(x - 1.0 / (n + l + 1.0))
    raise ValueError(model.kind)


def exact_bound_x(model: PotentialModel, l: int = 0, n: int = 1,
                  bracket: tuple[float, float] | None = None) -> float:
    """Root x = kappa*a of the exact bound-state condition.

    For the Hulthen and Coulomb shapes the condition is explicit; for the
    exponential and Morse shapes the transcendental equation is solved in
    the given bracket (ground state by default).
    """
    s = model.s
    if model.kind == HULTHEN:
        x = (s - n * n) / (2.0 * n)
        if x <= 0.0:
            raise ValueError("no bound state at this strength")
        return x
    if model.kind == COULOMB:
        return 1.0 / (n + l + 1.0)
    if bracket is None:
        if model.kind == EXPONENTIAL:
            # J_{2x}(2 sqrt(s)) = 0: the ground state sits below the
            # first positive zero of J_0
            hi = np.sqrt(max(s, 1e-12))
        else:
            hi = max(np.sqrt(abs(s)) - 0.5 + 0.2, 0.2)
        grid = np.linspace(1e-6, hi, 400)
        vals = [exact_bound_condition(model, x, l, n) for x in grid]
        for i in range(len(grid) - 1, 0, -1):
            if np.sign(vals[i - 1]) != np.sign(vals[i]):
                bracket = (grid[i - 1], grid[i])
                break
        else:
            raise ValueError("no root of the exact condition in the scan range")
    return float(brentq(lambda x: exact_bound_condition(model, x, l, n),
                        *bracket, xtol=1e-300, rtol=8.9e-16))


def exact_pole_strength(kind: str) -> float:
    """Strength s at which the s-wave scattering length has its first pole."""
    if kind == EXPONENTIAL:
        # first zero of J_0(2 sqrt(s))
        return float(brentq(lambda s: sp.j0(2.0 * np.sqrt(s)), 1.2, 1.7,
                            rtol=8.9e-16))
    if kind == HULTHEN:
        return 1.0
    if kind == MORSE:
        # Gamma(1/2 - sqrt(s)) pole
        return 0.25
    raise ValueError(kind)


def _hulthen_series(x: float, y: float, terms: int = 2000) -> float:
    """sum_{n>=1} n/((n^2+x^2)(n^2+y^2)) with a midpoint-integral tail."""
    n = np.arange(1, terms + 1, dtype=float)
    total = float(np.sum(n / ((n * n + x * x) * (n * n + y * y))))
    edge = terms + 0.5
    if abs(x * x - y * y) < 1e-9 * (1.0 + x * x):
        tail = 0.5 / (edge * edge + x * x)
    else:
        tail = (np.log((edge * edge + x * x) / (edge * edge + y * y))
                / (2.0 * (x * x - y * y)))
    return total + float(tail)


def exact_momentum_potential(model: PotentialModel, l: int, k: float,
                             kp: float) -> float:
    """Independent evaluation of the partial-wave momentum projection.

    Exponential and Morse use the elementary closed forms; Hulthen is
    summed as the real series (tail-corrected), which cross-checks the
    digamma representation used by the production solver; Coulomb is
    reassembled from the Legendre split.
    """
    a, s = model.a, model.s
    x = a * (k + kp)
    y = a * (k - kp)
    if model.kind == EXPONENTIAL:
        return -2.0 * s * a / ((1.0 + x * x) * (1.0 + y * y))
    if model.kind == HULTHEN:
        return -2.0 * s * a * _hulthen_series(x, y)
    if model.kind == MORSE:
        e = np.exp(model.d / a)
        return (-4.0 * s * a * e / ((1.0 + x * x) * (1.0 + y * y))
                + 0.25 * s * a * e * e
                / ((1.0 + 0.25 * x * x) * (1.0 + 0.25 * y * y)))
    if model.kind == COULOMB:
        z = (k * k + kp * kp) / (2.0 * k * kp)
        _, _, q = legendre_pq(l, z)
        return model.coulomb_q * q / (k * kp)
    raise ValueError(model.kind)
