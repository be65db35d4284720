"""Special functions for the radial and momentum solvers.

Free-solution pairs at positive, zero and negative energy, with and
without a point-charge Coulomb field, plus the confluent-hypergeometric,
Legendre and complex-order Bessel routines the exact benchmark formulas
need.  Each pair carries its radial derivatives and obeys a fixed
Wronskian normalization that the tests enforce:

    positive energy, no charge:   f g' - g f' = -1   (f = rho*j_l, g = -rho*n_l)
    Coulomb continuum:            F G' - G F' = -1
    imaginary momentum:           h f' - f h' = +1   (unit Wronskian)
    zero energy Coulomb:          Theta Phi' - Phi Theta' = +1

Standard function families are delegated to scipy/mpmath; only the
assembly, normalization and derivative bookkeeping live here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath
import numpy as np
from scipy import special as sp


@dataclass(frozen=True)
class FreePair:
    """Regular/irregular solution pair and radial derivatives at one point."""

    f: float
    g: float
    df: float
    dg: float

    def wronskian_fg(self) -> float:
        """f g' - g f' (expected -1 for the continuum pairs)."""
        return self.f * self.dg - self.g * self.df

    def wronskian_hf(self) -> float:
        """g f' - f g' with g playing the decaying role (expected +1)."""
        return self.g * self.df - self.f * self.dg


def riccati_free(l: int, rho):
    """Riccati-Bessel pair f = rho*j_l(rho), g = -rho*n_l(rho).

    Accepts scalar or array rho > 0; derivatives are with respect to rho.
    """
    rho = np.asarray(rho, dtype=float)
    if np.any(rho <= 0.0):
        raise ValueError("rho must be positive")
    j = sp.spherical_jn(l, rho)
    dj = sp.spherical_jn(l, rho, derivative=True)
    y = sp.spherical_yn(l, rho)
    dy = sp.spherical_yn(l, rho, derivative=True)
    f = rho * j
    g = -rho * y
    df = j + rho * dj
    dg = -(y + rho * dy)
    if rho.shape:
        return f, g, df, dg
    return FreePair(float(f), float(g), float(df), float(dg))


def modified_riccati(l: int, x):
    """Modified pair f = x*i_l(x), h = (2/pi)*x*k_l(x); h f' - f h' = 1."""
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0.0):
        raise ValueError("argument must be positive")
    i = sp.spherical_in(l, x)
    di = sp.spherical_in(l, x, derivative=True)
    k = sp.spherical_kn(l, x)
    dk = sp.spherical_kn(l, x, derivative=True)
    f = x * i
    h = (2.0 / np.pi) * x * k
    df = i + x * di
    dh = (2.0 / np.pi) * (k + x * dk)
    if x.shape:
        return f, h, df, dh
    return FreePair(float(f), float(h), float(df), float(dh))


def _coulomb_point(l: int, eta: float, rho: float) -> tuple[float, float, float, float]:
    with mpmath.workdps(25):
        f0 = float(mpmath.coulombf(l, eta, rho))
        f1 = float(mpmath.coulombf(l + 1, eta, rho))
        g0 = float(mpmath.coulombg(l, eta, rho))
        g1 = float(mpmath.coulombg(l + 1, eta, rho))
    lp = l + 1
    r = math.sqrt(1.0 + (eta / lp) ** 2)
    s = lp / rho + eta / lp
    return f0, g0, s * f0 - r * f1, s * g0 - r * g1


def coulomb_fg(l: int, eta: float, rho) -> FreePair | tuple:
    """Coulomb wave functions F_l(eta, rho), G_l(eta, rho) and rho-derivatives.

    Derivatives come from the exact recurrence u_l' = S_{l+1} u_l -
    R_{l+1} u_{l+1}; the Wronskian F' G - F G' = 1 is checked at runtime
    and a failure is reported as non-convergence.
    """
    if np.ndim(rho) > 0:
        vals = [coulomb_fg(l, eta, r) for r in np.asarray(rho, dtype=float)]
        return (np.array([v.f for v in vals]), np.array([v.g for v in vals]),
                np.array([v.df for v in vals]), np.array([v.dg for v in vals]))
    rho = float(rho)
    if rho <= 0.0:
        raise ValueError("rho must be positive")
    if eta == 0.0:
        return riccati_free(l, rho)
    f, g, df, dg = _coulomb_point(l, eta, rho)
    wron = df * g - f * dg
    if not np.isfinite(wron) or abs(wron - 1.0) > 1e-7:
        raise ArithmeticError(
            f"Coulomb wave evaluation failed Wronskian check: W = {wron!r}")
    return FreePair(f, g, df, dg)


def zero_energy_coulomb(l: int, beta: float, r, z_sign: int):
    """Zero-energy pair (Phi, Theta) for charge sign z_sign, with derivatives.

    beta is the combined strength 2*mu*alpha*|Z| (inverse length); the
    z_sign = 0 case reduces to powers r^(l+1) and r^(-l)/(2l+1).
    Normalized so that Theta Phi' - Phi Theta' = 1.
    """
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0.0):
        raise ValueError("r must be positive")
    if beta < 0.0:
        raise ValueError("beta must be non-negative")
    nu = 2 * l + 1
    fact = float(math.factorial(nu))
    if z_sign == 0 or beta == 0.0:
        phi = r ** (l + 1)
        theta = r ** (-l) / nu
        dphi = (l + 1) * r ** l
        dtheta = 0.0 * r if l == 0 else -l * r ** (-l - 1) / nu
    else:
        zeta = 2.0 * np.sqrt(beta * r)
        half = 0.5 * zeta
        if z_sign > 0:
            cp = fact / beta ** (l + 1)
            ct = 2.0 * beta ** l / fact
            phi = cp * half * sp.iv(nu, zeta)
            theta = ct * half * sp.kv(nu, zeta)
            dphi = cp * beta * (sp.iv(nu, zeta) / zeta + sp.ivp(nu, zeta))
            dtheta = ct * beta * (sp.kv(nu, zeta) / zeta + sp.kvp(nu, zeta))
        else:
            cp = fact / beta ** (l + 1)
            ct = -np.pi * beta ** l / fact
            phi = cp * half * sp.jv(nu, zeta)
            theta = ct * half * sp.yv(nu, zeta)
            dphi = cp * beta * (sp.jv(nu, zeta) / zeta + sp.jvp(nu, zeta))
            dtheta = ct * beta * (sp.yv(nu, zeta) / zeta + sp.yvp(nu, zeta))
    if r.shape:
        return phi, theta, dphi, dtheta + 0.0 * r
    return FreePair(float(phi), float(theta), float(dphi), float(np.asarray(dtheta)))


def _check_neg_energy_args(l: int, eta_t: float) -> float:
    a = l + 1 + eta_t
    if abs(a - round(a)) < 1e-12 and round(a) <= 0:
        raise ValueError(
            "Coulomb propagator pole: l+1+eta is a non-positive integer, "
            "the negative-energy pair degenerates")
    return a


def neg_energy_coulomb(l: int, eta_t: float, x):
    """Negative-energy Coulomb pair on the imaginary momentum axis.

    f = C (2x)^(l+1) e^(-x) M(l+1+eta, 2l+2, 2x) with the signed
    normalization C = Gamma(l+1+eta)/(2 (2l+1)!), and h the matching
    Tricomi-U combination; h f' - f h' = 1 identically (the signed Gamma,
    rather than its absolute value, is what keeps the Wronskian at +1 for
    strongly attractive eta).  eta_t = mu*alpha*Z/kappa, x = kappa*r.
    """
    if np.ndim(x) > 0:
        vals = [neg_energy_coulomb(l, eta_t, xi) for xi in np.asarray(x, dtype=float)]
        return (np.array([v.f for v in vals]), np.array([v.g for v in vals]),
                np.array([v.df for v in vals]), np.array([v.dg for v in vals]))
    x = float(x)
    if x <= 0.0:
        raise ValueError("x must be positive")
    if eta_t == 0.0:
        return modified_riccati(l, x)
    a = _check_neg_energy_args(l, eta_t)
    b = 2 * l + 2
    c = sp.gamma(a) / (2.0 * math.factorial(2 * l + 1))
    z = 2.0 * x
    pref = (2.0 * x) ** (l + 1) * np.exp(-x)
    m0 = sp.hyp1f1(a, b, z)
    m1 = sp.hyp1f1(a + 1, b + 1, z)
    u0 = sp.hyperu(a, b, z)
    u1 = sp.hyperu(a + 1, b + 1, z)
    if not all(np.isfinite(v) for v in (m0, m1, u0, u1)):
        raise ArithmeticError("confluent hypergeometric evaluation failed")
    f = c * pref * m0
    h = pref * u0
    slope = (l + 1) / x - 1.0
    df = c * pref * (slope * m0 + 2.0 * (a / b) * m1)
    dh = pref * (slope * u0 - 2.0 * a * u1)
    return FreePair(f, h, df, dh)


def neg_coulomb_log_derivative(l: int, eta_t: float, x: float,
                               max_terms: int | None = None) -> float:
    """Logarithmic derivative h'(x)/h(x) of the decaying negative-energy
    Coulomb solution, by a continued fraction.

    The ratio U(a+1,b,z)/U(a,b,z) is the minimal-solution ratio of the
    three-term recurrence in a, hence its continued fraction converges;
    one contiguous relation converts it to the derivative.  Unlike the
    full pair, this stays well defined at the propagator poles
    (nonpositive integer l+1+eta), where only the regular solution's
    normalization degenerates.
    """
    if x <= 0.0:
        raise ValueError("x must be positive")
    a = l + 1 + eta_t
    b = 2 * l + 2
    z = 2.0 * x
    if max_terms is None:
        # a deeply negative first parameter needs the tail to start past
        # the turning point of the recurrence before it contracts
        max_terms = max(4096, 4 * int(abs(a)) + 512)

    def tail_eval(depth: int) -> float:
        r = 0.0
        for k in range(depth, 0, -1):
            ak = a + k - 1.0
            r = 1.0 / ((2.0 * (ak + 1.0) - b + z) - (ak + 1.0) * (ak + 2.0 - b) * r)
        return r

    rho_a = tail_eval(max(64, int(abs(a)) + 64))
    depth = 2 * max(64, int(abs(a)) + 64)
    while depth <= max_terms:
        nxt = tail_eval(depth)
        if abs(nxt - rho_a) <= 1e-15 * max(abs(nxt), 1e-300):
            rho_a = nxt
            break
        rho_a = nxt
        depth *= 2
    else:
        raise ArithmeticError("continued fraction for U ratio did not converge")
    # U(a,b,z) = z U(a+1,b+1,z) + (1+a-b) U(a+1,b,z)
    ratio_up = (1.0 - (1.0 + a - b) * rho_a) / z
    return (l + 1) / x - 1.0 - 2.0 * a * ratio_up


def kummer_m(a, b, x) -> float | complex:
    """Kummer confluent hypergeometric M(a, b, x); complex parameters allowed."""
    if isinstance(a, complex) or isinstance(b, complex) or isinstance(x, complex):
        with mpmath.workdps(30):
            val = mpmath.hyp1f1(a, b, x)
        return complex(val)
    if b <= 0 and b == round(b):
        raise ValueError("b must not be a non-positive integer")
    val = sp.hyp1f1(float(a), float(b), float(x))
    if not np.isfinite(val):
        raise ArithmeticError("Kummer series overflow or non-convergence")
    return float(val)


def tricomi_u(a, b, x) -> float | complex:
    """Tricomi confluent hypergeometric U(a, b, x); complex parameters allowed."""
    if isinstance(a, complex) or isinstance(b, complex) or isinstance(x, complex):
        with mpmath.workdps(30):
            val = mpmath.hyperu(a, b, x)
        return complex(val)
    if x <= 0.0:
        raise ValueError("x must be positive on the real branch")
    val = sp.hyperu(float(a), float(b), float(x))
    if not np.isfinite(val):
        raise ArithmeticError("Tricomi evaluation failed")
    return float(val)


def log_gamma_complex(z) -> complex:
    """Principal-branch log Gamma for complex argument; poles rejected."""
    zc = complex(z)
    if zc.imag == 0.0 and zc.real <= 0.0 and zc.real == round(zc.real):
        raise ValueError("log-gamma pole at non-positive integer")
    return complex(sp.loggamma(zc))


def digamma(x):
    """Digamma function; real non-positive-integer poles rejected."""
    arr = np.asarray(x)
    if arr.ndim == 0 and not np.iscomplexobj(arr):
        xf = float(arr)
        if xf <= 0.0 and xf == round(xf):
            raise ValueError("digamma pole at non-positive integer")
        return float(sp.digamma(xf))
    return sp.digamma(x)


def legendre_p_table(lmax: int, z) -> np.ndarray:
    """P_0..P_lmax at z by the upward recurrence (any real z)."""
    z = np.asarray(z, dtype=float)
    out = np.empty((lmax + 1,) + z.shape)
    out[0] = 1.0
    if lmax >= 1:
        out[1] = z
    for n in range(1, lmax):
        out[n + 1] = ((2 * n + 1) * z * out[n] - n * out[n - 1]) / (n + 1)
    return out


def legendre_pq(l: int, z: float) -> tuple[float, float, float]:
    """(P_l(z), W_{l-1}(z), Q_l(z)) for z > 1.

    Q_l is split as P_l * (1/2) log[(z+1)/(z-1)] - W_{l-1} with
    W_{l-1} = sum_{n=1}^{l} P_{n-1} P_{l-n} / n and W_{-1} = 0; the split
    is exactly what the momentum-space Coulomb kernel consumes.
    """
    z = float(z)
    if z <= 1.0:
        raise ValueError("this branch requires z > 1")
    p = legendre_p_table(l, np.asarray(z))
    w = sum(p[n - 1] * p[l - n] / n for n in range(1, l + 1)) if l >= 1 else 0.0
    q = p[l] * 0.5 * np.log((z + 1.0) / (z - 1.0)) - w
    return float(p[l]), float(w), float(q)


def bessel_j_complex_order(nu: complex, x: float, tol: float = 1e-17,
                           max_terms: int = 400) -> complex:
    """Bessel J of complex order by the ascending series (moderate x).

    J_nu(x) = sum_k (-1)^k (x/2)^(nu+2k) / (k! Gamma(nu+k+1)); adequate
    for the x = 2*sqrt(s) arguments of the exponential-potential phase.
    """
    if x < 0.0:
        raise ValueError("x must be non-negative")
    nu = complex(nu)
    if x == 0.0:
        if nu == 0:
            return 1.0 + 0.0j
        if nu.real > 0:
            return 0.0 + 0.0j
        raise ValueError("series diverges at x = 0 for Re(nu) <= 0")
    half = 0.5 * x
    term = np.exp(nu * np.log(half) - sp.loggamma(nu + 1.0))
    total = term
    for k in range(1, max_terms):
        term *= -half * half / (k * (nu + k))
        total += term
        if abs(term) < tol * max(abs(total), 1e-300):
            return complex(total)
    raise ArithmeticError("complex-order Bessel series did not converge")
