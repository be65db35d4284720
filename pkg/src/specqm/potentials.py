"""Two-body potential models in reduced form.

All model shapes are stored as 2*mu*V(r), which is the only combination
any solver needs; the dimensionless strength is s = 2*mu*V0*a^2.  A
point-charge Coulomb tail 2*mu*V_c(r) = 2*q/r with q = mu*alpha*Z can be
overlaid on any short-range shape (q = Z/bohr in units of the Bohr
radius).  Negative q is attractive.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

EXPONENTIAL = "exponential"
HULTHEN = "hulthen"
MORSE = "morse"
COULOMB = "coulomb"

_KINDS = (EXPONENTIAL, HULTHEN, MORSE, COULOMB)


@dataclass(frozen=True)
class PotentialModel:
    """Short-range shape plus optional Coulomb overlay.

    kind : one of "exponential", "hulthen", "morse", "coulomb"
    s    : dimensionless strength 2*mu*V0*a^2 (unused for kind="coulomb")
    a    : range; doubles as the Bohr radius when no separate one is given
    d    : Morse offset (length, Morse only)
    z    : charge number of the Coulomb overlay (kind="coulomb" defaults
           to the attractive unit charge)
    bohr : Bohr radius 1/(mu*alpha) for the overlay; defaults to a
    """

    kind: str
    s: float = 0.0
    a: float = 1.0
    d: float = 0.0
    z: int = 0
    bohr: float | None = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown potential kind {self.kind!r}")
        if self.a <= 0.0:
            raise ValueError("range must be positive")
        if self.kind == COULOMB and self.z == 0:
            object.__setattr__(self, "z", -1)

    @property
    def coulomb_q(self) -> float:
        """q = mu*alpha*Z; 2*mu*V_c(r) = 2*q/r."""
        return self.z / (self.bohr if self.bohr is not None else self.a)

    @property
    def has_coulomb(self) -> bool:
        return self.z != 0

    def short_range_2mu_v(self, r):
        """2*mu*V(r) for the short-range part only."""
        r = np.asarray(r, dtype=float)
        a, s = self.a, self.s
        if self.kind == EXPONENTIAL:
            return -(s / a**2) * np.exp(-r / a)
        if self.kind == HULTHEN:
            return -(s / a**2) / np.expm1(r / a)
        if self.kind == MORSE:
            e = np.exp((self.d - r) / a)
            return -(s / a**2) * e * (2.0 - e)
        return np.zeros_like(r)

    def two_mu_v(self, r):
        """Full 2*mu*V(r) including the Coulomb overlay."""
        r = np.asarray(r, dtype=float)
        out = self.short_range_2mu_v(r)
        if self.has_coulomb:
            out = out + 2.0 * self.coulomb_q / r
        return out

    def origin_slope(self, l: int) -> float:
        """Boundary constant c = mu*lim_{r->0} r V(r)/(l+1).

        Finite for shapes no more singular than 1/r; it seeds the
        derivative of the threshold-reduced wave function at the origin.
        """
        lim = 0.0
        if self.kind == HULTHEN:
            lim += -self.s / self.a
        if self.has_coulomb:
            lim += 2.0 * self.coulomb_q
        return lim / (2.0 * (l + 1))

    def eta(self, p: float) -> float:
        """Sommerfeld parameter q/p of the Coulomb overlay at momentum p."""
        return self.coulomb_q / p


def exponential(s: float, a: float = 1.0, **kw) -> PotentialModel:
    return PotentialModel(EXPONENTIAL, s=s, a=a, **kw)


def hulthen(s: float, a: float = 1.0, **kw) -> PotentialModel:
    return PotentialModel(HULTHEN, s=s, a=a, **kw)


def morse(s: float, a: float = 1.0, d: float = 0.0, **kw) -> PotentialModel:
    return PotentialModel(MORSE, s=s, a=a, d=d, **kw)


def coulomb_point(a: float = 1.0, z: int = -1) -> PotentialModel:
    return PotentialModel(COULOMB, a=a, z=z)
