"""Dense linear solves with a condition estimate attached to every result.

Near-characteristic kernel strengths and scattering-length poles show up
as ill-conditioned collocation systems, so conditioning is part of the
result contract rather than an afterthought.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import lapack, lu_factor, lu_solve

NEAR_SINGULAR_COND = 1e12


@dataclass(frozen=True)
class SolveReport:
    """Solution of A y = b plus diagnostics of the assembled system."""

    solution: np.ndarray
    residual: float
    cond: float
    extra: dict = field(default_factory=dict)

    @property
    def near_singular(self) -> bool:
        return not np.isfinite(self.cond) or self.cond > NEAR_SINGULAR_COND


class SingularSystemError(np.linalg.LinAlgError):
    """Raised when the collocation system is exactly singular."""


def solve_dense(a: np.ndarray, b: np.ndarray) -> SolveReport:
    """LU solve with partial pivoting; 1-norm condition estimate via gecon."""
    a = np.ascontiguousarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    anorm = np.linalg.norm(a, 1)
    try:
        lu, piv = lu_factor(a)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - exact singularity
        raise SingularSystemError(str(exc)) from exc
    if np.any(np.diag(lu) == 0.0):
        raise SingularSystemError("zero pivot in LU factorization")
    rcond, info = lapack.dgecon(lu, anorm)
    if info != 0:  # pragma: no cover - LAPACK argument error
        raise SingularSystemError(f"dgecon failed with info={info}")
    cond = np.inf if rcond == 0.0 else 1.0 / rcond
    x = lu_solve((lu, piv), b)
    residual = float(np.linalg.norm(a @ x - b))
    return SolveReport(solution=x, residual=residual, cond=float(cond))
