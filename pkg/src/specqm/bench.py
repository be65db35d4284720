"""Benchmark drivers: convergence studies, sweeps, bound-state tables, CSV output.

Every driver returns plain rows (list of tuples) with a header, and the
CSV writer renders them deterministically with 17 significant digits, so
repeated runs are byte-identical.  Sweep points can be evaluated by a
thread pool; the output order never depends on completion order.
"""

from __future__ import annotations

import io
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .analytic import (
    exact_bound_x,
    exact_phase,
    exact_pole_strength,
    exact_scattering_length,
)
from .momentum import (
    hydrogen_bound_states,
    kmatrix_solve,
    momentum_bound_state,
    scattering_length_momentum,
)
from .potentials import PotentialModel
from .quadrature import gauss_cheb_weights, spectral_operators
from .radial import (
    SolveConfig,
    bound_state_from_determinant,
    schrod_bound_state,
    schrod_phase_shift,
    schrod_scattering_length,
    volterra_phase_shift,
    volterra_scattering_length,
)
from .singular import cauchy_weights, log_weights

_POTENTIAL_ALIASES = {
    "exp": "exponential", "exponential": "exponential",
    "hulthen": "hulthen", "morse": "morse", "coulomb": "coulomb",
}
METHODS = ("schrodinger", "volterra", "momentum")
POLE_CUT = 1e6  # |A| beyond this counts as a pole-adjacent point

DEFAULT_PHASE_SWEEP = (0.05, 5.0, 100)      # plotting-style momentum sweep
DEFAULT_CONVERGE_SWEEP = (0.05, 2.0, 100)   # keeps p*R resolvable at N = 64
DEFAULT_ALEN_SWEEPS = {
    "exponential": (0.0, 2.5, 100),
    "hulthen": (0.0, 1.1, 100),
    "morse": (0.0, 0.3, 100),
}


@dataclass(frozen=True)
class RunSpec:
    """One benchmark run: model parameters, discretizations and sweep."""

    task: str
    potential: str = "exponential"
    s: float = 0.8
    a: float = 1.0
    d: float = 0.0
    z: int = 0
    l: int = 0
    n_list: tuple[int, ...] = (64,)
    r_cut: float | None = None
    sigma: float = 1.0
    method: str = "volterra"
    observable: str = "phase"         # converge flavor: phase | alen
    sweep: tuple[float, float, int] | None = None
    out: str | None = None
    jobs: int = 1

    def __post_init__(self):
        if self.potential not in _POTENTIAL_ALIASES:
            raise ValueError(f"unknown potential {self.potential!r}")
        if self.method not in METHODS + ("all",):
            raise ValueError(f"unknown method {self.method!r}")
        if self.sweep is not None and self.sweep[2] < 1:
            raise ValueError("sweep must contain at least one point")
        if list(self.n_list) != sorted(self.n_list):
            raise ValueError("N list must be ascending")

    def model(self) -> PotentialModel:
        return PotentialModel(_POTENTIAL_ALIASES[self.potential], s=self.s,
                              a=self.a, d=self.d, z=self.z)

    def methods(self) -> tuple[str, ...]:
        return METHODS if self.method == "all" else (self.method,)

    def config(self, n: int) -> SolveConfig:
        return SolveConfig(l=self.l, n=n, r_cut=self.r_cut, sigma=self.sigma)


def _sweep_values(spec: RunSpec, default: tuple[float, float, int]) -> np.ndarray:
    lo, hi, count = spec.sweep if spec.sweep is not None else default
    if count == 1:
        return np.array([0.5 * (lo + hi)])
    return np.linspace(lo, hi, count)


def _pmap(fn, values, jobs: int):
    if jobs <= 1:
        return [fn(v) for v in values]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, values))


def _phase_tan(model: PotentialModel, method: str, xi: float,
               cfg: SolveConfig) -> float:
    p = xi / model.a
    if method == "schrodinger":
        return schrod_phase_shift(model, p, cfg).tan_delta
    if method == "volterra":
        return volterra_phase_shift(model, p, cfg).tan_delta
    return kmatrix_solve(model, cfg.l, p, n=cfg.n, sigma=cfg.sigma).tan_delta


def _alen(model: PotentialModel, method: str, cfg: SolveConfig) -> float:
    if method == "schrodinger":
        return schrod_scattering_length(model, cfg).scattering_length
    if method == "volterra":
        return volterra_scattering_length(model, cfg).scattering_length
    return scattering_length_momentum(model, n=cfg.n, sigma=cfg.sigma)[0]


def _bound_x(model: PotentialModel, method: str, cfg: SolveConfig,
             bracket=None) -> float:
    if method == "schrodinger":
        return schrod_bound_state(model, cfg, bracket).extra["x"]
    if method == "volterra":
        return bound_state_from_determinant(model, cfg, bracket).extra["x"]
    return momentum_bound_state(model, cfg.l, bracket, n=cfg.n,
                                sigma=cfg.sigma) * model.a


def run_phase(spec: RunSpec) -> tuple[list[str], list[tuple]]:
    """Phase shift versus momentum: one row per xi, one column per method."""
    model = spec.model()
    methods = spec.methods()
    cfg = spec.config(spec.n_list[-1])
    xis = _sweep_values(spec, DEFAULT_PHASE_SWEEP)

    def point(xi: float):
        tans = [_phase_tan(model, m, xi, cfg) for m in methods]
        return (xi, *(np.arctan(t) for t in tans), *tans)

    rows = _pmap(point, xis, spec.jobs)
    header = (["xi"] + [f"delta_{m}" for m in methods]
              + [f"tan_delta_{m}" for m in methods])
    return header, rows


def run_alen_sweep(spec: RunSpec) -> tuple[list[str], list[tuple]]:
    """Scattering length versus strength, with the exact value alongside."""
    base = spec.model()
    methods = spec.methods()
    cfg = spec.config(spec.n_list[-1])
    strengths = _sweep_values(spec, DEFAULT_ALEN_SWEEPS[base.kind])
    strengths = strengths[strengths > 0.0]

    def point(s: float):
        model = replace(base, s=float(s))
        vals = [_alen(model, m, cfg) for m in methods]
        return (s, *vals, exact_scattering_length(model).value)

    rows = _pmap(point, strengths, spec.jobs)
    return ["s"] + [f"alen_{m}" for m in methods] + ["alen_exact"], rows


def phase_error_curve(spec: RunSpec) -> tuple[list[str], list[tuple]]:
    """Average relative phase error E(N), one row per N, per method.

    E(N) = mean_i |delta(xi_i) - delta_N(xi_i)| / |delta(xi_i)| with the
    exact closed-form phases as reference; both sides are reduced to the
    principal branch through their tangents.
    """
    model = spec.model()
    methods = spec.methods()
    xis = _sweep_values(spec, DEFAULT_CONVERGE_SWEEP)
    xis = xis[xis > 0.0]
    exact = np.array([np.arctan(exact_phase(model, xi).tan_value) for xi in xis])
    rows = []
    for n in spec.n_list:
        cfg = spec.config(n)

        def all_methods(xi_delta):
            xi, _ = xi_delta
            return [np.arctan(_phase_tan(model, m, xi, cfg)) for m in methods]

        approx = np.array(_pmap(all_methods, list(zip(xis, exact)), spec.jobs))
        errs = [float(np.mean(np.abs(exact - approx[:, j]) / np.abs(exact)))
                for j in range(len(methods))]
        rows.append((n, *errs))
    return ["N"] + [f"E_{m}" for m in methods], rows


def alen_error_curve(spec: RunSpec) -> tuple[list[str], list[tuple]]:
    """Average relative scattering-length error E(N) over a strength sweep.

    Points where the exact |A| exceeds 1e6 * a (pole-adjacent) are left
    out of the average.
    """
    base = spec.model()
    methods = spec.methods()
    strengths = _sweep_values(spec, DEFAULT_ALEN_SWEEPS[base.kind])
    strengths = strengths[strengths > 0.0]
    exact = np.array([exact_scattering_length(replace(base, s=float(s))).value
                      for s in strengths])
    keep = np.abs(exact) <= POLE_CUT * base.a
    rows = []
    for n in spec.n_list:
        cfg = spec.config(n)

        def all_methods(s):
            model = replace(base, s=float(s))
            return [_alen(model, m, cfg) for m in methods]

        approx = np.array(_pmap(all_methods, strengths, spec.jobs))
        errs = [float(np.mean(np.abs(exact[keep] - approx[keep, j])
                              / np.abs(exact[keep])))
                for j in range(len(methods))]
        rows.append((n, *errs))
    return ["N"] + [f"E_{m}" for m in methods], rows


def run_convergence(spec: RunSpec) -> tuple[list[str], list[tuple]]:
    if spec.observable == "alen":
        return alen_error_curve(spec)
    return phase_error_curve(spec)


def run_bound(spec: RunSpec) -> tuple[list[str], list[tuple]]:
    """Bound-state table: one row per (method, N) with the relative error."""
    model = spec.model()
    methods = spec.methods()
    if not methods:
        raise ValueError("at least one method required")
    x_exact = exact_bound_x(model, l=spec.l)
    rows = []
    for n in spec.n_list:
        cfg = spec.config(n)
        for m in methods:
            x = _bound_x(model, m, cfg)
            rows.append((m, n, x, abs(x - x_exact) / abs(x_exact)))
    return ["method", "N", "x", "rel_error"], rows


def run_hydrogen(spec: RunSpec) -> tuple[list[str], list[tuple]]:
    """Point-charge levels x = 1/(n+l+1) from the log-singular solver."""
    rows = []
    for n_cfg in spec.n_list:
        for l in range(0, 3):
            found = hydrogen_bound_states(l, n=n_cfg, sigma=spec.sigma)
            for m, x in enumerate(found):
                exact = 1.0 / (m + l + 1.0)
                rows.append((n_cfg, l, m, x, abs(x - exact) / exact))
    return ["N", "l", "n", "x", "rel_error"], rows


def emit_weights(spec: RunSpec) -> tuple[list[str], list[tuple]]:
    """Quadrature-weight dump: plain, antiderivative, Cauchy and log weights.

    Cauchy/log singularity locations come from the sweep field (reference
    coordinates), defaulting to z = 0.
    """
    n = spec.n_list[-1]
    if n > 256:
        raise ValueError("weight emission capped at N = 256")
    ops = spectral_operators(n)
    w = gauss_cheb_weights(n)
    rows = [("w", 0.0, 0, *w)]
    for i in range(n):
        rows.append(("W_lower", 0.0, i + 1, *ops.antideriv_lower[i]))
    for i in range(n):
        rows.append(("W_upper", 0.0, i + 1, *ops.antideriv_upper[i]))
    zs = (_sweep_values(spec, (0.0, 0.0, 1)) if spec.sweep is not None
          else np.array([0.0]))
    for z in zs:
        cw, _ = cauchy_weights(n, float(z))
        rows.append(("cauchy", float(z), 0, *cw))
        rows.append(("log", float(z), 0, *log_weights(n, float(z))))
    header = ["family", "z", "row"] + [f"w{j+1}" for j in range(n)]
    return header, rows


def pole_location(spec: RunSpec, lo: float, hi: float,
                  method: str = "volterra") -> float:
    """Locate a scattering-length pole by the sign change of 1/A."""
    base = spec.model()
    cfg = spec.config(spec.n_list[-1])

    def inv_alen(s: float) -> float:
        return 1.0 / _alen(replace(base, s=float(s)), method, cfg)

    from scipy.optimize import brentq
    return float(brentq(inv_alen, lo, hi, xtol=1e-300, rtol=1e-12))


def format_csv(header: list[str], rows: list[tuple]) -> str:
    """Deterministic CSV: comma separator, \\n newlines, %.17g floats."""
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for row in rows:
        cells = []
        for item in row:
            if isinstance(item, str):
                cells.append(item)
            elif isinstance(item, (int, np.integer)):
                cells.append(str(int(item)))
            else:
                cells.append("%.17g" % float(item))
        buf.write(",".join(cells) + "\n")
    return buf.getvalue()


TASKS = {
    "phase": run_phase,
    "alen": run_alen_sweep,
    "bound": run_bound,
    "converge": run_convergence,
    "hydrogen": run_hydrogen,
    "weights": emit_weights,
}


def run_task(spec: RunSpec) -> str:
    """Execute a RunSpec and return its CSV text (also writes spec.out)."""
    if spec.task not in TASKS:
        raise ValueError(f"unknown task {spec.task!r}")
    header, rows = TASKS[spec.task](spec)
    text = format_csv(header, rows)
    if spec.out:
        with open(spec.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    return text


def unwrap_phases(deltas: np.ndarray) -> np.ndarray:
    """Continuity-unwrapped copy of a principal-branch phase sweep (mod pi)."""
    return np.unwrap(np.asarray(deltas, dtype=float), period=np.pi)
