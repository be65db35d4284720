"""Chebyshev collocation solvers with quantum two-body applications.

Layers, bottom to top:

* chebyshev / quadrature / singular: grids, cardinal functions, plain and
  antiderivative quadrature matrices, Cauchy and log-singular weights;
* solvers: generic collocation solvers for ODEs and integral equations;
* special / potentials: free-solution pairs and the model potentials;
* radial / momentum: phase shifts, scattering lengths and bound states in
  configuration and momentum space;
* analytic: exact closed-form references;
* bench / cli: convergence studies, sweeps and the specqm command.
"""

from .analytic import (
    ExactResult,
    exact_bound_condition,
    exact_bound_x,
    exact_momentum_potential,
    exact_phase,
    exact_pole_strength,
    exact_scattering_length,
)
from .chebyshev import (
    ChebGrid,
    cardinal,
    cardinal_row,
    chebyshev_t,
    chebyshev_u,
    coeffs_from_values,
    diff_matrix,
    interpolate,
    interpolate2d,
    make_grid,
    values_from_coeffs,
)
from .linsys import SingularSystemError, SolveReport, solve_dense
from .momentum import (
    KMatrixResult,
    MomentumMesh,
    TMatrixResult,
    bound_mesh,
    bound_state_eigen,
    hydrogen_bound_states,
    kmatrix_solve,
    momentum_bound_state,
    potential_projection,
    projection_quadrature,
    scattering_length_momentum,
    scattering_mesh,
    tmatrix_from_k,
)
from .potentials import (
    PotentialModel,
    coulomb_point,
    exponential,
    hulthen,
    morse,
)
from .quadrature import (
    RationalMap,
    SpectralOperators,
    antideriv_matrices,
    gauss_cheb_weighted_integral,
    gauss_cheb_weights,
    integrate_halfline,
    integrate_interval,
    rational_map_nodes,
    spectral_operators,
)
from .radial import (
    CompositeSolution,
    ScatteringOutput,
    SolveConfig,
    bound_state_from_determinant,
    composite_bound_state,
    composite_solve,
    fredholm_determinant,
    schrod_bound_state,
    schrod_phase_shift,
    schrod_scattering_length,
    volterra_phase_shift,
    volterra_scattering_length,
)
from .singular import (
    SingularWeightSet,
    cauchy_integral_t,
    cauchy_weights,
    log_integral_t,
    log_weights,
    singular_weight_set,
)
from .solvers import (
    kernel_on_grid,
    solve_cauchy_singular,
    solve_fredholm,
    solve_integrodiff_1,
    solve_integrodiff_2,
    solve_log_singular,
    solve_ode_ivp,
    solve_ode_mixed,
    solve_semicontinuous,
    solve_volterra,
)
from .special import (
    FreePair,
    bessel_j_complex_order,
    coulomb_fg,
    digamma,
    kummer_m,
    legendre_pq,
    log_gamma_complex,
    modified_riccati,
    neg_coulomb_log_derivative,
    neg_energy_coulomb,
    riccati_free,
    tricomi_u,
    zero_energy_coulomb,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
