"""Exceptional X_m Jacobi / PDEM Scarf I system and its coherent-state dynamics."""

from .errors import (
    AdmissibilityError,
    ConvergenceError,
    DomainError,
    SingularityError,
)
from .grids import GridSpec, default_grid
from .mass import MassProfile, domain, make_profile, schwartz_term
from .polynomials import (
    XmParams,
    admissible,
    jacobi_p,
    jacobi_p_deriv,
    ode_residual,
    xm_jacobi,
    xm_jacobi_deriv,
    xm_norm,
    xm_weight,
)
from .scarf import (
    EigenState,
    SystemParams,
    eigenfunction,
    energy,
    gram_matrix,
    hamiltonian_eigenvalue,
    hamiltonian_residual,
    partner_potentials,
    shape_invariance_residual,
    superpotential,
    v_eff,
)
from .dynamics import (
    CoherentStateSpec,
    Timescales,
    autocorrelation_sq,
    autocorrelation_sq_pairsum,
    classify_region,
    coherent_state,
    density,
    density_pairsum,
    mandel,
    mandel_asymptote,
    mean_n,
    mean_n2,
    norm_const,
    rho,
    timescales,
    truncation_tail,
    truncation_tail_bound,
    weights,
)
from .specfun import bessel_i, bessel_i_scaled, gamma, integrate_de, integrate_interval

__version__ = "0.1.0"

__all__ = [
    "AdmissibilityError",
    "ConvergenceError",
    "DomainError",
    "SingularityError",
    "GridSpec",
    "default_grid",
    "MassProfile",
    "make_profile",
    "domain",
    "schwartz_term",
    "XmParams",
    "admissible",
    "jacobi_p",
    "jacobi_p_deriv",
    "ode_residual",
    "xm_jacobi",
    "xm_jacobi_deriv",
    "xm_norm",
    "xm_weight",
    "EigenState",
    "SystemParams",
    "eigenfunction",
    "energy",
    "gram_matrix",
    "hamiltonian_eigenvalue",
    "hamiltonian_residual",
    "partner_potentials",
    "shape_invariance_residual",
    "superpotential",
    "v_eff",
    "CoherentStateSpec",
    "Timescales",
    "autocorrelation_sq",
    "autocorrelation_sq_pairsum",
    "classify_region",
    "coherent_state",
    "density",
    "density_pairsum",
    "mandel",
    "mandel_asymptote",
    "mean_n",
    "mean_n2",
    "norm_const",
    "rho",
    "timescales",
    "truncation_tail",
    "truncation_tail_bound",
    "weights",
    "bessel_i",
    "bessel_i_scaled",
    "gamma",
    "integrate_de",
    "integrate_interval",
    "__version__",
]
