"""The rho-specific layer: gamma sections, the cone of rho, the transform and zeta integrals."""

from .cone import ConeReport, HalfSpace, cone_check, convergence_cone, in_convergence_cone
from .sections import FLSection, RationalSection
from .transform import (
    basic_function,
    cone_direction,
    convolve,
    expand_L_alpha,
    fourier_function,
    fourier_spectral,
    fourier_via_kernel,
    gamma_product,
    gamma_section,
    is_asymptotic_schwartz,
    kernel_gamma_K,
    l_section,
    linv_poly,
    schwartz_quotient,
)
from .zeta import (
    check_schwartz_stability,
    functional_equation_residual,
    l_series_direct,
    unitarity_residuals,
    zeta_convergence,
    zeta_integral,
    zeta_series,
)

__all__ = [
    "ConeReport",
    "FLSection",
    "HalfSpace",
    "RationalSection",
    "basic_function",
    "check_schwartz_stability",
    "cone_check",
    "cone_direction",
    "convergence_cone",
    "convolve",
    "expand_L_alpha",
    "fourier_function",
    "fourier_spectral",
    "fourier_via_kernel",
    "functional_equation_residual",
    "gamma_product",
    "gamma_section",
    "in_convergence_cone",
    "is_asymptotic_schwartz",
    "kernel_gamma_K",
    "l_section",
    "l_series_direct",
    "linv_poly",
    "schwartz_quotient",
    "unitarity_residuals",
    "zeta_convergence",
    "zeta_integral",
    "zeta_series",
]
