"""Exact unramified rho-Fourier transforms, gamma factors and zeta integrals for GL1 and GL2."""

from .errors import RhoFourierError
from .series import ExactScalar, GradedSeries, LaurentRational, SymLaurent
from .spherical_gl import SphericalFunction, satake_transform
from .wd_params import AlgebraicRep, UnramWDRep

__version__ = "0.1.0"

__all__ = [
    "AlgebraicRep",
    "ExactScalar",
    "GradedSeries",
    "LaurentRational",
    "RhoFourierError",
    "SphericalFunction",
    "SymLaurent",
    "UnramWDRep",
    "satake_transform",
]
