"""Classical Tate-style ground truth on GL1 over a p-adic field.

Functions are radial: coefficients on the cells varpi^k O^x.  The additive
Fourier transform uses an unramified character psi and the self-dual
measure (vol O = 1).  The direct rho-transform for the standard
representation is

    F f(x) = kappa |x|^(1/2) * Fourier(|.|^(-1/2) f)(x),

where kappa relates the multiplicative Haar measure (vol O^x = 1) to the
additive one; it is calibrated once on 1_{O^x} and comes out as 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import kernels
from .errors import WindowTooSmall
from .series import ExactScalar


@dataclass
class CellFunction:
    """Radial function: {valuation k: coefficient of 1_{varpi^k O^x}}."""

    values: dict = field(default_factory=dict)

    def __post_init__(self):
        self.values = {int(k): v for k, v in self.values.items() if v != 0}

    def __getitem__(self, k):
        return self.values.get(int(k), 0)

    def support(self):
        return sorted(self.values)

    def numeric(self, q):
        return CellFunction({k: complex(v.evaluate(q)) if isinstance(v, ExactScalar) else complex(v)
                             for k, v in self.values.items()})

    def __add__(self, other):
        keys = set(self.values) | set(other.values)
        return CellFunction({k: self[k] + other[k] for k in keys})

    def scale(self, c):
        return CellFunction({k: c * v for k, v in self.values.items()})

    @classmethod
    def from_spherical(cls, f, q=None):
        if f.group != "GL1":
            raise ValueError("GL1 functions only")
        vals = {mu[0]: c for mu, c in f.cells.items()}
        out = cls(vals)
        return out.numeric(q) if q is not None else out


def additive_fourier_cell(k: int, q, window: int) -> CellFunction:
    """Fourier transform of 1_{varpi^k O^x}, listed on valuations -k-1 .. window.

    Value (1 - 1/q) q^-k from valuation -k upward, -q^(-k-1) at -k-1, zero below.
    """
    q = float(q)
    vals = {-k - 1: -q ** (-k - 1)}
    for j in range(-k, window + 1):
        vals[j] = (1 - 1 / q) * q ** (-k)
    return CellFunction({j: v for j, v in vals.items() if j <= window})


def additive_fourier_riemann(k: int, j: int, p: int, backend=None) -> complex:
    """The same value at valuation j as a finite character sum.

    The integrand psi(x y) on y in varpi^k O^x depends on y modulo
    varpi^(k+e) with e = max(0, -(j+k)), so summing over units modulo p^M
    with M = max(e, 1) + 2 is exact up to rounding; each class has volume p^-(k+M).
    """
    if p < 2 or any(p % d == 0 for d in range(2, int(math.isqrt(p)) + 1)):
        raise ValueError("the Riemann-sum oracle uses residues modulo a prime p")
    e = max(0, -(j + k))
    M = max(e, 1) + 2
    return kernels.char_sum(p, e, M, backend) * float(p) ** (-(k + M))


def _transform_value(f: CellFunction, j: int, q, kappa=1.0) -> complex:
    # Fourier(|.|^-1/2 f) at valuation j, then times |x|^1/2 = q^(-j/2)
    total = 0j
    for k, c in f.values.items():
        w = q ** (k / 2)  # |y|^(-1/2) on varpi^k O^x
        if j >= -k:
            cell = (1 - 1 / q) * q ** (-k)
        elif j == -k - 1:
            cell = -q ** (-k - 1)
        else:
            continue
        total += c * w * cell
    return kappa * q ** (-j / 2) * total


def gl1_fourier_direct(f: CellFunction, q, window: int, kappa: float = 1.0, psi: str = "psi") -> CellFunction:
    """Direct transform on valuations |j| <= window.

    psi and its conjugate agree on radial functions, since -1 is a unit.
    Input cells beyond the window would be silently dropped by a caller that
    windows its own output, so they are refused.
    """
    if psi not in ("psi", "psibar"):
        raise ValueError("psi must be 'psi' or 'psibar'")
    f = f.numeric(q)
    if any(abs(k) > window for k in f.values):
        raise WindowTooSmall(f"input support {f.support()} exceeds the window {window}")
    return CellFunction({j: _transform_value(f, j, float(q), kappa) for j in range(-window, window + 1)})


def calibrate_kappa(q, N: int = 4) -> float:
    """Ratio spectral / direct on 1_{O^x} at valuation 0."""
    from .rho_transform import fourier_function
    from .spherical_gl import SphericalFunction
    from .wd_params import AlgebraicRep

    spec = fourier_function(SphericalFunction.indicator("GL1", (0,)), AlgebraicRep.named("GL1", "std"), N)
    direct = _transform_value(CellFunction({0: 1.0}), 0, float(q), 1.0)
    return float((complex(spec[(0,)].evaluate(q)) / direct).real)


def compare_spectral_direct(f, q, N: int, kappa: float = 1.0) -> float:
    """Max |spectral - direct| over valuations |j| <= N.

    ``f`` is a GL1 SphericalFunction (compact, or carrying its closed form) or a CellFunction.
    """
    from .rho_transform import fourier_function
    from .spherical_gl import SphericalFunction
    from .wd_params import AlgebraicRep

    if isinstance(f, CellFunction):
        # floats convert exactly as binary rationals
        sph = SphericalFunction("GL1", {(k,): ExactScalar.of(Fraction(v) if isinstance(v, float) else v)
                                        for k, v in f.values.items()})
    else:
        sph = f
    spec = fourier_function(sph, AlgebraicRep.named("GL1", "std"), N)
    cells = CellFunction.from_spherical(sph, q)
    direct = gl1_fourier_direct(cells, q, max([N] + [abs(k) for k in cells.values]), kappa)
    return max(abs(complex(spec[(j,)].evaluate(q)) - direct[j]) for j in range(-N, N + 1))


def inversion_residual(f: CellFunction, q, window: int, inner: int = 60) -> float:
    """Apply the direct transform with psi, then psibar, and compare with f on the window.

    The intermediate transform is kept on the wider window ``inner``; its
    tail beyond that contributes at most about q^(-inner) to the result.
    """
    g = gl1_fourier_direct(f, q, inner)
    back = gl1_fourier_direct(g, q, inner, psi="psibar")
    fn = f.numeric(q)
    return max(abs(back[j] - fn[j]) for j in range(-window, window + 1))
