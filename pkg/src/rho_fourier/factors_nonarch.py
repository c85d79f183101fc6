"""L-, epsilon- and gamma-factors of unramified Weil-Deligne parameters.

Everything is a LaurentRational in t = q**(-s).  s -> 1 - s is the
substitution t -> q**-1 / t.  A block (x, a) contributes the highest line of
Sym^(a-1), i.e. the factor (1 - x v**-(a-1) t)**-1, and its epsilon factor is
(-x)**(a-1) * (q**(1/2-s))**(a-1); with that choice the ratio route and the
closed form at s = 1/2 agree, and gamma(s) gamma(1-s, dual) = 1 holds exactly.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import NumericPole, PoleAtHalf, ZeroDenominator, ZeroScalar
from .series import ExactScalar, LaurentRational, V
from .wd_params import UnramWDRep, diagonal_restriction, dual

T = LaurentRational.t()
Q_INV = V ** -2


def _exact_blocks(phi: UnramWDRep):
    for x, a in phi.blocks:
        if not isinstance(x, ExactScalar):
            raise TypeError("exact factors need ExactScalar blocks; use the numeric helpers")
        if not x:
            raise ZeroScalar("block scalar is zero")
        yield x, a


def l_factor(phi: UnramWDRep) -> LaurentRational:
    inv = LaurentRational.one()
    for x, a in _exact_blocks(phi):
        inv = inv * (1 - x * V ** (1 - a) * T)
    return 1 / inv


def conductor_exponent(phi: UnramWDRep) -> int:
    return sum(a - 1 for _, a in phi.blocks)


def epsilon_factor(phi: UnramWDRep) -> LaurentRational:
    """The monomial (prod (-x)**(a-1)) * (v t)**conductor."""
    sign = ExactScalar.one()
    for x, a in _exact_blocks(phi):
        sign = sign * (-x) ** (a - 1)
    return sign * (V * T) ** conductor_exponent(phi)


def eps_half(phi: UnramWDRep) -> ExactScalar:
    out = ExactScalar.one()
    for x, a in _exact_blocks(phi):
        out = out * (-x) ** (a - 1)
    return out


@dataclass(frozen=True)
class FactorTriple:
    L: LaurentRational
    eps_half: ExactScalar
    conductor_exponent: int


def factor_triple(phi: UnramWDRep) -> FactorTriple:
    return FactorTriple(l_factor(phi), eps_half(phi), conductor_exponent(phi))


def reflect(r: LaurentRational) -> LaurentRational:
    """r(1 - s): substitute t -> q**-1 t**-1."""
    return r.substitute_reciprocal(Q_INV)


def gamma_factor(phi: UnramWDRep) -> LaurentRational:
    return epsilon_factor(phi) * reflect(l_factor(dual(phi))) / l_factor(phi)


def value_at_half(r: LaurentRational):
    """Exact value at t = v**-1, or None at a genuine pole."""
    try:
        return r.evaluate(V ** -1)
    except ZeroDenominator:
        return None


def gamma_at_half(phi: UnramWDRep) -> ExactScalar:
    val = value_at_half(gamma_factor(phi))
    if val is None:
        raise PoleAtHalf(f"gamma factor of {phi} has a pole at s = 1/2")
    return val


def gamma_at_half_closed_form(phi: UnramWDRep) -> ExactScalar:
    """Blockwise closed form (-x)**(a-1) (1 - v**-a x) / (1 - v**-a x**-1)."""
    out = ExactScalar.one()
    for x, a in _exact_blocks(phi):
        den = 1 - V ** -a / x
        if not den:
            raise PoleAtHalf(f"block ({x},{a}) has a pole at s = 1/2")
        out = out * (-x) ** (a - 1) * (1 - V ** -a * x) / den
    return out


def _specialized(val, q):
    """Value in Q(sqrt q), with None standing for a pole."""
    if val is None:
        return None
    try:
        return val.specialize(q)
    except ZeroDenominator:
        return None


def check_sym_gamma_identity(x, a: int, q=None) -> bool:
    """gamma of the Sym block against gamma of its diagonal restriction, at s = 1/2.

    Both sides are reduced as rational functions in t before evaluation.
    With ``q`` the comparison is repeated after specializing v = sqrt(q),
    where a pole on both sides counts as agreement.
    """
    x = ExactScalar.of(x)
    if not x:
        raise ZeroScalar("x must be nonzero")
    lhs = value_at_half(gamma_factor(UnramWDRep(((x, a),))))
    rhs = value_at_half(gamma_factor(diagonal_restriction((x, a))))
    if lhs != rhs:
        return False
    if q is not None:
        return _specialized(lhs, q) == _specialized(rhs, q)
    return True


def check_gamma_reflection(phi: UnramWDRep) -> bool:
    return gamma_factor(phi) * reflect(gamma_factor(dual(phi))) == 1


# ----------------------------------------------------------------------- numeric


def _numeric_blocks(phi, q):
    for x, a in phi.blocks:
        yield (complex(x.evaluate(q)) if isinstance(x, ExactScalar) else complex(x)), a


def l_factor_numeric(phi: UnramWDRep, s: complex, q) -> complex:
    t = q ** (-complex(s))
    out = 1 + 0j
    for x, a in _numeric_blocks(phi, q):
        den = 1 - x * math.sqrt(q) ** (1 - a) * t
        if abs(den) < 1e-14:
            raise NumericPole(f"L-factor pole at s = {s}")
        out /= den
    return out


def gamma_half_numeric(phi: UnramWDRep, q) -> complex:
    """gamma(1/2) by the ratio route with complex arithmetic."""
    v = math.sqrt(q)
    out = 1 + 0j
    for x, a in _numeric_blocks(phi, q):
        if x == 0:
            raise ZeroScalar("block scalar is zero")
        l_half = 1 - x * v ** (-a)  # L(1/2, phi)**-1
        l_dual = 1 - v ** (-a) / x  # L(1/2, dual)**-1
        if abs(l_dual) < 1e-14:
            raise NumericPole(f"pole at s = 1/2 for block ({x},{a})")
        out *= (-x) ** (a - 1) * l_half / l_dual
    return out


def check_gamma_unitarity(phi: UnramWDRep, q) -> float:
    """| |gamma(1/2)| - 1 | for unit-modulus block scalars."""
    if not phi.check_tempered():
        raise ValueError("unitarity needs unit-modulus block scalars")
    return abs(abs(gamma_half_numeric(phi, q)) - 1.0)


def random_unit_phi(rng, max_dim=4, max_a=3) -> UnramWDRep:
    """Random tempered numeric parameter with dimension at most ``max_dim``."""
    blocks = []
    left = int(rng.integers(1, max_dim + 1))
    while left:
        a = int(rng.integers(1, min(max_a, left) + 1))
        blocks.append((cmath.exp(2j * math.pi * rng.random()), a))
        left -= a
    return UnramWDRep(tuple(blocks))
