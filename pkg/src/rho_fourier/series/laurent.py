"""Rational functions in t = q**(-s) with coefficients in Q(v)."""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from ..errors import MixedPoleDirections, ZeroDenominator
from . import _poly
from ._fraction_field import LaurentFraction
from .scalar import ExactScalar


class LaurentRational(LaurentFraction):
    """``t**shift * num(t) / den(t)`` in reduced canonical form."""

    __slots__ = ()
    VAR = "t"
    _ONE = ExactScalar.one()
    _ZERO = ExactScalar.zero()
    _PIN = 0
    _ASCENDING = True

    @classmethod
    def _coeff(cls, c):
        if isinstance(c, ExactScalar):
            return c
        if isinstance(c, (int, Fraction)) and not isinstance(c, bool):
            return ExactScalar.constant(c)
        raise TypeError(f"cannot use {type(c).__name__} as a Q(v) coefficient")

    @classmethod
    def t(cls):
        return cls.gen()

    @classmethod
    def _fmt_coeff(cls, c):
        s = str(c)
        if s.lstrip("-").replace("/", "").isdigit():
            return s
        body = (s[1:] if s.startswith("-") else s).replace("^-", "^")
        simple = "+" not in body and "-" not in body and "(" not in body
        return s if simple else f"({s})"

    # -- substitutions ----------------------------------------------------------
    def substitute_reciprocal(self, c) -> "LaurentRational":
        """Return r(c / t).  With c = q**-1 this realizes s -> 1 - s."""
        c = ExactScalar.of(c)
        # sum a_k c^k t^-k over numerator and denominator, then clear t powers
        def flip(p):
            return tuple(a * c ** k for k, a in enumerate(p))[::-1]

        num, den = flip(self.num), flip(self.den)
        shift = -self.shift - (len(self.num) - 1) + (len(self.den) - 1)
        return (c ** self.shift) * LaurentRational(num, den, shift)

    def scale_variable(self, c) -> "LaurentRational":
        """Return r(c * t)."""
        c = ExactScalar.of(c)
        num = tuple(a * c ** k for k, a in enumerate(self.num))
        den = tuple(a * c ** k for k, a in enumerate(self.den))
        return (c ** self.shift) * LaurentRational(num, den, self.shift)

    def evaluate(self, t: ExactScalar) -> ExactScalar:
        """Exact value at an element of Q(v); ZeroDenominator at a pole."""
        return self.evaluate_exact(ExactScalar.of(t))

    def evaluate_numeric(self, t: complex, q) -> complex:
        num = [c.evaluate(q) for c in self.num]
        den = [c.evaluate(q) for c in self.den]
        d = _poly.evaluate(den, complex(t))
        if d == 0:
            raise ZeroDenominator("pole at the evaluation point")
        return complex(t) ** self.shift * _poly.evaluate(num, complex(t)) / d

    def numeric_poles(self, q):
        """Numeric t-roots of the denominator at v = sqrt(q)."""
        den = [c.evaluate(q) for c in self.den]
        if len(den) <= 1:
            return np.zeros(0, dtype=complex)
        return np.roots(den[::-1])


def _power_series(num, den, n_terms):
    """First ``n_terms`` coefficients of num/den with den[0] != 0."""
    out = []
    inv0 = ExactScalar.one() / den[0]
    for k in range(n_terms):
        acc = num[k] if k < len(num) else ExactScalar.zero()
        for j in range(1, min(k, len(den) - 1) + 1):
            acc = acc - den[j] * out[k - j]
        out.append(acc * inv0)
    return out


def series_expand(r: LaurentRational, direction: str, N: int, q=None):
    """Coefficients of t**0 .. t**N (positive) or t**0 .. t**-N (negative).

    The expansion is formal.  When ``q`` is given, the numeric poles at
    v = sqrt(q) are also checked: a positive expansion converging on the
    unit circle needs every pole outside it, a negative one needs every pole
    inside.  Poles on both sides raise MixedPoleDirections.
    """
    if direction not in ("positive", "negative"):
        raise ValueError("direction must be 'positive' or 'negative'")
    if N < 0:
        raise ValueError("N must be nonnegative")
    if q is not None:
        mods = np.abs(r.numeric_poles(q))
        outside, inside = bool(np.any(mods > 1)), bool(np.any(mods < 1))
        if (outside and inside) or np.any(np.isclose(mods, 1.0)):
            raise MixedPoleDirections("poles on both sides of the unit t-circle")
        if direction == "positive" and inside or direction == "negative" and outside:
            raise MixedPoleDirections(f"poles are not oriented for a {direction} expansion")
    if direction == "negative":
        # t -> 1/u turns a t^-1 expansion into an ordinary power series in u
        r = r.substitute_reciprocal(1)
    if r.shift < 0:
        raise ValueError(
            f"expansion has terms of order t^{r.shift if direction == 'positive' else -r.shift}"
            " beyond the requested range"
        )
    body = _power_series(r.num, r.den, max(N + 1 - r.shift, 0))
    return [ExactScalar.zero()] * min(r.shift, N + 1) + body[: N + 1 - min(r.shift, N + 1)]
