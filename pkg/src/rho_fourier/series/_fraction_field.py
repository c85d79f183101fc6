"""Shared machinery for "Laurent monomial times reduced polynomial ratio".

Both the scalar field Q(v) and the t-rational functions over it are stored
the same way: ``var**shift * num(var) / den(var)`` where ``num(0) != 0``,
``den(0) != 0``, ``den`` is monic and ``gcd(num, den) = 1``.  That form is
canonical, so equality and hashing are structural.
"""

from __future__ import annotations

from ..errors import ZeroDenominator
from . import _poly


class LaurentFraction:
    __slots__ = ("shift", "num", "den", "_hash")

    VAR = "x"
    _ONE = 1  # coefficient-field one, overridden by subclasses
    _ZERO = 0
    # which denominator coefficient is scaled to one: -1 (monic) or 0
    _PIN = -1
    _ASCENDING = False

    def __init__(self, num=(), den=None, shift=0):
        one = self._ONE
        num = tuple(self._coeff(c) for c in num)
        den = (one,) if den is None else tuple(self._coeff(c) for c in den)
        self._set(*self._normalize(shift, num, den))

    # -- construction helpers -------------------------------------------------
    @classmethod
    def _coeff(cls, c):
        raise NotImplementedError

    @classmethod
    def _raw(cls, shift, num, den):
        obj = object.__new__(cls)
        obj._set(shift, num, den)
        return obj

    def _set(self, shift, num, den):
        self.shift = shift
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def _normalize(cls, shift, num, den):
        num = _poly.trim(num)
        den = _poly.trim(den)
        if not den:
            raise ZeroDenominator("zero denominator")
        if not num:
            return 0, (), (cls._ONE,)
        k, num = _poly.strip_low(num)
        shift += k
        k, den = _poly.strip_low(den)
        shift -= k
        if len(den) > 1:
            g = _poly.gcd(num, den)
            if len(g) > 1:
                num = _poly.divmod_(num, g)[0]
                den = _poly.divmod_(den, g)[0]
        lead = den[cls._PIN]
        if lead != 1:
            inv = cls._ONE / lead
            num = _poly.scale(num, inv)
            den = _poly.scale(den, inv)
        return shift, num, den

    @classmethod
    def _make(cls, shift, num, den):
        return cls._raw(*cls._normalize(shift, num, den))

    @classmethod
    def zero(cls):
        return cls._raw(0, (), (cls._ONE,))

    @classmethod
    def one(cls):
        return cls._raw(0, (cls._ONE,), (cls._ONE,))

    @classmethod
    def gen(cls):
        """The variable itself."""
        return cls._raw(1, (cls._ONE,), (cls._ONE,))

    @classmethod
    def monomial(cls, coeff, power):
        c = cls._coeff(coeff)
        if not c:
            return cls.zero()
        return cls._raw(power, (c,), (cls._ONE,))

    @classmethod
    def constant(cls, c):
        return cls.monomial(c, 0)

    @classmethod
    def coerce(cls, x):
        """Turn ``x`` into an instance, or return NotImplemented."""
        if isinstance(x, cls):
            return x
        try:
            c = cls._coeff(x)
        except TypeError:
            return NotImplemented
        return cls.constant(c)

    # -- predicates -----------------------------------------------------------
    def __bool__(self):
        return bool(self.num)

    def is_zero(self):
        return not self.num

    def is_polynomial(self):
        """True when the value is a Laurent polynomial in the variable."""
        return len(self.den) == 1

    def is_monomial(self):
        return len(self.num) == 1 and len(self.den) == 1

    def is_constant(self):
        return self.is_monomial() and self.shift == 0 or not self.num

    def constant_value(self):
        if not self.num:
            return self._ZERO
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return self.num[0]

    # -- arithmetic ---------------------------------------------------------
    def __neg__(self):
        return self._raw(self.shift, _poly.neg(self.num), self.den)

    def __pos__(self):
        return self

    def _aligned(self, other):
        m = min(self.shift, other.shift)
        z = self._ZERO
        a = (z,) * (self.shift - m) + self.num
        b = (z,) * (other.shift - m) + other.num
        return m, a, b

    def __add__(self, other):
        other = self.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.num:
            return self
        if not self.num:
            return other
        m, a, b = self._aligned(other)
        if self.den == other.den:
            if len(self.den) == 1:
                num = _poly.add(a, b)
                if not num:
                    return self.zero()
                k, num = _poly.strip_low(num)
                return self._raw(m + k, num, self.den)
            return self._make(m, _poly.add(a, b), self.den)
        num = _poly.add(_poly.mul(a, other.den), _poly.mul(b, self.den))
        return self._make(m, num, _poly.mul(self.den, other.den))

    __radd__ = __add__

    def __sub__(self, other):
        other = self.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.num or not other.num:
            return self.zero()
        shift = self.shift + other.shift
        if len(self.den) == 1 and len(other.den) == 1:
            # product of polynomials with nonzero constant terms stays canonical
            return self._raw(shift, _poly.mul(self.num, other.num), self.den)
        return self._make(
            shift, _poly.mul(self.num, other.num), _poly.mul(self.den, other.den)
        )

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ZeroDenominator(f"division by zero {self.VAR}-fraction")
        return self._make(-self.shift, self.den, self.num)

    def __truediv__(self, other):
        other = self.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        if self.is_monomial():
            return self._raw(self.shift * n, (self.num[0] ** n,), self.den)
        result = self.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- comparison ---------------------------------------------------------
    def __eq__(self, other):
        other = self.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (self.shift, self.num, self.den) == (other.shift, other.num, other.den)

    def __hash__(self):
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.constant_value())
            else:
                self._hash = hash((self.shift, self.num, self.den))
        return self._hash

    # -- evaluation -----------------------------------------------------------
    def evaluate_exact(self, x):
        """Exact value at ``x``; raises ZeroDenominator at a pole."""
        d = _poly.evaluate(self.den, x)
        if not d:
            raise ZeroDenominator(f"pole of {self} at {x}")
        return x ** self.shift * _poly.evaluate(self.num, x) / d

    # -- formatting -----------------------------------------------------------
    @classmethod
    def _fmt_coeff(cls, c):
        return str(c)

    @classmethod
    def _fmt_poly(cls, coeffs, shift):
        terms = []
        order = range(len(coeffs)) if cls._ASCENDING else range(len(coeffs) - 1, -1, -1)
        for i in order:
            c = coeffs[i]
            if not c:
                continue
            k = i + shift
            if k == 0:
                body = cls._fmt_coeff(c)
            else:
                mono = cls.VAR if k == 1 else f"{cls.VAR}^{k}"
                cs = cls._fmt_coeff(c)
                if cs == "1":
                    body = mono
                elif cs == "-1":
                    body = "-" + mono
                else:
                    body = f"{cs}*{mono}"
            terms.append(body)
        if not terms:
            return "0"
        out = terms[0]
        for t in terms[1:]:
            out += t if t.startswith("-") else "+" + t
        return out

    def __str__(self):
        top = self._fmt_poly(self.num, self.shift)
        if len(self.den) == 1:
            return top
        bottom = self._fmt_poly(self.den, 0)
        if len(self.num) > 1:
            top = f"({top})"
        return f"{top}/({bottom})"

    def __repr__(self):
        return f"{type(self).__name__}('{self}')"
