"""The exact coefficient field Q(v), with v standing for q**(1/2).

v is kept as an indeterminate.  The residue size q only enters when a value
is specialized, either numerically (``evaluate``) or exactly into
Q(sqrt q) (``specialize``).
"""

from __future__ import annotations

import ast
import math
from fractions import Fraction
from numbers import Rational

from ..errors import ZeroDenominator
from . import _poly
from ._fraction_field import LaurentFraction


class ExactScalar(LaurentFraction):
    """Element of Q(v).  Immutable and hashable."""

    __slots__ = ()
    VAR = "v"
    _ONE = Fraction(1)
    _ZERO = Fraction(0)

    @classmethod
    def _coeff(cls, c):
        if isinstance(c, Fraction):
            return c
        if isinstance(c, (int, Rational)) and not isinstance(c, bool):
            return Fraction(c)
        raise TypeError(f"cannot use {type(c).__name__} as a rational coefficient")

    @classmethod
    def coerce(cls, x):
        if isinstance(x, cls):
            return x
        if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
            return cls.constant(x)
        return NotImplemented

    @classmethod
    def v(cls):
        return cls.gen()

    @classmethod
    def of(cls, x):
        """Build from int, Fraction, string or ExactScalar."""
        if isinstance(x, str):
            return cls.parse(x)
        out = cls.coerce(x)
        if out is NotImplemented:
            raise TypeError(f"cannot convert {x!r} to ExactScalar")
        return out

    # -- parsing ----------------------------------------------------------------
    @classmethod
    def parse(cls, text: str) -> "ExactScalar":
        """Parse expressions such as ``"3*v^2-1/2"`` or ``"(v+1)/(v^2-2)"``."""
        try:
            tree = ast.parse(text.replace("^", "**").strip(), mode="eval")
        except SyntaxError as exc:
            raise ValueError(f"cannot parse scalar {text!r}") from exc
        return cls._eval_ast(tree.body, text)

    @classmethod
    def _eval_ast(cls, node, text):
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return cls.constant(node.value)
        if isinstance(node, ast.Name) and node.id == cls.VAR:
            return cls.gen()
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            val = cls._eval_ast(node.operand, text)
            return -val if isinstance(node.op, ast.USub) else val
        if isinstance(node, ast.BinOp):
            left = cls._eval_ast(node.left, text)
            if isinstance(node.op, ast.Pow):
                exp = cls._eval_ast(node.right, text)
                if not exp.is_constant() or exp.constant_value().denominator != 1:
                    raise ValueError(f"non-integer exponent in {text!r}")
                return left ** int(exp.constant_value())
            right = cls._eval_ast(node.right, text)
            ops = {ast.Add: "__add__", ast.Sub: "__sub__", ast.Mult: "__mul__", ast.Div: "__truediv__"}
            name = ops.get(type(node.op))
            if name is not None:
                return getattr(left, name)(right)
        raise ValueError(f"unsupported syntax in scalar {text!r}")

    # -- specialization -----------------------------------------------------------
    def evaluate(self, q) -> float:
        """Numeric value at v = sqrt(q)."""
        v = math.sqrt(q)
        num = _poly.evaluate(tuple(float(c) for c in self.num), v)
        den = _poly.evaluate(tuple(float(c) for c in self.den), v)
        if den == 0.0:
            raise ZeroDenominator(f"{self} has a pole at v = sqrt({q})")
        return v ** self.shift * num / den

    def specialize(self, q) -> "QuadraticValue":
        """Exact value in Q(sqrt q)."""
        num = QuadraticValue.from_vpoly(self.num, q)
        den = QuadraticValue.from_vpoly(self.den, q)
        if not den:
            raise ZeroDenominator(f"{self} has a pole at v = sqrt({q})")
        return QuadraticValue.v_power(self.shift, q) * num / den

    def conj_v(self) -> "ExactScalar":
        """Apply v -> -v (the Galois conjugation of Q(sqrt q) after specializing)."""
        flip = lambda p: tuple(c if i % 2 == 0 else -c for i, c in enumerate(p))
        sign = -1 if self.shift % 2 else 1
        return ExactScalar._make(self.shift, _poly.scale(flip(self.num), Fraction(sign)), flip(self.den))

    def to_json(self) -> str:
        return str(self)


def _is_square(q: Fraction):
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


class QuadraticValue:
    """``a + b*sqrt(q)`` with rational a, b.  When q is a perfect square, b = 0."""

    __slots__ = ("a", "b", "q")

    def __init__(self, a, b, q):
        q = Fraction(q)
        root = _is_square(q)
        a, b = Fraction(a), Fraction(b)
        if root is not None:
            a, b = a + b * root, Fraction(0)
        self.a, self.b, self.q = a, b, q

    @classmethod
    def v_power(cls, k, q):
        q = Fraction(q)
        half, odd = divmod(k, 2)
        base = q ** half
        return cls(0, base, q) if odd else cls(base, 0, q)

    @classmethod
    def from_vpoly(cls, coeffs, q):
        out = cls(0, 0, q)
        for k, c in enumerate(coeffs):
            if c:
                out = out + cls.v_power(k, q) * cls(c, 0, q)
        return out

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def _check(self, other):
        if not isinstance(other, QuadraticValue):
            other = QuadraticValue(other, 0, self.q)
        if other.q != self.q:
            raise ValueError("mixing different q")
        return other

    def __add__(self, other):
        other = self._check(other)
        return QuadraticValue(self.a + other.a, self.b + other.b, self.q)

    def __sub__(self, other):
        other = self._check(other)
        return QuadraticValue(self.a - other.a, self.b - other.b, self.q)

    def __mul__(self, other):
        other = self._check(other)
        a = self.a * other.a + self.b * other.b * self.q
        b = self.a * other.b + self.b * other.a
        return QuadraticValue(a, b, self.q)

    def __truediv__(self, other):
        other = self._check(other)
        norm = other.a * other.a - other.b * other.b * self.q
        if norm == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt q)")
        conj = QuadraticValue(other.a / norm, -other.b / norm, self.q)
        return self * conj

    def __eq__(self, other):
        if isinstance(other, QuadraticValue):
            return (self.a, self.b, self.q) == (other.a, other.b, other.q)
        try:
            return self.b == 0 and self.a == Fraction(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b, self.q))

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.q)

    def __str__(self):
        if not self.b:
            return str(self.a)
        rad = f"sqrt({self.q})"
        core = rad if self.b == 1 else f"-{rad}" if self.b == -1 else f"{self.b}*{rad}"
        if not self.a:
            return core
        return f"{self.a}+{core}" if not core.startswith("-") else f"{self.a}{core}"

    __repr__ = __str__


V = ExactScalar.v()
ONE = ExactScalar.one()
ZERO = ExactScalar.zero()


def as_scalar(x) -> ExactScalar:
    return ExactScalar.of(x)
