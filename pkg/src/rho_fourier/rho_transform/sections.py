"""Exact rational sections over the Satake torus, and graded sections that remember them."""

from __future__ import annotations

from ..errors import TruncationTooSmall
from ..series import ExactScalar, GradedSeries, SymLaurent, grade_by_alpha


class RationalSection:
    """num / den with both Laurent polynomials in the Satake variables.

    No multivariate gcd is taken; ``simplify`` only cancels when one side
    divides the other exactly.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: SymLaurent, den: SymLaurent | None = None):
        if den is None:
            den = SymLaurent.constant(num.n, 1)
        if not den:
            raise ZeroDivisionError("zero denominator section")
        if num.n != den.n:
            raise ValueError("variable counts differ")
        self.num, self.den = num, den

    @property
    def n(self):
        return self.num.n

    @classmethod
    def constant(cls, n, c=1):
        return cls(SymLaurent.constant(n, c))

    def __mul__(self, other):
        if isinstance(other, SymLaurent):
            other = RationalSection(other)
        return RationalSection(self.num * other.num, self.den * other.den).simplify()

    def __truediv__(self, other):
        if isinstance(other, SymLaurent):
            other = RationalSection(other)
        return RationalSection(self.num * other.den, self.den * other.num).simplify()

    def dual(self):
        return RationalSection(self.num.dual(), self.den.dual())

    def simplify(self):
        q = self.num.exact_divide(self.den)
        if q is not None:
            return RationalSection(q)
        if len(self.den) == 1:
            return self
        q = self.den.exact_divide(self.num) if self.num else None
        if q is not None:
            return RationalSection(SymLaurent.constant(self.n, 1), q)
        return self

    def polynomial(self):
        """The section as a Laurent polynomial, or None if it is not one."""
        return self.num.exact_divide(self.den)

    def __eq__(self, other):
        if isinstance(other, SymLaurent):
            other = RationalSection(other)
        if not isinstance(other, RationalSection):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    __hash__ = None

    def evaluate(self, chi, q) -> complex:
        return self.num.evaluate(chi, q) / self.den.evaluate(chi, q)

    def evaluate_exact(self, chi) -> ExactScalar:
        return self.num.evaluate_exact(chi) / self.den.evaluate_exact(chi)

    def expand(self, direction: str, N: int) -> GradedSeries:
        """Graded expansion into the positive (grades <= N) or negative (>= -N) cone.

        The extreme-grade part of the denominator in that direction must be
        a single monomial, which is then inverted grade by grade.
        """
        if direction == "negative":
            return self.dual().expand("positive", N).dual()
        if direction != "positive":
            raise ValueError("direction must be 'positive' or 'negative'")
        den = grade_by_alpha(self.den)
        num = grade_by_alpha(self.num)
        b0 = min(den.components)
        lead = den.components[b0]
        if len(lead) != 1:
            raise TruncationTooSmall(
                f"lowest denominator grade {b0} is not a monomial; no {direction} expansion"
            )
        (lead_e, lead_c), = lead.terms.items()
        inv = SymLaurent.monomial(tuple(-x for x in lead_e), 1 / lead_c)
        if not num.components:
            return GradedSeries(self.n, {}, None, N)
        start = min(num.components) - b0
        out = {}
        for a in range(start, N + 1):
            acc = num[a + b0] if (a + b0) in num.components else SymLaurent.zero(self.n)
            for b, d in den.components.items():
                if b == b0 or (a + b0 - b) not in out:
                    continue
                acc = acc - d * out[a + b0 - b]
            val = acc * inv
            if val:
                out[a] = val
        return GradedSeries(self.n, out, None, N, check=False)

    def __repr__(self):
        return f"RationalSection(({self.num}) / ({self.den}))"


class FLSection(GradedSeries):
    """A GradedSeries that may also carry the exact section it expands."""

    __slots__ = ("closed_form",)

    def __init__(self, n, components=None, lo=None, hi=None, note="", closed_form=None, check=True):
        super().__init__(n, components, lo, hi, note, check)
        self.closed_form = closed_form

    @classmethod
    def wrap(cls, series: GradedSeries, closed_form=None, note=None):
        return cls(series.n, series.components, series.lo, series.hi,
                   note if note is not None else series.note, closed_form, check=False)

    def __repr__(self):
        return f"FLSection<{self.note}>" + super().__repr__()[len("GradedSeries"):]
