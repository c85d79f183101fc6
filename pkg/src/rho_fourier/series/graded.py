"""alpha-graded families of homogeneous Laurent polynomials.

A GradedSeries knows its components exactly on a window ``lo <= alpha <= hi``.
``None`` on either side means "known on that whole side", which is how a
series expanding into the positive cone (``lo=None, hi=N``) or the negative
cone (``lo=-N, hi=None``) is described.  Finite objects have both ends None.
"""

from __future__ import annotations

import math

from ..errors import TruncationTooSmall
from .symlaurent import SymLaurent


def _fin(x, default):
    return default if x is None else x


class GradedSeries:
    __slots__ = ("n", "components", "lo", "hi", "note")

    def __init__(self, n, components=None, lo=None, hi=None, note="", check=True):
        self.n = n
        self.lo, self.hi = lo, hi
        self.note = note
        comps = {}
        for a, p in (components or {}).items():
            if not p:
                continue
            if p.n != n:
                raise ValueError("component has the wrong variable count")
            if check and not p.is_homogeneous(a):
                raise ValueError(f"component {a} is not homogeneous of degree {a}")
            if (lo is not None and a < lo) or (hi is not None and a > hi):
                raise ValueError(f"component {a} lies outside the window [{lo}, {hi}]")
            comps[int(a)] = p
        self.components = comps

    # -- window bookkeeping -----------------------------------------------------
    @property
    def trunc(self):
        """Truncation bound N, or None for a finite (exact) series."""
        if self.lo is None and self.hi is None:
            return None
        if self.lo is None:
            return self.hi
        if self.hi is None:
            return -self.lo
        return max(self.hi, -self.lo)

    def is_finite(self):
        return self.lo is None and self.hi is None

    def knows(self, a):
        return (self.lo is None or a >= self.lo) and (self.hi is None or a <= self.hi)

    def support(self):
        return sorted(self.components)

    def _zero_below(self):
        """Largest z such that every grade below z is known to vanish."""
        if self.lo is not None:
            return -math.inf
        if self.components:
            return min(self.components)
        return _fin(self.hi, math.inf) + 1

    def _zero_above(self):
        if self.hi is not None:
            return math.inf
        if self.components:
            return max(self.components)
        return _fin(self.lo, -math.inf) - 1

    # -- access ---------------------------------------------------------------------
    def __getitem__(self, a) -> SymLaurent:
        if not self.knows(a):
            raise TruncationTooSmall(f"grade {a} is outside the materialized window [{self.lo}, {self.hi}]")
        return self.components.get(a, SymLaurent.zero(self.n))

    def project(self, a) -> "GradedSeries":
        """The projection e_alpha, as a finite series."""
        comp = self[a]
        return GradedSeries(self.n, {a: comp} if comp else {}, note=f"e_{a}")

    def total(self) -> SymLaurent:
        out = SymLaurent.zero(self.n)
        for a in sorted(self.components):
            out = out + self.components[a]
        return out

    def truncate(self, lo=None, hi=None) -> "GradedSeries":
        """Narrow the window; ``None`` leaves that side as it is."""
        new_lo = self.lo if lo is None else lo if self.lo is None else max(lo, self.lo)
        new_hi = self.hi if hi is None else hi if self.hi is None else min(hi, self.hi)
        comps = {a: p for a, p in self.components.items()
                 if (new_lo is None or a >= new_lo) and (new_hi is None or a <= new_hi)}
        return GradedSeries(self.n, comps, new_lo, new_hi, self.note, check=False)

    # -- algebra ----------------------------------------------------------------------
    def _check(self, other):
        if isinstance(other, SymLaurent):
            other = grade_by_alpha(other)
        if other.n != self.n:
            raise ValueError("variable counts differ")
        return other

    def __add__(self, other):
        other = self._check(other)
        lo = _max_opt(self.lo, other.lo)
        hi = _min_opt(self.hi, other.hi)
        out = {}
        for src in (self, other):
            for a, p in src.components.items():
                if (lo is None or a >= lo) and (hi is None or a <= hi):
                    out[a] = out[a] + p if a in out else p
        return GradedSeries(self.n, out, lo, hi, check=False)

    def __neg__(self):
        return GradedSeries(self.n, {a: -p for a, p in self.components.items()}, self.lo, self.hi, self.note, False)

    def __sub__(self, other):
        return self + (-self._check(other))

    def scale(self, c) -> "GradedSeries":
        return GradedSeries(self.n, {a: p.scale(c) for a, p in self.components.items()}, self.lo, self.hi,
                            self.note, False)

    def __mul__(self, other):
        if not isinstance(other, (GradedSeries, SymLaurent)):
            return self.scale(other)
        other = self._check(other)
        hi = math.inf
        if self.hi is not None:
            hi = min(hi, self.hi + other._zero_below())
        if other.hi is not None:
            hi = min(hi, other.hi + self._zero_below())
        lo = -math.inf
        if self.lo is not None:
            lo = max(lo, self.lo + other._zero_above())
        if other.lo is not None:
            lo = max(lo, other.lo + self._zero_above())
        if lo > hi or lo == math.inf or hi == -math.inf:
            raise TruncationTooSmall("product of series expanding into opposite cones is not determined")
        lo_i = None if lo == -math.inf else int(lo)
        hi_i = None if hi == math.inf else int(hi)
        out = {}
        for a, p in self.components.items():
            for b, r in other.components.items():
                g = a + b
                if (lo_i is not None and g < lo_i) or (hi_i is not None and g > hi_i):
                    continue
                prod = p * r
                out[g] = out[g] + prod if g in out else prod
        return GradedSeries(self.n, out, lo_i, hi_i, check=False)

    __rmul__ = __mul__

    def dual(self) -> "GradedSeries":
        """X -> X^-1, which sends grade alpha to -alpha."""
        return GradedSeries(
            self.n,
            {-a: p.dual() for a, p in self.components.items()},
            None if self.hi is None else -self.hi,
            None if self.lo is None else -self.lo,
            self.note,
            check=False,
        )

    def equal_on(self, other, lo, hi) -> bool:
        return all(self[a] == other[a] for a in range(lo, hi + 1))

    def mismatched_grades(self, other, lo, hi):
        return [a for a in range(lo, hi + 1) if self[a] != other[a]]

    def __eq__(self, other):
        if not isinstance(other, GradedSeries):
            return NotImplemented
        return (self.n, self.lo, self.hi, self.components) == (other.n, other.lo, other.hi, other.components)

    __hash__ = None

    def to_json(self):
        return {
            "n": self.n,
            "lo": self.lo,
            "hi": self.hi,
            "grades": {str(a): self.components[a].to_json() for a in sorted(self.components)},
        }

    def __repr__(self):
        body = ", ".join(f"{a}: {self.components[a]}" for a in sorted(self.components))
        return f"GradedSeries([{self.lo}, {self.hi}] {{{body}}})"


def _max_opt(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return max(a, b)


def _min_opt(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def grade_by_alpha(P: SymLaurent) -> GradedSeries:
    """Split a Laurent polynomial by total degree."""
    comps = {}
    for e, c in P.terms.items():
        comps.setdefault(sum(e), {})[e] = c
    return GradedSeries(
        P.n,
        {a: SymLaurent(P.n, t, P.weyl_invariant, _trusted=True) for a, t in comps.items()},
        check=False,
    )
