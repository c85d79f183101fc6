"""Spherical functions on GL1 and GL2 and their Satake transforms.

Haar measure gives K volume 1.  A spherical function is a map from dominant
cocharacters mu (tuples; ``(k,)`` for GL1, ``(m1, m2)`` with m1 >= m2 for GL2)
to Q(v) coefficients, standing for sum f(mu) 1_{K mu(varpi) K}.  Like
GradedSeries it may be known only on a window of grades alpha = sum(mu).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import kernels
from .errors import (
    DegenerateSatake,
    EnumerationBudgetExceeded,
    NonDominant,
    NotWeylInvariant,
    QuadratureBudget,
    TruncationTooSmall,
    UnboundedSupport,
)
from .series import ExactScalar, GradedSeries, SymLaurent, V, complete_homogeneous

GROUP_RANK = {"GL1": 1, "GL2": 2, "T2": 2}


def _rank(group):
    try:
        return GROUP_RANK[group]
    except KeyError:
        raise ValueError(f"unsupported group {group!r}") from None


def _mu(group, mu):
    mu = (int(mu),) if isinstance(mu, int) else tuple(int(x) for x in mu)
    if len(mu) != _rank(group):
        raise ValueError(f"cell {mu} has the wrong length for {group}")
    if group == "GL2" and mu[0] < mu[1]:
        raise NonDominant(f"{mu} is not dominant")
    return mu


class SphericalFunction:
    """Finite-per-grade combination of Cartan cell indicators."""

    __slots__ = ("group", "cells", "lo", "hi", "section")

    def __init__(self, group, cells=None, lo=None, hi=None, section=None):
        _rank(group)
        self.group = group
        self.lo, self.hi = lo, hi
        self.section = section  # exact closed form of the Satake transform, if known
        clean = {}
        for mu, c in (cells or {}).items():
            mu = _mu(group, mu)
            c = ExactScalar.of(c)
            if not c:
                continue
            a = sum(mu)
            if (lo is not None and a < lo) or (hi is not None and a > hi):
                raise ValueError(f"cell {mu} lies outside the window [{lo}, {hi}]")
            clean[mu] = c
        self.cells = clean

    @classmethod
    def indicator(cls, group, mu, coeff=1):
        return cls(group, {_mu(group, mu): coeff})

    @property
    def rank(self):
        return _rank(self.group)

    def is_compactly_supported(self):
        return self.lo is None and self.hi is None

    @property
    def trunc(self):
        if self.is_compactly_supported():
            return None
        if self.lo is None:
            return self.hi
        if self.hi is None:
            return -self.lo
        return max(self.hi, -self.lo)

    def knows(self, a):
        return (self.lo is None or a >= self.lo) and (self.hi is None or a <= self.hi)

    def grades(self):
        return sorted({sum(mu) for mu in self.cells})

    def cells_in_grade(self, a):
        if not self.knows(a):
            raise TruncationTooSmall(f"grade {a} outside [{self.lo}, {self.hi}]")
        return {mu: c for mu, c in self.cells.items() if sum(mu) == a}

    def __getitem__(self, mu):
        mu = _mu(self.group, mu)
        if not self.knows(sum(mu)):
            raise TruncationTooSmall(f"cell {mu} outside the materialized window")
        return self.cells.get(mu, ExactScalar.zero())

    def truncate(self, lo=None, hi=None):
        new_lo = self.lo if lo is None else lo if self.lo is None else max(lo, self.lo)
        new_hi = self.hi if hi is None else hi if self.hi is None else min(hi, self.hi)
        cells = {mu: c for mu, c in self.cells.items()
                 if (new_lo is None or sum(mu) >= new_lo) and (new_hi is None or sum(mu) <= new_hi)}
        return SphericalFunction(self.group, cells, new_lo, new_hi, self.section)

    def _combine(self, other, sign):
        if other.group != self.group:
            raise ValueError("groups differ")
        lo = self.lo if other.lo is None else other.lo if self.lo is None else max(self.lo, other.lo)
        hi = self.hi if other.hi is None else other.hi if self.hi is None else min(self.hi, other.hi)
        cells = {}
        for mu, c in self.cells.items():
            cells[mu] = c
        for mu, c in other.cells.items():
            cells[mu] = cells.get(mu, ExactScalar.zero()) + sign * c
        cells = {mu: c for mu, c in cells.items()
                 if (lo is None or sum(mu) >= lo) and (hi is None or sum(mu) <= hi)}
        return SphericalFunction(self.group, cells, lo, hi)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def scale(self, c):
        c = ExactScalar.of(c)
        return SphericalFunction(self.group, {mu: x * c for mu, x in self.cells.items()}, self.lo, self.hi)

    def __eq__(self, other):
        if not isinstance(other, SphericalFunction):
            return NotImplemented
        return (self.group, self.cells, self.lo, self.hi) == (other.group, other.cells, other.lo, other.hi)

    __hash__ = None

    def support_bound(self):
        """max |m_i| over the support, or None for the zero function."""
        if not self.cells:
            return None
        return max(max(abs(x) for x in mu) for mu in self.cells)

    def to_json(self):
        out = {
            "group": self.group,
            "cells": [{"mu": list(mu), "coeff": str(c)} for mu, c in sorted(self.cells.items())],
        }
        if not self.is_compactly_supported():
            out["lo"], out["hi"] = self.lo, self.hi
        if self.section is not None:
            out["section"] = {"num": self.section.num.to_json(), "den": self.section.den.to_json()}
        return out

    @classmethod
    def from_json(cls, data):
        cells = {tuple(d["mu"]): ExactScalar.parse(str(d["coeff"])) for d in data.get("cells", [])}
        section = None
        if "section" in data:
            from .rho_transform.sections import RationalSection

            n = _rank(data["group"])
            sym = data["group"] == "GL2"
            section = RationalSection(SymLaurent.from_json(data["section"]["num"], n, sym),
                                      SymLaurent.from_json(data["section"]["den"], n, sym))
        return cls(data["group"], cells, data.get("lo"), data.get("hi"), section)

    def __repr__(self):
        body = ", ".join(f"{mu}: {c}" for mu, c in sorted(self.cells.items()))
        return f"SphericalFunction({self.group}, [{self.lo}, {self.hi}] {{{body}}})"


def dual_function(f: SphericalFunction) -> SphericalFunction:
    """f -> f(g^-1), i.e. mu -> -w0 mu."""
    if f.group == "GL1":
        cells = {(-mu[0],): c for mu, c in f.cells.items()}
    else:
        cells = {(-mu[1], -mu[0]): c for mu, c in f.cells.items()}
    lo = None if f.hi is None else -f.hi
    hi = None if f.lo is None else -f.lo
    return SphericalFunction(f.group, cells, lo, hi)


# ------------------------------------------------------------------- Satake


@lru_cache(maxsize=None)
def _basis_cached(group, mu):
    if group == "GL1":
        return SymLaurent(1, {mu: ExactScalar.one()}, weyl_invariant=True)
    m1, m2 = mu
    m = m1 - m2
    core = complete_homogeneous(m, 2) - complete_homogeneous(m - 2, 2).shift_exponent((1, 1)).scale(V ** -2)
    return core.shift_exponent((m2, m2)).scale(V ** m).symmetrized_flag()


def satake_basis(group, mu) -> SymLaurent:
    """Satake transform of the indicator of K mu(varpi) K.

    GL2: v^m (X1 X2)^m2 (h_m - q^-1 X1 X2 h_{m-2}) with m = m1 - m2.
    """
    if group not in ("GL1", "GL2"):
        raise ValueError("satake_basis is defined for GL1 and GL2")
    return _basis_cached(group, _mu(group, mu))


def cartan_volume(group, mu) -> ExactScalar:
    mu = _mu(group, mu)
    if group == "GL1":
        return ExactScalar.one()
    m = mu[0] - mu[1]
    return ExactScalar.one() if m == 0 else V ** (2 * m - 2) * (V ** 2 + 1)


def satake_transform(f: SphericalFunction) -> GradedSeries:
    n = f.rank
    comps = {}
    for mu, c in f.cells.items():
        a = sum(mu)
        term = satake_basis(f.group, mu).scale(c)
        comps[a] = comps[a] + term if a in comps else term
    return GradedSeries(n, comps, f.lo, f.hi, note="satake transform", check=False)


def inverse_satake(P: SymLaurent, group) -> SphericalFunction:
    """Triangular solve against satake_basis along the dominance order."""
    if not P.is_symmetric():
        raise NotWeylInvariant("inverse Satake needs a Weyl-invariant polynomial")
    if group == "GL1":
        if P.n != 1:
            raise ValueError("GL1 sections have one variable")
        return SphericalFunction("GL1", {e: c for e, c in P.terms.items()})
    if P.n != 2:
        raise ValueError("GL2 sections have two variables")
    rem = dict(P.terms)
    cells = {}
    while rem:
        lead = max((e for e in rem if e[0] >= e[1]), key=lambda e: (e[0] - e[1], e))
        c = rem[lead] / V ** (lead[0] - lead[1])
        cells[lead] = c
        for e, b in satake_basis("GL2", lead).terms.items():
            val = rem.get(e, ExactScalar.zero()) - c * b
            if val:
                rem[e] = val
            else:
                rem.pop(e, None)
    return SphericalFunction("GL2", cells)


def inverse_satake_graded(G: GradedSeries, group) -> SphericalFunction:
    cells = {}
    for a, comp in G.components.items():
        cells.update(inverse_satake(comp, group).cells)
    return SphericalFunction(group, cells, G.lo, G.hi)


# ------------------------------------------------------------ lattice oracle


def lattice_count_oracle(mu, chi, q: int, budget: int = 100_000, backend=None) -> complex:
    """Satake transform of 1_{K mu K} at chi by enumerating cosets.

    Every coset in K mu K (mu >= 0) has a representative [[w^a, b], [0, w^d]]
    with a + d = m1 + m2 and b running over O / w^a; its cell is read off
    from min(a, d, val(b)), and it contributes v^(d-a) X1^a X2^d.
    Negative mu are reduced to mu >= 0 by a central shift.
    """
    m1, m2 = _mu("GL2", mu)
    q = int(q)
    x1, x2 = (complex(c) for c in chi)
    shift = m2 if m2 < 0 else 0
    n1, n2 = m1 - shift, m2 - shift
    total = n1 + n2
    work = sum(q ** a for a in range(total + 1))
    if work > budget:
        raise EnumerationBudgetExceeded(f"{work} cosets exceed the budget {budget}")
    counts = kernels.cell_counts(q, total, backend)
    v = math.sqrt(q)
    acc = 0j
    for a in range(total + 1):
        d = total - a
        cnt = int(counts[a, n2]) if n2 <= min(a, d) else 0
        if cnt:
            acc += cnt * v ** (d - a) * x1 ** a * x2 ** d
    return acc * (x1 * x2) ** shift


def coset_count(mu, q: int, budget: int = 100_000) -> int:
    """Number of left K-cosets in K mu K, i.e. its volume."""
    m1, m2 = _mu("GL2", mu)
    n1, n2 = m1 - m2, 0
    total = n1 + n2
    if sum(q ** a for a in range(total + 1)) > budget:
        raise EnumerationBudgetExceeded("coset enumeration too large")
    counts = kernels.cell_counts(q, total)
    return int(counts[:, 0].sum()) if total else 1


# ------------------------------------------------------------------ zonal


def _zonal_regular(x1, x2, mu, q):
    if len(mu) == 1:
        return x1 ** mu[0]
    m1, m2 = mu
    r = x2 / x1
    c = (1 - r / q) / (1 - r)
    cw = (1 - 1 / (r * q)) / (1 - 1 / r)
    pref = q ** (-(m1 - m2) / 2) / (1 + 1 / q)
    return pref * (c * x1 ** m1 * x2 ** m2 + cw * x2 ** m1 * x1 ** m2)


def zonal_value(chi, mu, q) -> complex:
    """Macdonald's zonal spherical function at mu(varpi) for numeric Satake data.

    Near X1 = X2 the two c-function terms cancel; there X2 is rotated by
    +-h and the symmetric averages at h and h/2 are Richardson-combined.
    """
    group = "GL1" if len(chi) == 1 else "GL2"
    mu = _mu(group, mu)
    if group == "GL1":
        return complex(chi[0]) ** mu[0]
    x1, x2 = complex(chi[0]), complex(chi[1])
    if abs(x1 - x2) >= 1e-6:
        return complex(_zonal_regular(x1, x2, mu, q))

    def sym(h):
        rot = cmath.exp(1j * h)
        return 0.5 * (_zonal_regular(x1, x2 * rot, mu, q) + _zonal_regular(x1, x2 / rot, mu, q))

    h = 3e-3
    return complex((4 * sym(h / 2) - sym(h)) / 3)


def zonal_value_exact(chi, mu) -> ExactScalar:
    x1, x2 = (ExactScalar.of(c) for c in chi)
    if x1 == x2:
        raise DegenerateSatake("exact zonal values need X1 != X2")
    m1, m2 = _mu("GL2", mu)
    q = V ** 2
    r = x2 / x1
    c = (1 - r / q) / (1 - r)
    cw = (1 - 1 / (r * q)) / (1 - 1 / r)
    return V ** (m2 - m1) / (1 + 1 / q) * (c * x1 ** m1 * x2 ** m2 + cw * x2 ** m1 * x1 ** m2)


# ------------------------------------------------------------ constant term


def _torus(cells):
    return SphericalFunction("T2", cells)


def constant_term(f: SphericalFunction, route: str = "spectral") -> SphericalFunction:
    """Constant term along the upper Borel, with the delta^(1/2) normalization.

    ``spectral`` reads torus coefficients off the Satake transform.
    ``geometric`` integrates f(m n) over N(F) cell by cell: for
    m = diag(w^a, w^d) and x with val(x) = j, m n lies in the cell
    (a + d - min(a, d, a + j), min(a, d, a + j)).
    """
    if f.group != "GL2":
        raise ValueError("constant_term is implemented for GL2")
    if not f.is_compactly_supported():
        raise UnboundedSupport("constant term needs a compactly supported function")
    if route == "spectral":
        return _torus(satake_transform(f).total().terms)
    if route != "geometric":
        raise ValueError("route must be 'spectral' or 'geometric'")
    if not f.cells:
        return _torus({})
    q_inv = V ** -2
    low = min(mu[1] for mu in f.cells)
    high = max(mu[0] for mu in f.cells)
    out = {}
    for alpha in {sum(mu) for mu in f.cells}:
        for a in range(low, high + 1):
            d = alpha - a
            if not low <= d <= high:
                continue
            lo_ad, hi_ad = min(a, d), max(a, d)
            acc = f.cells.get((hi_ad, lo_ad), ExactScalar.zero()) * q_inv ** (lo_ad - a)
            for j in range(low - a, lo_ad - a):
                cell = (d - j, a + j)
                if cell in f.cells:
                    acc = acc + f.cells[cell] * (1 - q_inv) * q_inv ** j
            if acc:
                out[(a, d)] = acc * V ** (d - a)
    return _torus(out)


# -------------------------------------------------------------- Plancherel


def l2_norm_sq(f: SphericalFunction, q) -> float:
    """Geometric side: sum |f(mu)|^2 vol(K mu K)."""
    return float(sum(c.evaluate(q) ** 2 * cartan_volume(f.group, mu).evaluate(q) for mu, c in f.cells.items()))


@dataclass(frozen=True)
class PlancherelReport:
    geometric: float
    spectral: float
    c0: float
    M: int

    @property
    def residual(self) -> float:
        return abs(self.geometric - self.spectral)

    @property
    def relative_residual(self) -> float:
        return self.residual / self.geometric if self.geometric else self.residual


def plancherel_inversion_check(f: SphericalFunction, q, M: int = 512, backend=None) -> PlancherelReport:
    """Compare sum |f|^2 vol with the torus integral of |S f|^2 against c0/|c|^2.

    c0 is calibrated on 1_K: it is the reciprocal of the mean of 1/|c|^2.
    """
    if not f.is_compactly_supported():
        raise UnboundedSupport("Plancherel check needs compact support")
    if M < 8 or M > 8192:
        raise QuadratureBudget("need 8 <= M <= 8192 quadrature points per circle")
    P = satake_transform(f).total()
    weighted = f.group == "GL2"
    if P.terms:
        exps, coeffs = P.to_arrays(q)
    else:
        exps, coeffs = np.zeros((1, f.rank), dtype=np.int64), np.zeros(1)
    mean, mean_w = kernels.torus_means(exps, coeffs.astype(complex), q, M, weighted, backend)
    c0 = 1.0 / mean_w
    return PlancherelReport(l2_norm_sq(f, q), c0 * mean, c0, M)
