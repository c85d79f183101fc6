"""Archimedean L-factors for representations of the L-group of a real torus.

The torus is G_m^a x (Res_{C/R} G_m)^b x U_1^c.  A tempered representation
composed with a parameter gives Gamma_R- or Gamma_C-type factors, recorded as
ArchComponent(d, shift, s0) with s0 purely imaginary.  Pole sets are exact
arithmetic progressions of Gaussian rationals; numerics go through log-Gamma.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy.special import loggamma

from .errors import PoleEvaluation, ShapeMismatch

# Gaussian rationals are (re, im) pairs of Fractions.
GaussRat = tuple


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class ArchComponent:
    """One Gamma factor.  ``s0`` holds the imaginary part of the twist."""

    d: int
    shift: Fraction
    s0: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "shift", _frac(self.shift))
        object.__setattr__(self, "s0", _frac(self.s0))
        if self.d == 1:
            if self.shift not in (0, 1):
                raise ValueError("Gamma_R components need shift 0 or 1")
        elif self.d == 2:
            if self.shift < 0 or (2 * self.shift).denominator != 1:
                raise ValueError("Gamma_C components need shift in (1/2) Z_{>=0}")
        else:
            raise ValueError("d must be 1 or 2")

    @property
    def kappa(self) -> int:
        return 2 if self.d == 1 else 1

    def dual(self) -> "ArchComponent":
        return ArchComponent(self.d, self.shift, -self.s0)

    def __str__(self):
        return f"({self.d}, {self.shift}, {self.s0}i)"


# ------------------------------------------------------------------ parameters


@dataclass(frozen=True)
class RealTorusDatum:
    """The parameter phi_{eps, k, k'} attached to (eps, k, k') in {0,1}^a x Z^b x Z^c."""

    eps: tuple = ()
    k: tuple = ()
    kprime: tuple = ()

    def __post_init__(self):
        if any(e not in (0, 1) for e in self.eps):
            raise ValueError("eps entries must be 0 or 1")
        object.__setattr__(self, "eps", tuple(int(e) for e in self.eps))
        object.__setattr__(self, "k", tuple(int(e) for e in self.k))
        object.__setattr__(self, "kprime", tuple(int(e) for e in self.kprime))

    @property
    def shape(self):
        return len(self.eps), len(self.k), len(self.kprime)

    def contragredient(self) -> "RealTorusDatum":
        return RealTorusDatum(self.eps, tuple(-x for x in self.k), tuple(-x for x in self.kprime))


@dataclass(frozen=True)
class OneDimRep:
    """rho_{l, l', s0, e}: (t, (z1, z2), u) x z -> |z|^s0 prod t^l prod (z1 z2)^l'; j -> (-1)^e."""

    l: tuple = ()
    lp: tuple = ()
    e: int = 0
    s0: Fraction = Fraction(0)

    def __post_init__(self):
        if self.e not in (0, 1):
            raise ValueError("e must be 0 or 1")
        object.__setattr__(self, "s0", _frac(self.s0))

    def shape(self):
        return len(self.l), len(self.lp), None


@dataclass(frozen=True)
class TwoDimRep:
    """Induction of |z|_C^s0 (z/|z|)^m prod t^l prod z1^l' z2^l'' prod u^l'''."""

    l: tuple = ()
    lp: tuple = ()
    lpp: tuple = ()
    lppp: tuple = ()
    m: int = 0
    s0: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "s0", _frac(self.s0))
        if len(self.lp) != len(self.lpp):
            raise ShapeMismatch("l' and l'' must have the same length")
        irreducible = any(a != b for a, b in zip(self.lp, self.lpp)) or any(self.lppp) or self.m != 0
        if not irreducible:
            raise ValueError("this induced representation is reducible")

    def shape(self):
        return len(self.l), len(self.lp), len(self.lppp)


ArchIrrRep = "OneDimRep | TwoDimRep"


def _compose_one(rho, phi: RealTorusDatum) -> ArchComponent:
    a, b, c = phi.shape
    ra, rb, rc = rho.shape()
    if ra != a or rb != b or (rc is not None and rc != c):
        raise ShapeMismatch(f"representation shape {rho.shape()} does not fit torus shape {phi.shape}")
    if isinstance(rho, OneDimRep):
        parity = rho.e + sum(e * l for e, l in zip(phi.eps, rho.l)) + sum(k * l for k, l in zip(phi.k, rho.lp))
        return ArchComponent(1, parity % 2, rho.s0)
    total = rho.m
    total += sum(k * (lp - lpp) for k, lp, lpp in zip(phi.k, rho.lp, rho.lpp))
    total += sum(k * l for k, l in zip(phi.kprime, rho.lppp))
    return ArchComponent(2, Fraction(abs(total), 2), rho.s0)


def arch_compose(rhos, phi: RealTorusDatum) -> list[ArchComponent]:
    """Gamma components of L(s, phi, rho) for rho the direct sum of ``rhos``."""
    return [_compose_one(r, phi) for r in rhos]


# ------------------------------------------------------------------- L values


@dataclass(frozen=True)
class PoleProgression:
    """Points start + step * n for n >= 0 (step is negative real)."""

    start: GaussRat
    step: Fraction

    def __contains__(self, point) -> bool:
        re, im = point
        if im != self.start[1]:
            return False
        n = (re - self.start[0]) / self.step
        return n >= 0 and n.denominator == 1

    def in_strip(self, beta) -> list:
        """Poles with real part in [-beta, beta]."""
        beta = _frac(beta)
        out = []
        n = 0
        while True:
            re = self.start[0] + self.step * n
            if re < -beta:
                return out
            if re <= beta:
                out.append((re, self.start[1]))
            n += 1

    def __str__(self):
        re, im = self.start
        return f"{{{re}{'+' if im >= 0 else '-'}{abs(im)}i {'+' if self.step >= 0 else '-'} {abs(self.step)}n : n >= 0}}"


def pole_set(comp: ArchComponent) -> PoleProgression:
    return PoleProgression((-comp.shift, -comp.s0), Fraction(-comp.kappa))


def _gamma_arg(comp, s):
    z = complex(s) + 1j * float(comp.s0) + float(comp.shift)
    return z / 2 if comp.d == 1 else z


def _is_pole(comp, s, tol=1e-12):
    w = _gamma_arg(comp, s)
    return abs(w.imag) < tol and w.real < tol and abs(w.real - round(w.real)) < tol


def l_factor_arch(comp: ArchComponent, s) -> complex:
    if _is_pole(comp, s):
        raise PoleEvaluation(f"s = {s} is a pole of {comp}")
    w = _gamma_arg(comp, s)
    if comp.d == 1:
        return complex(np.exp(-w * math.log(math.pi) + loggamma(w)))
    return complex(2 * np.exp(-w * math.log(2 * math.pi) + loggamma(w)))


def gamma_arch(comps, s) -> complex:
    """L(1-s, dual)/L(s) with the epsilon factor set to 1 (only its modulus is known)."""
    out = 1 + 0j
    for c in comps:
        out *= l_factor_arch(c.dual(), 1 - complex(s)) / l_factor_arch(c, s)
    return out


# ------------------------------------------------------------- pole killing


@dataclass(frozen=True)
class RootPolynomial:
    """Monic polynomial in s given by its exact root multiset."""

    roots: tuple = ()

    def coefficients(self):
        """Coefficients (lowest degree first) as Gaussian rationals."""
        coeffs = [(Fraction(1), Fraction(0))]
        for r_re, r_im in self.roots:
            nxt = [(Fraction(0), Fraction(0))] * (len(coeffs) + 1)
            for i, (c_re, c_im) in enumerate(coeffs):
                # multiply by (s - r)
                a_re, a_im = nxt[i + 1]
                nxt[i + 1] = (a_re + c_re, a_im + c_im)
                b_re, b_im = nxt[i]
                nxt[i] = (b_re - (c_re * r_re - c_im * r_im), b_im - (c_re * r_im + c_im * r_re))
            coeffs = nxt
        return coeffs

    @property
    def degree(self):
        return len(self.roots)

    def evaluate(self, s) -> complex:
        out = 1 + 0j
        for re, im in self.roots:
            out *= complex(s) - complex(float(re), float(im))
        return out

    def __mul__(self, other):
        return RootPolynomial(tuple(sorted(self.roots + other.roots)))

    def __str__(self):
        if not self.roots:
            return "1"
        parts = []
        for re, im in self.roots:
            c_re, c_im = -re, -im
            txt = "s"
            if c_re:
                txt += f"{'+' if c_re > 0 else '-'}{abs(c_re)}"
            if c_im:
                txt += f"{'+' if c_im > 0 else '-'}{abs(c_im)}i"
            parts.append(txt if txt == "s" else f"({txt})")
        return "*".join(parts)


def _lattice_factor(s0: Fraction, ns) -> RootPolynomial:
    """prod over n of (s + s0 i - n): roots n - s0 i."""
    return RootPolynomial(tuple(sorted((Fraction(n), -s0) for n in ns)))


def pole_killing_factor(comp: ArchComponent, beta) -> RootPolynomial:
    """The finite family's member for one component.

    Gamma_R: the n in [-beta, 0] of the parity of e.  Gamma_C with shift k:
    n in {-k, -k-1, ...} down to -beta, which for half-integral k is the
    half-integer lattice rather than [-beta, -k] of the integers.
    """
    beta = _frac(beta)
    if comp.d == 1:
        e = int(comp.shift)
        ns = [n for n in range(-math.floor(beta), 1) if (n - e) % 2 == 0]
    else:
        ns = []
        n = -comp.shift
        while n >= -beta:
            ns.append(n)
            n -= 1
    return _lattice_factor(comp.s0, ns)


def pole_killing_poly(comps, beta) -> RootPolynomial:
    out = RootPolynomial()
    for c in comps:
        out = out * pole_killing_factor(c, beta)
    return out


@dataclass(frozen=True)
class PoleKillingReport:
    strip_poles: Counter
    strip_zeros: Counter
    residual_poles: Counter
    extra_zeros: Counter

    @property
    def ok(self) -> bool:
        return not self.residual_poles and not self.extra_zeros


def verify_pole_killing(comps, beta) -> PoleKillingReport:
    """Compare the pole multiset of prod L in the strip with the zeros of p there."""
    beta = _frac(beta)
    poles = Counter()
    for c in comps:
        poles.update(pole_set(c).in_strip(beta))
    p = pole_killing_poly(comps, beta)
    zeros = Counter(r for r in p.roots if -beta <= r[0] <= beta)
    return PoleKillingReport(poles, zeros, poles - zeros, zeros - poles)


def enumerate_pole_killing_family(beta, d_values=(1, 2), s0=Fraction(0)):
    """The nontrivial members of the finite family, keyed by (d, shift).

    Shifts beyond beta give the constant polynomial, which is what makes
    the family finite.
    """
    beta = _frac(beta)
    out = {}
    for d in d_values:
        shifts = [Fraction(0), Fraction(1)] if d == 1 else [Fraction(j, 2) for j in range(int(2 * beta) + 1)]
        for k in shifts:
            p = pole_killing_factor(ArchComponent(d, k, s0), beta)
            if p.degree:
                out[(d, k)] = p
    return out


# ------------------------------------------------------------ Gamma ratio bounds


def _log_abs_gamma(z):
    """log|Gamma(z)|, using |Im z| so conjugate arguments give identical values."""
    z = np.asarray(z, dtype=complex)
    return np.real(loggamma(np.real(z) + 1j * np.abs(np.imag(z))))


def _nonpositive_integer(z, tol=1e-12):
    z = np.asarray(z, dtype=complex)
    re = np.real(z)
    return (np.abs(np.imag(z)) < tol) & (re < tol) & (np.abs(re - np.round(re)) < tol)


@dataclass
class MorenoReport:
    d: int
    Q: np.ndarray
    s: np.ndarray
    lhs: np.ndarray
    rhs: np.ndarray
    slack: np.ndarray = field(init=False)

    def __post_init__(self):
        self.slack = self.rhs - self.lhs

    @property
    def min_slack(self) -> float:
        return float(np.min(self.slack))

    @property
    def min_relative_slack(self) -> float:
        return float(np.min(self.slack / self.rhs))

    def passes(self, rel_tol=1e-9) -> bool:
        """Equality is attained on the grid (Re s = 1/2 and a few corners), so allow rounding."""
        return bool(np.all(self.slack >= -rel_tol * self.rhs))

    def rows(self):
        for Q, s, l, r, sl in zip(self.Q, self.s, self.lhs, self.rhs, self.slack):
            yield float(Q), complex(s), float(l), float(r), float(sl)


def _grid(Q_grid, s_grid):
    Q = np.asarray(list(Q_grid), dtype=float)
    s = np.asarray(list(s_grid), dtype=complex)
    QQ, SS = np.meshgrid(Q, s, indexing="ij")
    return QQ.ravel(), SS.ravel()


def verify_moreno(d: int, Q_grid, s_grid) -> MorenoReport:
    """|Gamma(d/2 (Q+1-s)) / Gamma(d/2 (Q+s))| against (d/2 |Q+1+s|)^(d/2 - d Re s)."""
    if d not in (1, 2):
        raise ValueError("d must be 1 or 2")
    Q, s = _grid(Q_grid, s_grid)
    if np.any(Q < 0) or np.any(np.abs(np.real(s)) > 0.5 + 1e-15):
        raise ValueError("need Q >= 0 and |Re s| <= 1/2")
    num = d / 2 * (Q + 1 - s)
    den = d / 2 * (Q + s)
    dead = _nonpositive_integer(den)
    safe_den = np.where(dead, 1.0, den)
    log_lhs = _log_abs_gamma(num) - _log_abs_gamma(safe_den)
    lhs = np.where(dead, 0.0, np.exp(log_lhs))
    rhs = np.exp((d / 2 - d * np.real(s)) * np.log(d / 2 * np.abs(Q + 1 + s)))
    return MorenoReport(d, Q, s, lhs, rhs)


@dataclass
class RatioBoundReport:
    n: int
    d: int
    C: float
    argmax: tuple
    points: int


def ratio_bound_terms(n: int, d: int, Q, s):
    """(LHS, RHS) of the corrected ratio bound, vectorized over Q and s.

    With z = d/2 (Q + 1/2 - s) the polynomial p has roots s_k = Q + 1/2 + 2k/d
    for Re s_k <= n, and p(s) Gamma(z) = (-2/d)^M Gamma(z + M).  Likewise
    p_dual(s) Gamma(z') = (2/d)^M' Gamma(z' + M') with z' = d/2 (Q + 1/2 + s).
    The closed forms stay finite where the raw factors have cancelling
    poles and zeros.
    """
    Q = np.asarray(Q, dtype=float)
    s = np.asarray(s, dtype=complex)
    M = np.where(Q + 0.5 <= n, np.floor((n - Q - 0.5) * d / 2 + 1e-12) + 1, 0)
    z = d / 2 * (Q + 0.5 - s)
    zd = d / 2 * (Q + 0.5 + s)
    dead = _nonpositive_integer(zd + M)
    log_lhs = (_log_abs_gamma(z + M) - _log_abs_gamma(np.where(dead, 1.0, zd + M))) + 0.0
    lhs = np.where(dead, 0.0, np.exp(log_lhs))  # |(2/d)^(M - M')| = 1 as M = M'
    # |p(s)| from its roots
    p_abs = np.ones_like(lhs)
    max_m = int(np.max(M)) if M.size else 0
    for k in range(max_m):
        root = Q + 0.5 + 2 * k / d
        p_abs = np.where(k < M, p_abs * np.abs(s - root), p_abs)
    rhs = (1 + p_abs) * np.abs(Q + 1 + s + 2 * n) ** (n * d + 2)
    return lhs, rhs


def verify_ratio_bound(n: int, d: int, Q_grid, s_grid) -> RatioBoundReport:
    if n < 1:
        raise ValueError("n must be a positive integer")
    Q, s = _grid(Q_grid, s_grid)
    if np.any(np.abs(np.real(s)) > n + 1e-12):
        raise ValueError("grid leaves the strip |Re s| <= n")
    if np.any(np.abs(2 * Q - np.round(2 * Q)) > 1e-12):
        raise ValueError("Q must lie in (1/2) Z")
    lhs, rhs = ratio_bound_terms(n, d, Q, s)
    ratio = lhs / rhs
    i = int(np.argmax(ratio))
    return RatioBoundReport(n, d, float(ratio[i]), (float(Q[i]), complex(s[i])), int(ratio.size))
