"""Local zeta integrals, the functional equation, and Schwartz-stability evidence.

For spherical f the zeta integral against the zonal coefficient of chi is
sum over cells of f(mu) vol(mu) omega_chi(mu) t^alpha(mu), which is the
Satake transform of f at the twisted character X -> X t.  Symbolically, the
coefficient of t^alpha is therefore grade alpha of the Satake transform.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from ..errors import TruncationTooSmall
from ..series import ExactScalar, GradedSeries, LaurentRational, SymLaurent, V
from ..spherical_gl import (
    SphericalFunction,
    cartan_volume,
    inverse_satake,
    satake_transform,
    zonal_value,
)
from ..wd_params import AlgebraicRep
from .transform import (
    basic_function,
    cone_direction,
    fourier_function,
    gamma_product,
    grade_by_alpha_sym,
    linv_poly,
)

T = LaurentRational.t()


def _window(sigma, N):
    return (None, N) if sigma > 0 else (-N, None)


def l_series_direct(rho: AlgebraicRep, N: int) -> GradedSeries:
    """prod over weights y of sum_k v^-k y^k, one geometric series per weight."""
    sigma = cone_direction(rho)
    n = rho.rank
    out = GradedSeries(n, {0: SymLaurent.constant(n, 1)}, *_window(sigma, N))
    for w in rho.weights():
        c = abs(sum(w))
        geo = {k * sum(w): SymLaurent.monomial(tuple(k * x for x in w), V ** -k) for k in range(N // c + 1)}
        out = out * GradedSeries(n, geo, *_window(sigma, N), check=False)
    return out


def zeta_series(f: SphericalFunction, dual: bool = False) -> GradedSeries:
    """Symbolic zeta integral: grade alpha carries the coefficient of t^alpha.

    ``dual`` gives the integral against the contragredient coefficient at -s,
    i.e. X -> X^-1 and t -> t^-1, which is the dual series.
    """
    S = satake_transform(f)
    return S.dual() if dual else S


def _eval_section_twisted(P: SymLaurent, chi) -> LaurentRational:
    out = LaurentRational.zero()
    for e, c in P.terms.items():
        val = c
        for x, k in zip(chi, e):
            val = val * x ** k
        out = out + val * T ** sum(e)
    return out


def zeta_integral(f: SphericalFunction, chi=None, q=None):
    """Z(s, f, chi) with t = q^-s.

    * ``chi=None``: the symbolic GradedSeries of :func:`zeta_series`.
    * exact ``chi`` (ExactScalar entries): a LaurentRational in t.  Needs
      compact support or a stored closed form.
    * numeric ``chi`` with ``q``: {alpha: complex coefficient of t^alpha},
      summed cell by cell with Macdonald's formula.
    """
    if chi is None:
        return zeta_series(f)
    if q is None:
        chi = [ExactScalar.of(x) for x in chi]
        if f.section is not None:
            return _eval_section_twisted(f.section.num, chi) / _eval_section_twisted(f.section.den, chi)
        if not f.is_compactly_supported():
            raise TruncationTooSmall("exact zeta values need compact support or a closed form")
        return _eval_section_twisted(satake_transform(f).total(), chi)
    out = {}
    for mu, c in f.cells.items():
        a = sum(mu)
        term = complex(c.evaluate(q)) * cartan_volume(f.group, mu).evaluate(q) * zonal_value(chi, mu, q)
        out[a] = out.get(a, 0j) + term
    return out


@dataclass
class FEReport:
    residual: float
    exact_zero: bool
    grades: tuple
    mismatched: list = field(default_factory=list)

    def passes(self) -> bool:
        return self.exact_zero


def functional_equation_residual(f: SphericalFunction, rho: AlgebraicRep, N: int, q=3) -> FEReport:
    """Compare Z(-s, F f, dual coefficient) with gamma * Z(s, f) as truncated series.

    The left side goes through the transform; the right side multiplies
    Linv(X) Z(s, f) by per-weight geometric series for L(X^-1).  Coefficient
    differences are exact; ``residual`` is their largest absolute value at q.
    """
    if not f.is_compactly_supported():
        raise TruncationTooSmall("the functional-equation check takes compactly supported f")
    sigma = cone_direction(rho)
    lhs = zeta_series(fourier_function(f, rho, N), dual=True)
    core = (linv_poly(rho) * satake_transform(f).total()) if f.cells else SymLaurent.zero(rho.rank)
    degs = core.degrees() or {0}
    slack = max(0, max(sigma * d for d in degs))
    rhs = l_series_direct(rho, N + slack).dual() * GradedSeries(rho.rank, grade_by_alpha_sym(core, rho.group))
    known = sorted(set(lhs.components) | set(rhs.components) | {-sigma * N})
    lo, hi = (-N, max(known)) if sigma > 0 else (min(known), N)
    worst = 0.0
    bad = []
    for a in range(lo, hi + 1):
        diff = lhs[a] - rhs[a]
        if diff:
            bad.append(a)
            worst = max(worst, max(abs(complex(c.evaluate(q))) for c in diff.terms.values()))
    return FEReport(worst, not bad, (lo, hi), bad)


# ---------------------------------------------------------------- stability


def _shift(f: SphericalFunction, e, c) -> SphericalFunction:
    if f.group == "GL2" and e[0] != e[1]:
        raise ValueError("a non-central monomial does not act on spherical functions by a shift")
    return SphericalFunction(f.group, {tuple(m + e[0] for m in mu): x * c for mu, x in f.cells.items()})


@dataclass
class StabilityReport:
    cells_per_grade: dict
    grades_finite: bool
    predicted_monomial: tuple
    predicted_coefficient: ExactScalar
    double_transform: SphericalFunction
    support: tuple
    predicted_support: tuple
    truncation_consistent: bool

    @property
    def support_matches(self) -> bool:
        return self.support == self.predicted_support

    def passes(self) -> bool:
        return self.grades_finite and self.support_matches and self.truncation_consistent


def check_schwartz_stability(f: SphericalFunction, rho: AlgebraicRep, N: int) -> StabilityReport:
    if not f.is_compactly_supported():
        raise TruncationTooSmall("stability is checked on compactly supported inputs")
    Ff = fourier_function(f, rho, N)
    S = satake_transform(Ff)
    per_grade = {a: len(Ff.cells_in_grade(a)) for a in sorted(S.components)}
    # each grade is a finite Laurent polynomial, so its inverse Satake image is a finite cell set
    finite = all(len(inverse_satake(p, f.group).cells) == per_grade[a] for a, p in S.components.items())
    FFf = fourier_function(Ff, rho, N, psi="psibar")
    P2 = FFf.section.polynomial()
    if P2 is None:
        raise RuntimeError("double transform is not a Laurent polynomial")
    exact = inverse_satake(P2, f.group) if P2 else SphericalFunction(f.group)
    consistent = all(FFf[mu] == exact[mu] for mu in set(FFf.cells) | {m for m in exact.cells if FFf.knows(sum(m))})
    mono = gamma_product(rho).polynomial()
    if mono is None or len(mono) != 1:
        raise RuntimeError(f"gamma(X) gamma(X^-1) is not a monomial: {gamma_product(rho)}")
    (e, c), = mono.terms.items()
    predicted = _shift(f, e, c)
    return StabilityReport(
        per_grade,
        finite,
        e,
        c,
        exact,
        tuple(sorted(exact.cells.items())),
        tuple(sorted(predicted.cells.items())),
        consistent,
    )


# ---------------------------------------------------------------- numerics


def norm_sq(f: SphericalFunction, q, hi=None) -> float:
    return float(sum(abs(complex(c.evaluate(q))) ** 2 * cartan_volume(f.group, mu).evaluate(q)
                     for mu, c in f.cells.items() if hi is None or sum(mu) <= hi))


def unitarity_residuals(f: SphericalFunction, rho: AlgebraicRep, q, Ns=(4, 8, 12)):
    """||f||^2 minus the norm of F f over grades up to N, for each N."""
    target = norm_sq(f, q)
    out = []
    for N in Ns:
        out.append(target - norm_sq(fourier_function(f, rho, N), q, hi=N))
    return out


@dataclass
class ConvergenceReport:
    lam: float
    in_cone: bool
    partial_sums: list
    abs_terms: dict
    ratio_estimate: float
    predicted_ratio: float

    @property
    def converges(self) -> bool:
        return self.ratio_estimate < 1


def zeta_convergence(rho: AlgebraicRep, lam: float, chi, q, N: int = 16) -> ConvergenceReport:
    """Absolute series sum |b(mu) vol zonal| q^(-lam alpha) for the basic function.

    The ratio estimate is the geometric mean growth per grade between N/2 and N.
    """
    from .cone import in_convergence_cone

    b = basic_function(rho, N)
    terms = {}
    signed = {}
    for mu, c in b.cells.items():
        a = sum(mu)
        z = complex(c.evaluate(q)) * cartan_volume(b.group, mu).evaluate(q) * zonal_value(chi, mu, q)
        w = q ** (-lam * a)
        terms[a] = terms.get(a, 0.0) + abs(z) * w
        signed[a] = signed.get(a, 0j) + z * w
    grades = sorted(terms)
    partial, acc = [], 0j
    for a in grades:
        acc += signed[a]
        partial.append(acc)
    half = [a for a in grades if abs(a) >= abs(grades[-1]) // 2]
    a0, a1 = half[0], half[-1]
    ratio = (terms[a1] / terms[a0]) ** (1 / (abs(a1) - abs(a0))) if a1 != a0 and terms[a0] > 0 else math.nan
    c = min(abs(w[0]) for w in rho.central_weights())
    predicted = q ** (-(0.5 + c * lam) / c)
    return ConvergenceReport(lam, in_convergence_cone(rho, lam), partial, terms, ratio, predicted)
