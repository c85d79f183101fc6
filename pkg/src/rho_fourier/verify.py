"""Identity batteries shared by the CLI and the test-suite.

Each check returns an IdentityResult naming the identity by a stable id and
a short formula, the inputs it ran on, a residual and a verdict.  Random
inputs come from numpy Generators seeded by the caller, so reports are
reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import factors_arch as fa
from . import factors_nonarch as fn
from .gl1_oracle import CellFunction, compare_spectral_direct
from .rho_transform import (
    basic_function,
    check_schwartz_stability,
    cone_check,
    expand_L_alpha,
    fourier_function,
    fourier_via_kernel,
    functional_equation_residual,
    gamma_section,
    l_series_direct,
    linv_poly,
    zeta_convergence,
    zeta_series,
)
from .series import ExactScalar, V
from .spherical_gl import (
    SphericalFunction,
    lattice_count_oracle,
    plancherel_inversion_check,
    satake_basis,
)
from .wd_params import AlgebraicRep, UnramWDRep, rho_compose

SUITES = ("gamma", "fourier", "zeta", "arch", "cone")

STANDARD_REPS = (("GL1", "std"), ("GL2", "std"), ("GL2", "sym2*det"))

SYM_X = ("1", "-1", "v", "v^3", "2", "1/3")

# (weights, expected strong convexity)
CONE_BATTERY = (
    (((1, 0), (0, 1)), True),
    (((1, 0), (-1, 1), (0, -1)), False),
    (((1,),), True),
    (((1,), (-1,)), False),
    (((2,), (4,), (1,)), True),
    (((0, 0),), False),
    (((1, 1), (1, -1), (1, 0)), True),
    (((1, 1), (-1, -1)), False),
    (((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)), True),
    (((1, 2), (2, 1), (-3, -3), (5, 0)), False),
)


@dataclass
class IdentityResult:
    identity: str
    formula: str
    inputs: dict
    residual: object
    passed: bool
    detail: dict = field(default_factory=dict)

    def to_json(self):
        out = {
            "identity": self.identity,
            "formula": self.formula,
            "inputs": self.inputs,
            "residual": self.residual,
            "passed": bool(self.passed),
        }
        if self.detail:
            out["detail"] = self.detail
        return out


# ------------------------------------------------------------------ generators

_PHI_POOL = ("1", "-1", "2", "-2", "1/3", "v", "v^-1", "-v", "2*v^-1", "3/2", "v^3")


def random_exact_phi(rng, max_dim: int = 4) -> UnramWDRep:
    """Random exact unramified parameter with dimension between 1 and ``max_dim``."""
    blocks = []
    left = int(rng.integers(1, max_dim + 1))
    while left:
        a = int(rng.integers(1, left + 1))
        blocks.append((ExactScalar.parse(_PHI_POOL[int(rng.integers(len(_PHI_POOL)))]), a))
        left -= a
    return UnramWDRep(tuple(blocks))


def _random_coeff(rng):
    a, b = (int(x) for x in rng.integers(-3, 4, size=2))
    if a == 0 and b == 0:
        a = 1
    return ExactScalar.of(a) + ExactScalar.of(b) * V ** int(rng.integers(-2, 3))


def random_compact_function(rng, group: str, bound: int = 3, max_cells: int = 4) -> SphericalFunction:
    """Random spherical function supported on cells with every |m_i| <= bound."""
    cells = {}
    for _ in range(int(rng.integers(1, max_cells + 1))):
        if group == "GL1":
            mu = (int(rng.integers(-bound, bound + 1)),)
        else:
            a, b = sorted((int(x) for x in rng.integers(-bound, bound + 1, size=2)), reverse=True)
            mu = (a, b)
        cells[mu] = _random_coeff(rng)
    return SphericalFunction(group, cells)


def random_arch_components(rng, max_len: int = 4):
    comps = []
    for _ in range(int(rng.integers(1, max_len + 1))):
        s0 = Fraction(int(rng.integers(-4, 5)), int(rng.integers(1, 4)))
        if rng.random() < 0.5:
            comps.append(fa.ArchComponent(1, int(rng.integers(0, 2)), s0))
        else:
            comps.append(fa.ArchComponent(2, Fraction(int(rng.integers(0, 8)), 2), s0))
    return comps


def battery(seed: int, size: int = 50):
    """The shared battery of (f, rho) pairs with compactly supported f."""
    rng = np.random.default_rng(seed)
    reps = [AlgebraicRep.named(g, r) for g, r in STANDARD_REPS]
    out = []
    for i in range(size):
        rho = reps[i % len(reps)]
        out.append((random_compact_function(rng, rho.group), rho))
    return out


# ---------------------------------------------------------------------- gamma


def check_sym_grid(qs, a_max: int = 5):
    bad = []
    for x in SYM_X:
        for a in range(1, a_max + 1):
            for q in qs:
                if not fn.check_sym_gamma_identity(ExactScalar.parse(x), a, q=q):
                    bad.append((x, a, q))
    st1 = fn.gamma_at_half(UnramWDRep.parse("1:2"))
    st2 = fn.gamma_at_half_closed_form(UnramWDRep.parse("1:2"))
    ok = not bad and st1 == -1 and st2 == -1
    return IdentityResult(
        "gamma.sym_block_restriction",
        "gamma(1/2, Sym^(a-1) x) = gamma(1/2, diagonal restriction); Steinberg gamma = -1",
        {"x": list(SYM_X), "a_max": a_max, "q": list(qs)},
        len(bad),
        ok,
        {"failures": [list(map(str, b)) for b in bad], "steinberg": [str(st1), str(st2)]},
    )


def check_reflection(seed: int, count: int = 100):
    rng = np.random.default_rng(seed)
    bad = []
    for _ in range(count):
        phi = random_exact_phi(rng)
        if not fn.check_gamma_reflection(phi):
            bad.append(str(phi))
    return IdentityResult(
        "gamma.reflection",
        "gamma(s, phi) gamma(1-s, dual phi) = 1",
        {"seed": seed, "count": count},
        len(bad),
        not bad,
        {"failures": bad},
    )


def check_unitarity(seed: int, q, count: int = 500, tol: float = 1e-10):
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(count):
        worst = max(worst, fn.check_gamma_unitarity(fn.random_unit_phi(rng), q))
    return IdentityResult(
        "gamma.unitarity",
        "|gamma(1/2, phi)| = 1 for unit-circle parameters",
        {"seed": seed, "count": count, "q": q},
        worst,
        worst <= tol,
    )


def check_gamma_section(seed: int, q, count: int = 20, tol: float = 1e-10):
    """The Satake-side section against the Weil-Deligne gamma factor at numeric chi."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for g, r in STANDARD_REPS:
        rho = AlgebraicRep.named(g, r)
        sec = gamma_section(rho)
        for _ in range(count):
            chi = list(np.exp(2j * np.pi * rng.random(rho.rank)))
            worst = max(worst, abs(sec.evaluate(chi, q) - fn.gamma_half_numeric(rho_compose(rho, chi), q)))
    return IdentityResult(
        "gamma.section_vs_factor",
        "gamma section at chi = gamma(1/2, rho o chi)",
        {"seed": seed, "count": count, "q": q},
        worst,
        worst <= tol,
    )


def suite_gamma(qs, seed, precision=1e-10):
    out = [check_sym_grid(qs), check_reflection(seed)]
    for q in qs:
        out.append(check_unitarity(seed, q, tol=precision))
        out.append(check_gamma_section(seed, q, tol=precision))
    return out


# --------------------------------------------------------------------- fourier


def check_basic_zeta(rho: AlgebraicRep, N: int = 8):
    b = basic_function(rho, N)
    ok = zeta_series(b).equal_on(l_series_direct(rho, N), 0, N) and zeta_series(b).mismatched_grades(
        l_series_direct(rho, N), -N, -1
    ) == []
    return IdentityResult(
        "zeta.basic_function",
        "Z(s, b_rho, zonal) = L(1/2 + s, chi, rho) up to t^N",
        {"rho": rho.to_json(), "N": N},
        0 if ok else 1,
        ok,
    )


def check_fixed_point(rho: AlgebraicRep, N: int = 8):
    b = basic_function(rho, N)
    Fb = fourier_function(b, rho, N)
    direct = l_series_direct(rho, N)
    from .spherical_gl import satake_transform

    bad = satake_transform(Fb).mismatched_grades(direct, 0, N)
    ok = not bad and Fb.cells == b.cells
    return IdentityResult(
        "fourier.fixed_point",
        "F_rho(b_rho) = b_rho grade by grade",
        {"rho": rho.to_json(), "N": N},
        len(bad),
        ok,
        {"mismatched_grades": bad},
    )


def check_expansion(rho: AlgebraicRep, N: int = 8):
    pos, neg = expand_L_alpha(rho, N)
    P = linv_poly(rho)
    prod = pos * P
    sigma = 1 if pos.hi is not None else -1
    grades = range(0, N + 1) if sigma > 0 else range(-N, 1)
    bad = [a for a in grades if prod[a] != (P.constant(rho.rank, 1) if a == 0 else P.zero(rho.rank))]
    dual_prod = neg * P.dual()
    bad += [-a for a in grades if dual_prod[-a] != (P.constant(rho.rank, 1) if a == 0 else P.zero(rho.rank))]
    return IdentityResult(
        "expansion.L_times_Linv",
        "(L_rho expansion) * L_rho^-1 = 1 grade by grade",
        {"rho": rho.to_json(), "N": N},
        len(bad),
        not bad,
        {"mismatched_grades": bad},
    )


def check_involution(pairs, N: int = 8):
    bad = []
    for i, (f, rho) in enumerate(pairs):
        Ff = fourier_function(f, rho, N)
        back = fourier_function(Ff, rho, N, psi="psibar")
        want = f.truncate(*((None, N) if back.hi is not None else (-N, None)))
        if back.cells != want.cells:
            bad.append(i)
    ok = not bad
    return IdentityResult(
        "fourier.involution",
        "F_{rho, conj psi} F_{rho, psi} f = f on grades <= N",
        {"count": len(pairs), "N": N},
        len(bad),
        ok,
        {"failures": bad},
    )


def check_kernel_route(pairs, N: int = 6):
    bad = []
    for i, (f, rho) in enumerate(pairs):
        if fourier_function(f, rho, N).cells != fourier_via_kernel(f, rho, N).cells:
            bad.append(i)
    return IdentityResult(
        "fourier.kernel_convolution",
        "F_rho(f) = f^vee * Gamma_K^vee",
        {"count": len(pairs), "N": N},
        len(bad),
        not bad,
        {"failures": bad},
    )


def check_functional_equation(pairs, N: int = 8, q=3):
    bad = []
    worst = 0.0
    for i, (f, rho) in enumerate(pairs):
        rep = functional_equation_residual(f, rho, N, q)
        worst = max(worst, rep.residual)
        if not rep.passes():
            bad.append(i)
    return IdentityResult(
        "zeta.functional_equation",
        "Z(-s, F_rho f, dual coefficient) = gamma(1/2, chi t, rho) Z(s, f)",
        {"count": len(pairs), "N": N},
        worst,
        not bad,
        {"failures": bad},
    )


def check_stability(pairs, N: int = 8):
    bad = []
    for i, (f, rho) in enumerate(pairs):
        if not check_schwartz_stability(f, rho, N).passes():
            bad.append(i)
    return IdentityResult(
        "fourier.schwartz_stability",
        "grades of F_rho f are finite and F_rho^2 f is f shifted by the gamma(X)gamma(X^-1) monomial",
        {"count": len(pairs), "N": N},
        len(bad),
        not bad,
        {"failures": bad},
    )


def gl1_battery(seed: int, size: int = 20):
    rng = np.random.default_rng(seed)
    out = [CellFunction({0: 1}), CellFunction({0: 1, 1: -3})]
    while len(out) < size:
        ks = rng.integers(-4, 5, size=int(rng.integers(1, 5)))
        out.append(CellFunction({int(k): Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, 5))) for k in ks}))
    return out


def check_gl1_oracle(seed: int, q=3, window: int = 8, tol: float = 1e-9):
    worst = 0.0
    for f in gl1_battery(seed):
        worst = max(worst, compare_spectral_direct(f, q, window))
    return IdentityResult(
        "gl1.tate_agreement",
        "spectral F_std = |x|^(1/2) Fourier(|.|^(-1/2) f) on GL1",
        {"seed": seed, "q": q, "window": window},
        worst,
        worst <= tol,
    )


def suite_fourier(qs, seed, trunc=8, precision=1e-9, size=15):
    reps = [AlgebraicRep.named(g, r) for g, r in STANDARD_REPS]
    pairs = battery(seed, size)
    out = [check_fixed_point(rho, trunc) for rho in reps]
    out += [check_expansion(rho, trunc) for rho in reps]
    out.append(check_involution(pairs, trunc))
    out.append(check_kernel_route(pairs[:6], min(trunc, 6)))
    out.append(check_stability(pairs, trunc))
    for q in qs:
        if all(q % d for d in range(2, int(math.isqrt(q)) + 1)):
            out.append(check_gl1_oracle(seed, q, trunc, precision))
    return out


def check_zeta_convergence(rho: AlgebraicRep, q, lam_inside=0.0, lam_outside=-0.75, N: int = 16):
    chi = list(np.exp(1j * np.array([0.4, 1.3][: rho.rank])))
    inside = zeta_convergence(rho, lam_inside, chi, q, N)
    outside = zeta_convergence(rho, lam_outside, chi, q, N)
    ok = inside.in_cone and inside.converges and not outside.in_cone and not outside.converges
    return IdentityResult(
        "zeta.convergence_cone",
        "sum |b_rho vol zonal| q^(-lambda alpha) converges iff lambda is in the cone",
        {"rho": rho.to_json(), "q": q, "lambda": [lam_inside, lam_outside]},
        inside.ratio_estimate,
        ok,
        {"ratio_inside": inside.ratio_estimate, "ratio_outside": outside.ratio_estimate,
         "predicted_inside": inside.predicted_ratio, "predicted_outside": outside.predicted_ratio},
    )


def suite_zeta(qs, seed, trunc=8, size=15):
    reps = [AlgebraicRep.named(g, r) for g, r in STANDARD_REPS]
    out = [check_basic_zeta(rho, trunc) for rho in reps]
    out.append(check_functional_equation(battery(seed, size), trunc, qs[0]))
    for q in qs:
        out += [check_zeta_convergence(rho, q) for rho in reps[:2]]
    return out


# ----------------------------------------------------------------- spherical


def check_plancherel(q=3, M=512, tol=1e-6):
    worst = 0.0
    for mu in ((0, 0), (1, 0), (2, 0)):
        worst = max(worst, plancherel_inversion_check(SphericalFunction.indicator("GL2", mu), q, M).relative_residual)
    return IdentityResult(
        "spherical.plancherel",
        "sum |f|^2 vol = integral of |S f|^2 against the spherical Plancherel density",
        {"q": q, "M": M},
        worst,
        worst <= tol,
    )


def check_satake_oracle(seed, qs=(2, 3), total=4, draws=5, tol=1e-9):
    rng = np.random.default_rng(seed)
    worst = 0.0
    for q in qs:
        for a in range(0, total + 1):
            for m2 in range(0, a // 2 + 1):
                mu = (a - m2, m2)
                P = satake_basis("GL2", mu)
                for _ in range(draws):
                    chi = list(np.exp(2j * np.pi * rng.random(2)))
                    worst = max(worst, abs(P.evaluate(chi, q) - lattice_count_oracle(mu, chi, q)))
    return IdentityResult(
        "spherical.satake_lattice",
        "Satake basis = coset-count transform of the cell indicator",
        {"q": list(qs), "total": total, "draws": draws, "seed": seed},
        worst,
        worst <= tol,
    )


# ------------------------------------------------------------------------ arch

MORENO_Q = [k / 2 for k in range(21)]
MORENO_S = [complex(re, im / 2) for re in (-0.5, -0.25, 0.0, 0.25, 0.5) for im in range(-40, 41)]


def check_moreno(d: int):
    rep = fa.verify_moreno(d, MORENO_Q, MORENO_S)
    return IdentityResult(
        "arch.moreno",
        "|Gamma(d(Q+1-s)/2) / Gamma(d(Q+s)/2)| <= (d|Q+1+s|/2)^(d/2 - d Re s)",
        {"d": d, "points": int(rep.slack.size)},
        rep.min_slack,
        rep.passes(),
        {"min_relative_slack": rep.min_relative_slack},
    )


def check_pole_killing(seed: int, count: int = 50, betas=(1, 2, 3)):
    rng = np.random.default_rng(seed)
    bad = []
    for _ in range(count):
        comps = random_arch_components(rng)
        for beta in betas:
            if not fa.verify_pole_killing(comps, beta).ok:
                bad.append(([str(c) for c in comps], beta))
    return IdentityResult(
        "arch.pole_killing",
        "p(s) prod L(s) has no poles and p no extra zeros in |Re s| <= beta",
        {"seed": seed, "count": count, "beta": list(betas)},
        len(bad),
        not bad,
        {"failures": bad},
    )


def check_ratio_bound(n=1, d=2):
    Q = [k / 2 for k in range(0, 11)]
    s = [complex(re, im) for re in (-0.5, 0.0, 0.5) for im in range(-10, 11)]
    rep = fa.verify_ratio_bound(n, d, Q, s)
    return IdentityResult(
        "arch.ratio_bound",
        "Gamma ratio bounded by a constant times the polynomial envelope",
        {"n": n, "d": d},
        rep.C,
        bool(np.isfinite(rep.C)),
        {"argmax": [str(x) for x in rep.argmax]},
    )


def suite_arch(seed):
    return [check_moreno(1), check_moreno(2), check_pole_killing(seed), check_ratio_bound()]


# ------------------------------------------------------------------------ cone


def check_cone_battery():
    bad = []
    for ws, expected in CONE_BATTERY:
        rep = cone_check(list(ws))
        if rep.strongly_convex != expected or not rep.verify():
            bad.append([list(w) for w in ws])
    return IdentityResult(
        "cone.battery",
        "strong convexity with verified certificates",
        {"cases": len(CONE_BATTERY)},
        len(bad),
        not bad,
        {"failures": bad},
    )


def check_cone_rep(rho: AlgebraicRep):
    rep = cone_check(rho)
    return IdentityResult(
        "cone.rep",
        "strong convexity of the central weights of rho",
        {"rho": rho.to_json()},
        0 if rep.verify() else 1,
        rep.verify(),
        rep.to_json(),
    )


def suite_cone(rho=None):
    out = [check_cone_battery()]
    if rho is not None:
        out.append(check_cone_rep(rho))
    return out


def run_suite(name: str, qs=(3,), seed: int = 0, trunc: int = 8, precision: float = 1e-9, rho=None):
    qs = tuple(qs)
    if name == "gamma":
        return suite_gamma(qs, seed, min(precision, 1e-10))
    if name == "fourier":
        return suite_fourier(qs, seed, trunc, precision)
    if name == "zeta":
        return suite_zeta(qs, seed, trunc) + [check_plancherel(qs[0]), check_satake_oracle(seed, qs=qs[:2])]
    if name == "arch":
        return suite_arch(seed)
    if name == "cone":
        return suite_cone(rho)
    if name == "all":
        out = []
        for s in SUITES:
            out += run_suite(s, qs, seed, trunc, precision, rho)
        return out
    raise ValueError(f"unknown suite {name!r}; choose from {SUITES + ('all',)}")
