from collections import Counter
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from rho_fourier.errors import PoleEvaluation, ShapeMismatch
from rho_fourier.factors_arch import (
    ArchComponent,
    OneDimRep,
    RealTorusDatum,
    RootPolynomial,
    TwoDimRep,
    arch_compose,
    enumerate_pole_killing_family,
    gamma_arch,
    l_factor_arch,
    pole_killing_poly,
    pole_set,
    ratio_bound_terms,
    verify_moreno,
    verify_pole_killing,
    verify_ratio_bound,
)

F = Fraction


@st.composite
def components(draw):
    d = draw(st.sampled_from([1, 2]))
    shift = F(draw(st.integers(0, 1))) if d == 1 else F(draw(st.integers(0, 6)), 2)
    s0 = F(draw(st.integers(-4, 4)), draw(st.integers(1, 3)))
    return ArchComponent(d, shift, s0)


def _mpq(x):
    return mpmath.mpf(x.numerator) / x.denominator


def _l_mp(c, s):
    s = mpmath.mpc(s) + 1j * _mpq(c.s0) + _mpq(c.shift)
    if c.d == 1:
        return mpmath.pi ** (-s / 2) * mpmath.gamma(s / 2)
    return 2 * (2 * mpmath.pi) ** (-s) * mpmath.gamma(s)


def test_validation():
    with pytest.raises(ValueError):
        ArchComponent(1, F(1, 2))
    with pytest.raises(ValueError):
        ArchComponent(2, F(1, 3))
    with pytest.raises(ValueError):
        ArchComponent(3, 0)


@given(components(), st.floats(-3, 3), st.floats(-5, 5))
def test_l_factor_against_mpmath(c, re, im):
    s = complex(re, im)
    try:
        got = l_factor_arch(c, s)
    except PoleEvaluation:
        return
    assert got == pytest.approx(complex(_l_mp(c, s)), rel=1e-9)


def test_known_values():
    # Gamma_R(1) = pi^(-1/2) Gamma(1/2) = 1, Gamma_C(1) = 2 (2 pi)^-1 Gamma(1) = 1/pi
    assert l_factor_arch(ArchComponent(1, 0), 1) == pytest.approx(1.0)
    assert l_factor_arch(ArchComponent(2, 0), 1) == pytest.approx(1 / np.pi)


def test_poles_raise():
    with pytest.raises(PoleEvaluation):
        l_factor_arch(ArchComponent(1, 0), -2)
    with pytest.raises(PoleEvaluation):
        l_factor_arch(ArchComponent(2, F(1, 2), F(1)), complex(-1.5, -1))


@given(components())
def test_pole_set_members_are_poles(c):
    for re, im in pole_set(c).in_strip(4):
        s = complex(float(re), float(im))
        assert abs(_l_mp(c, s + 1e-7)) > 1e5
        assert (re, im) in pole_set(c)
    assert (pole_set(c).start[0] + 1, pole_set(c).start[1]) not in pole_set(c)


def test_gamma_arch_reflection():
    comps = [ArchComponent(1, 1, F(1, 3)), ArchComponent(2, F(3, 2))]
    duals = [c.dual() for c in comps]
    for s in (0.3 + 0.2j, 0.7 - 1.1j, 2.2 + 0.5j):
        assert gamma_arch(comps, s) * gamma_arch(duals, 1 - s) == pytest.approx(1.0, rel=1e-10)


# -- parameters and representations ------------------------------------------------


def test_arch_compose_one_dim():
    phi = RealTorusDatum(eps=(1,), k=(3,), kprime=())
    rho = OneDimRep(l=(1,), lp=(1,), e=0, s0=F(1, 2))
    (c,) = arch_compose([rho], phi)
    assert c == ArchComponent(1, 0, F(1, 2))  # parity 1 + 3 = 4


def test_arch_compose_two_dim():
    phi = RealTorusDatum(eps=(), k=(2,), kprime=(1,))
    rho = TwoDimRep(l=(), lp=(1,), lpp=(0,), lppp=(-3,), m=0)
    (c,) = arch_compose([rho], phi)
    assert c == ArchComponent(2, F(1, 2))  # |2 - 3| / 2


def test_arch_compose_shape_mismatch():
    with pytest.raises(ShapeMismatch):
        arch_compose([OneDimRep(l=(1, 0))], RealTorusDatum(eps=(1,)))
    with pytest.raises(ValueError):
        TwoDimRep(lp=(1,), lpp=(1,))


def test_contragredient_dualizes_components():
    phi = RealTorusDatum(eps=(1,), k=(2,), kprime=(5,))
    rho = TwoDimRep(l=(0,), lp=(1,), lpp=(0,), lppp=(1,), m=1, s0=F(2))
    (a,) = arch_compose([rho], phi)
    (b,) = arch_compose([rho], phi.contragredient())
    assert a.d == b.d == 2


# -- pole killing ---------------------------------------------------------------


def test_pole_killing_example():
    p = pole_killing_poly([ArchComponent(1, 0, 0)], 2)
    assert sorted(p.roots) == [(F(-2), F(0)), (F(0), F(0))]
    assert str(p) in ("s*(s+2)", "(s+2)*s")
    coeffs = p.coefficients()
    assert coeffs == [(F(0), F(0)), (F(2), F(0)), (F(1), F(0))]


@given(st.lists(components(), min_size=1, max_size=5), st.sampled_from([1, 2, 3]))
def test_pole_killing_exact(comps, beta):
    rep = verify_pole_killing(comps, beta)
    assert rep.ok, (rep.residual_poles, rep.extra_zeros)


@given(st.lists(components(), min_size=1, max_size=3), st.sampled_from([1, 2]))
def test_pole_killing_numeric(comps, beta):
    """p(s) prod L(s) stays bounded next to every strip pole (mpmath oracle)."""
    p = pole_killing_poly(comps, beta)
    poles = Counter()
    for c in comps:
        poles.update(pole_set(c).in_strip(beta))
    for re, im in poles:
        for eps in (1e-6, 1e-8):
            s = complex(float(re) + eps, float(im))
            val = p.evaluate(s)
            for c in comps:
                val *= complex(_l_mp(c, s))
            assert abs(val) < 1e6


def test_family_is_finite():
    fam = enumerate_pole_killing_family(2)
    assert (2, F(5, 2)) not in fam
    assert set(k for d, k in fam if d == 2) == {F(j, 2) for j in range(5)}


def test_root_polynomial_evaluate_matches_coefficients():
    p = RootPolynomial(((F(1), F(2)), (F(-1, 2), F(0))))
    s = 0.3 - 0.7j
    coeffs = [complex(float(a), float(b)) for a, b in p.coefficients()]
    assert np.polyval(coeffs[::-1], s) == pytest.approx(p.evaluate(s))


# -- Gamma ratio bounds -----------------------------------------------------------


def test_moreno_small_grid():
    s_grid = [complex(r, t) for r in np.linspace(-0.5, 0.5, 5) for t in (-30, -1, 0, 2.5, 40)]
    for d in (1, 2):
        rep = verify_moreno(d, np.linspace(0, 20, 21), s_grid)
        assert rep.passes()


def test_moreno_lhs_against_mpmath():
    rep = verify_moreno(2, [0.5, 3.0], [0.25 + 1j, -0.4 - 2j])
    for Q, s, lhs in zip(rep.Q, rep.s, rep.lhs):
        expect = abs(mpmath.gamma(Q + 1 - s) / mpmath.gamma(Q + s))
        assert lhs == pytest.approx(float(expect), rel=1e-10)


def test_moreno_rejects_out_of_range():
    with pytest.raises(ValueError):
        verify_moreno(1, [0.0], [0.7])
    with pytest.raises(ValueError):
        verify_moreno(3, [0.0], [0.1])


def test_ratio_bound_finite_constant():
    s_grid = [complex(r, t) for r in np.linspace(-2, 2, 9) for t in (-10, 0, 0.5, 10)]
    rep = verify_ratio_bound(2, 1, np.arange(0, 6, 0.5), s_grid)
    assert np.isfinite(rep.C) and rep.C < 10


def test_ratio_bound_lhs_matches_raw_formula():
    """Away from poles the closed form equals |p Gamma(z)| / |p_dual Gamma(z')| computed directly."""
    n, d, Q, s = 1, 2, 0.0, 0.31 + 0.4j
    lhs, _ = ratio_bound_terms(n, d, np.array([Q]), np.array([s]))
    roots = [Q + 0.5 + 2 * k / d for k in range(3) if Q + 0.5 + 2 * k / d <= n]
    p = np.prod([s - r for r in roots])
    pd = np.prod([-s - r for r in roots])
    raw = abs(p * mpmath.gamma(d / 2 * (Q + 0.5 - s))) / abs(pd * mpmath.gamma(d / 2 * (Q + 0.5 + s)))
    assert lhs[0] == pytest.approx(float(raw), rel=1e-10)
