import math
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rho_fourier.errors import (
    DegenerateSatake,
    EnumerationBudgetExceeded,
    NonDominant,
    QuadratureBudget,
    TruncationTooSmall,
    UnboundedSupport,
)
from rho_fourier.series import ExactScalar, SymLaurent, V, complete_homogeneous
from rho_fourier.spherical_gl import (
    SphericalFunction,
    cartan_volume,
    constant_term,
    coset_count,
    dual_function,
    inverse_satake,
    lattice_count_oracle,
    plancherel_inversion_check,
    satake_basis,
    satake_transform,
    zonal_value,
    zonal_value_exact,
)

X1, X2 = SymLaurent.variable(0, 2), SymLaurent.variable(1, 2)


@st.composite
def gl2_functions(draw, bound=3):
    cells = {}
    for _ in range(draw(st.integers(1, 4))):
        m2 = draw(st.integers(-bound, bound))
        m1 = draw(st.integers(m2, bound))
        cells[(m1, m2)] = ExactScalar.of(draw(st.integers(-5, 5)))
    return SphericalFunction("GL2", cells)


def test_dominance_enforced():
    with pytest.raises(NonDominant):
        SphericalFunction.indicator("GL2", (0, 1))


def test_window_lookup():
    f = SphericalFunction("GL2", {(1, 0): 1}, lo=-2, hi=2)
    assert f[(2, 0)] == 0
    with pytest.raises(TruncationTooSmall):
        f[(3, 0)]


def test_satake_basis_small():
    assert satake_basis("GL2", (0, 0)) == SymLaurent.constant(2, 1)
    assert satake_basis("GL2", (1, 0)) == (X1 + X2).scale(V)
    assert satake_basis("GL2", (1, 1)) == X1 * X2
    assert satake_basis("GL1", (3,)) == SymLaurent.monomial((3,))


def test_hecke_multiplicativity():
    """T(1,0)^2 = T(2,0) + (q+1) T(1,1) in the Hecke algebra, so Satake images obey the same relation."""
    lhs = satake_basis("GL2", (1, 0)) * satake_basis("GL2", (1, 0))
    rhs = satake_basis("GL2", (2, 0)) + satake_basis("GL2", (1, 1)).scale(V ** 2 + 1)
    assert lhs == rhs


def test_hecke_recursion_general():
    """T(1,0) T(m,0) = T(m+1,0) + q T(m,1) for m >= 2."""
    for m in range(2, 6):
        lhs = satake_basis("GL2", (1, 0)) * satake_basis("GL2", (m, 0))
        rhs = satake_basis("GL2", (m + 1, 0)) + satake_basis("GL2", (m, 1)).scale(V ** 2)
        assert lhs == rhs


@pytest.mark.parametrize("q", [2, 3, 5])
def test_coset_count_is_volume(q):
    for m in range(4):
        assert coset_count((m, 0), q) == pytest.approx(cartan_volume("GL2", (m, 0)).evaluate(q))
    assert cartan_volume("GL2", (2, 1)) == cartan_volume("GL2", (1, 0))


def test_lattice_example():
    val = lattice_count_oracle((1, 0), (1, 1), 3)
    assert val == pytest.approx(2 * math.sqrt(3))


@pytest.mark.parametrize("q", [2, 3])
def test_lattice_matches_satake(q):
    rng = random.Random(q)
    for m1 in range(-1, 4):
        for m2 in range(-2, m1 + 1):
            if m1 - m2 > 4:
                continue
            chi = (complex(rng.uniform(0.5, 2), rng.uniform(-1, 1)), complex(rng.uniform(0.5, 2), 0.3))
            got = lattice_count_oracle((m1, m2), chi, q)
            expect = satake_basis("GL2", (m1, m2)).evaluate(chi, q)
            assert got == pytest.approx(expect, rel=1e-10)


def test_lattice_budget():
    with pytest.raises(EnumerationBudgetExceeded):
        lattice_count_oracle((12, 0), (1, 1), 5, budget=1000)


def test_zonal_example():
    x1, x2, q = 0.7 + 0.2j, 1.3 - 0.1j, 3
    assert zonal_value((x1, x2), (1, 0), q) == pytest.approx(q ** -0.5 * (x1 + x2) / (1 + 1 / q))


@given(st.integers(0, 4), st.integers(-2, 2), st.floats(0.3, 3), st.floats(-3, 3))
def test_zonal_is_normalized_satake(m, m2, r, th):
    chi = (complex(r) * complex(math.cos(th), math.sin(th)), 1.1 + 0.2j)
    mu = (m + m2, m2)
    expect = satake_basis("GL2", mu).evaluate(chi, 3) / cartan_volume("GL2", mu).evaluate(3)
    assert zonal_value(chi, mu, 3) == pytest.approx(expect, rel=1e-7, abs=1e-9)


def test_zonal_degenerate_point():
    mu = (3, 0)
    chi = (1.2, 1.2)
    expect = satake_basis("GL2", mu).evaluate(chi, 5) / cartan_volume("GL2", mu).evaluate(5)
    assert zonal_value(chi, mu, 5) == pytest.approx(expect, rel=1e-7)
    with pytest.raises(DegenerateSatake):
        zonal_value_exact((2, 2), mu)


def test_zonal_exact_matches_satake():
    chi = (ExactScalar.of(2), ExactScalar.parse("1/3"))
    for mu in [(1, 0), (2, -1), (3, 1)]:
        expect = satake_basis("GL2", mu).evaluate_exact(chi) / cartan_volume("GL2", mu)
        assert zonal_value_exact(chi, mu) == expect


@given(gl2_functions())
def test_inverse_satake_roundtrip(f):
    assert inverse_satake(satake_transform(f).total(), "GL2").cells == f.cells


@given(gl2_functions())
def test_constant_term_routes_agree(f):
    assert constant_term(f, "spectral").cells == constant_term(f, "geometric").cells


def test_constant_term_needs_compact():
    with pytest.raises(UnboundedSupport):
        constant_term(SphericalFunction("GL2", {(0, 0): 1}, lo=0, hi=4))


@given(gl2_functions())
def test_dual_function_matches_satake_dual(f):
    assert satake_transform(dual_function(f)).total() == satake_transform(f).total().dual()


def test_plancherel_example():
    rep = plancherel_inversion_check(SphericalFunction.indicator("GL2", (1, 0)), 3, 512)
    assert rep.geometric == pytest.approx(4.0)
    assert rep.spectral == pytest.approx(4.0, rel=1e-6)


@pytest.mark.parametrize("q", [2, 3, 5])
def test_plancherel_random(q):
    rng = random.Random(q)
    for _ in range(3):
        cells = {}
        for _ in range(3):
            m2 = rng.randint(-2, 2)
            cells[(m2 + rng.randint(0, 3), m2)] = rng.randint(-3, 3) or 1
        rep = plancherel_inversion_check(SphericalFunction("GL2", cells), q, 512)
        assert rep.relative_residual < 1e-6


def test_plancherel_gl1():
    f = SphericalFunction("GL1", {(0,): 2, (3,): -1})
    rep = plancherel_inversion_check(f, 3, 64)
    assert rep.geometric == pytest.approx(5.0)
    assert rep.spectral == pytest.approx(5.0)


def test_plancherel_budget():
    with pytest.raises(QuadratureBudget):
        plancherel_inversion_check(SphericalFunction.indicator("GL2", (0, 0)), 3, 4)


def test_json_roundtrip():
    f = SphericalFunction("GL2", {(1, 0): ExactScalar.parse("v^-1"), (2, 2): 3}, lo=-4, hi=4)
    assert SphericalFunction.from_json(f.to_json()) == f


def test_complete_homogeneous_in_basis():
    # v^-m S(1_(m,0)) = h_m - q^-1 X1 X2 h_(m-2)
    for m in range(2, 5):
        lhs = satake_basis("GL2", (m, 0)).scale(V ** -m)
        rhs = complete_homogeneous(m, 2) - (X1 * X2 * complete_homogeneous(m - 2, 2)).scale(V ** -2)
        assert lhs == rhs
