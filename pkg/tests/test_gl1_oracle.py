import cmath
import math
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rho_fourier.errors import WindowTooSmall
from rho_fourier.gl1_oracle import (
    CellFunction,
    additive_fourier_cell,
    additive_fourier_riemann,
    calibrate_kappa,
    compare_spectral_direct,
    gl1_fourier_direct,
    inversion_residual,
)
from rho_fourier.rho_transform import basic_function
from rho_fourier.wd_params import AlgebraicRep


def _fourier_cell_by_summation(k, j, p):
    """Fourier transform of 1_{p^k Z_p^x} at a point of valuation j, written out from scratch.

    With x = p^j and y = p^k u, psi(x y) = exp(2 pi i {p^(j+k) u}_p); summing over
    units u modulo p^M (M large enough) with volume p^-(k+M) per class.
    """
    M = max(0, -(j + k)) + 3
    total = 0j
    for u in range(p ** M):
        if u % p == 0:
            continue
        frac = (u * p ** (j + k)) % 1 if j + k >= 0 else (u % p ** (-(j + k))) / p ** (-(j + k))
        total += cmath.exp(2j * math.pi * frac)
    return total * p ** (-(k + M))


@pytest.mark.parametrize("p", [2, 3, 5])
def test_cell_transform_closed_form(p):
    for k in (-2, 0, 1):
        closed = additive_fourier_cell(k, p, 4)
        for j in range(-k - 3, 5):
            expect = _fourier_cell_by_summation(k, j, p)
            assert closed[j] == pytest.approx(expect.real, abs=1e-12)
            assert abs(expect.imag) < 1e-9


@pytest.mark.parametrize("backend", ["numpy", "numba"])
def test_riemann_backend(backend):
    from rho_fourier import kernels

    if backend not in kernels.IMPLEMENTATIONS["char_sum"]:
        pytest.skip("numba unavailable")
    closed = additive_fourier_cell(1, 3, 3)
    for j in range(-3, 4):
        assert additive_fourier_riemann(1, j, 3, backend).real == pytest.approx(closed[j], abs=1e-12)


def test_riemann_needs_prime():
    with pytest.raises(ValueError):
        additive_fourier_riemann(0, 0, 4)


def test_kappa_is_one():
    for q in (2, 3, 5, 7):
        assert calibrate_kappa(q) == pytest.approx(1.0, abs=1e-12)


@given(st.dictionaries(st.integers(-4, 4), st.integers(-5, 5), min_size=1, max_size=4), st.sampled_from([2, 3, 5]))
def test_spectral_equals_direct(vals, q):
    f = CellFunction({k: float(v) for k, v in vals.items()})
    assert compare_spectral_direct(f, q, 8) < 1e-9


def test_spectral_equals_direct_on_basic_function():
    """The basic function is not compactly supported; its closed form feeds both routes."""
    b = basic_function(AlgebraicRep.named("GL1", "std"), 30)
    dev = compare_spectral_direct(b, 3, 6)
    # the direct route sees only the cells up to 30, whose tail is about q^-15
    assert dev < 1e-6


def test_fixed_point_direct():
    """The direct transform of the truncated basic function approaches the basic function."""
    q = 3
    devs = []
    for M in (10, 20, 30):
        b = CellFunction({k: q ** (-k / 2) for k in range(M + 1)})
        Fb = gl1_fourier_direct(b, q, M)
        devs.append(max(abs(Fb[j] - b[j]) for j in range(-3, 4)))
    assert devs[0] > devs[1] > devs[2]
    assert devs[2] < 1e-6


@given(st.dictionaries(st.integers(-3, 3), st.floats(-2, 2), min_size=1, max_size=3))
def test_inversion(vals):
    f = CellFunction(vals)
    assert inversion_residual(f, 3, 4) < 1e-12


def test_psi_conjugate_same():
    f = CellFunction({0: 1.0, 2: -0.5})
    a = gl1_fourier_direct(f, 5, 4)
    b = gl1_fourier_direct(f, 5, 4, psi="psibar")
    assert a.values == b.values
    with pytest.raises(ValueError):
        gl1_fourier_direct(f, 5, 4, psi="other")


def test_window_refused():
    with pytest.raises(WindowTooSmall):
        gl1_fourier_direct(CellFunction({9: 1.0}), 3, 4)


def test_cell_function_arith():
    rng = random.Random(0)
    a = CellFunction({k: rng.random() for k in range(3)})
    b = a.scale(-1)
    assert (a + b).support() == []
