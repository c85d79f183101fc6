import os
import subprocess
import sys

import numpy as np
import pytest

from rho_fourier import kernels

BACKENDS = [b for b in ("numpy", "numba") if b in kernels.IMPLEMENTATIONS["char_sum"]]


@pytest.mark.parametrize("backend", BACKENDS)
@pytest.mark.parametrize("p,M", [(2, 3), (3, 3), (5, 2), (7, 2)])
def test_char_sum_closed_form(backend, p, M):
    """Unit sums of an additive character: phi(p^M) at conductor 0, -p^(M-1) at 1, zero above."""
    for e in range(M + 1):
        expect = {0: p ** M - p ** (M - 1), 1: -p ** (M - 1)}.get(e, 0)
        assert kernels.char_sum(p, e, M, backend) == pytest.approx(expect, abs=1e-9)


@pytest.mark.parametrize("backend", BACKENDS)
@pytest.mark.parametrize("q,total", [(2, 5), (3, 4), (5, 3)])
def test_cell_counts_row_sums(backend, q, total):
    c = kernels.cell_counts(q, total, backend)
    assert [int(x) for x in c.sum(axis=1)] == [q ** a for a in range(total + 1)]


def test_cell_counts_small_case():
    # total 1: a = 0 -> b = 0 only (m2 = 0); a = 1 -> q residues, all with m2 = min(., 1, 0) = 0
    c = kernels.cell_counts(3, 1)
    assert c.tolist() == [[1, 0], [3, 0]]


@pytest.mark.parametrize("q,total", [(2, 6), (3, 4), (5, 3)])
def test_backends_agree_cell_counts(q, total):
    outs = [kernels.cell_counts(q, total, b) for b in BACKENDS]
    for o in outs[1:]:
        np.testing.assert_array_equal(o, outs[0])


@pytest.mark.parametrize("weighted", [True, False])
@pytest.mark.parametrize("n", [1, 2])
def test_backends_agree_torus(weighted, n):
    rng = np.random.default_rng(3)
    exps = rng.integers(-3, 4, size=(5, n))
    coeffs = rng.normal(size=5) + 1j * rng.normal(size=5)
    outs = [kernels.torus_means(exps, coeffs, 3.0, 64, weighted, b) for b in BACKENDS]
    for o in outs[1:]:
        assert o == pytest.approx(outs[0], rel=1e-12)


def test_torus_mean_is_parseval():
    # mean of |sum c_k z^k|^2 is sum |c_k|^2 for distinct exponents
    exps = np.array([[0, 0], [1, 0], [2, -1]])
    coeffs = np.array([1.0, 2.0j, -0.5])
    mean, w = kernels.torus_means(exps, coeffs, 3.0, 32, weighted=False)
    assert mean == pytest.approx(1 + 4 + 0.25)
    assert w == 1.0


def test_unknown_backend():
    with pytest.raises(ValueError):
        kernels.char_sum(3, 1, 2, backend="fortran")
    with pytest.raises(ValueError):
        kernels.char_sum(3, 3, 2)


def test_env_flag_forces_numpy():
    env = dict(os.environ, RHO_FOURIER_DISABLE_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", "from rho_fourier import kernels; print(kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"
