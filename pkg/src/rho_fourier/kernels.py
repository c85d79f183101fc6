"""Numeric inner loops of the brute-force oracles.

Each kernel has a pure-numpy implementation and, when numba is importable,
an ``@njit`` twin.  Set ``RHO_FOURIER_DISABLE_NUMBA=1`` to force the numpy
path; ``BACKEND`` reports which one is active.  The exact-arithmetic layers
never touch these; only lattice enumeration, additive character sums and
torus quadrature do.
"""

from __future__ import annotations

import math
import os

import numpy as np

try:  # pragma: no cover - import guard
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    numba = None
    HAVE_NUMBA = False

DISABLED = os.environ.get("RHO_FOURIER_DISABLE_NUMBA", "").strip() not in ("", "0")
BACKEND = "numba" if HAVE_NUMBA and not DISABLED else "numpy"


# ---------------------------------------------------------------- coset counts


def _cell_counts_numpy(q, total):
    """counts[a, m2]: residues b mod q^a with min(a, total - a, val(b)) = m2."""
    counts = np.zeros((total + 1, total + 1), dtype=np.int64)
    for a in range(total + 1):
        d = total - a
        b = np.arange(q ** a, dtype=np.int64)
        val = np.full(b.shape, a, dtype=np.int64)  # b = 0 behaves like val >= a
        rest = b.copy()
        live = rest != 0
        k = np.zeros(b.shape, dtype=np.int64)
        while np.any(live):
            div = live & (rest % q == 0)
            k = np.where(div, k + 1, k)
            rest = np.where(div, rest // q, rest)
            live = div
        val = np.where(b != 0, k, val)
        m2 = np.minimum(np.minimum(val, a), d)
        counts[a] += np.bincount(m2, minlength=total + 1)[: total + 1]
    return counts


def _cell_counts_loop(q, total):
    counts = np.zeros((total + 1, total + 1), dtype=np.int64)
    for a in range(total + 1):
        d = total - a
        size = 1
        for _ in range(a):
            size *= q
        for b in range(size):
            if b == 0:
                val = a
            else:
                val = 0
                r = b
                while r % q == 0:
                    r //= q
                    val += 1
            m2 = min(val, a, d)
            counts[a, m2] += 1
    return counts


# -------------------------------------------------------- additive characters


def _char_sum_numpy(p, e, M):
    """sum over units u mod p^M of exp(2 pi i u / p^e)."""
    n = p ** M
    u = np.arange(n, dtype=np.int64)
    u = u[u % p != 0]
    phase = 2.0 * np.pi * (u % p ** e) / p ** e
    return complex(math.fsum(np.cos(phase)), math.fsum(np.sin(phase)))


def _char_sum_loop(p, e, M):
    n = 1
    for _ in range(M):
        n *= p
    pe = 1
    for _ in range(e):
        pe *= p
    s_re = 0.0
    c_re = 0.0
    s_im = 0.0
    c_im = 0.0
    for u in range(n):
        if u % p == 0:
            continue
        phase = 2.0 * math.pi * (u % pe) / pe
        # Kahan compensated accumulation
        y = math.cos(phase) - c_re
        t = s_re + y
        c_re = (t - s_re) - y
        s_re = t
        y = math.sin(phase) - c_im
        t = s_im + y
        c_im = (t - s_im) - y
        s_im = t
    return complex(s_re, s_im)


# ------------------------------------------------------------ torus quadrature


def _torus_means_numpy(exps, coeffs, q, M, weighted):
    """(mean of |P|^2 w, mean of w) on the M x M (or M) midpoint grid.

    w = 1/|c|^2 with c the rank-one c-function when ``weighted``; else 1.
    """
    theta = 2.0 * np.pi * (np.arange(M) + 0.5) / M
    n = exps.shape[1]
    if n == 1:
        z = np.exp(1j * np.outer(theta, exps[:, 0])) @ coeffs
        return float(np.mean(np.abs(z) ** 2)), 1.0
    t1 = theta[:, None]
    t2 = theta[None, :]
    val = np.zeros((M, M), dtype=complex)
    for (e1, e2), c in zip(exps, coeffs):
        val += c * np.exp(1j * (e1 * t1 + e2 * t2))
    if weighted:
        r = np.exp(1j * (t2 - t1))
        w = np.abs(1 - r) ** 2 / np.abs(1 - r / q) ** 2
    else:
        w = np.ones((M, M))
    return float(np.mean(np.abs(val) ** 2 * w)), float(np.mean(w))


def _torus_means_loop(exps, coeffs, q, M, weighted):
    n = exps.shape[1]
    T = exps.shape[0]
    acc = 0.0
    acc_w = 0.0
    step = 2.0 * math.pi / M
    if n == 1:
        for j in range(M):
            th = step * (j + 0.5)
            re = 0.0
            im = 0.0
            for k in range(T):
                ph = exps[k, 0] * th
                re += coeffs[k].real * math.cos(ph) - coeffs[k].imag * math.sin(ph)
                im += coeffs[k].real * math.sin(ph) + coeffs[k].imag * math.cos(ph)
            acc += re * re + im * im
        return acc / M, 1.0
    for i in range(M):
        t1 = step * (i + 0.5)
        for j in range(M):
            t2 = step * (j + 0.5)
            re = 0.0
            im = 0.0
            for k in range(T):
                ph = exps[k, 0] * t1 + exps[k, 1] * t2
                cr = coeffs[k].real
                ci = coeffs[k].imag
                cs = math.cos(ph)
                sn = math.sin(ph)
                re += cr * cs - ci * sn
                im += cr * sn + ci * cs
            w = 1.0
            if weighted:
                d = t2 - t1
                num = 2.0 - 2.0 * math.cos(d)
                den = 1.0 - 2.0 * math.cos(d) / q + 1.0 / (q * q)
                w = num / den
            acc += (re * re + im * im) * w
            acc_w += w
    return acc / (M * M), acc_w / (M * M)


IMPLEMENTATIONS = {
    "cell_counts": {"numpy": _cell_counts_numpy},
    "char_sum": {"numpy": _char_sum_numpy},
    "torus_means": {"numpy": _torus_means_numpy},
}

if HAVE_NUMBA:  # pragma: no branch
    IMPLEMENTATIONS["cell_counts"]["numba"] = numba.njit(cache=False)(_cell_counts_loop)
    IMPLEMENTATIONS["char_sum"]["numba"] = numba.njit(cache=False)(_char_sum_loop)
    IMPLEMENTATIONS["torus_means"]["numba"] = numba.njit(cache=False)(_torus_means_loop)


def _pick(name, backend=None):
    backend = backend or BACKEND
    impls = IMPLEMENTATIONS[name]
    if backend not in impls:
        raise ValueError(f"backend {backend!r} unavailable for {name}")
    return impls[backend]


def cell_counts(q: int, total: int, backend=None) -> np.ndarray:
    return np.asarray(_pick("cell_counts", backend)(int(q), int(total)))


def char_sum(p: int, e: int, M: int, backend=None) -> complex:
    if not 0 <= e <= M:
        raise ValueError("need 0 <= e <= M")
    return complex(_pick("char_sum", backend)(int(p), int(e), int(M)))


def torus_means(exps, coeffs, q: float, M: int, weighted: bool = True, backend=None):
    exps = np.ascontiguousarray(exps, dtype=np.int64)
    coeffs = np.ascontiguousarray(coeffs, dtype=np.complex128)
    out = _pick("torus_means", backend)(exps, coeffs, float(q), int(M), bool(weighted))
    return float(out[0]), float(out[1])
