"""The spectral rho-Fourier transform on spherical functions of GL1 and GL2.

Write Linv(X) = prod over weights y of rho of (1 - v^-1 y(X)), so that the
unramified L-value at s = 1/2 is L(X) = 1/Linv(X) and the gamma value is
gamma(X) = Linv(X) / Linv(X^-1) (the epsilon factor is 1 here).  On Satake
transforms the transform acts by T(X) -> gamma(X^-1) T(X^-1).  Writing
P = Linv * T this is L(X) * P(X^-1), which is how every output is computed:
the exact closed form is kept, and its expansion into the cone of rho gives
the grades.  psi -> conj(psi) conjugates epsilon, which is 1, so both
characters give the same operator on this block.
"""

from __future__ import annotations

from ..errors import NotAsymptoticSchwartz, NotStronglyConvex, TruncationTooSmall
from ..series import GradedSeries, SymLaurent, V, complete_homogeneous
from ..spherical_gl import SphericalFunction, dual_function, inverse_satake_graded, satake_transform
from ..wd_params import AlgebraicRep
from .cone import cone_check
from .sections import FLSection, RationalSection

PSI = ("psi", "psibar")


def _check_group(rho: AlgebraicRep):
    if rho.group not in ("GL1", "GL2"):
        raise ValueError(f"spherical transforms are implemented for GL1 and GL2, not {rho.group}")


def linv_poly(rho: AlgebraicRep) -> SymLaurent:
    """prod over weights y of (1 - v^-1 y), a Weyl-invariant polynomial."""
    n = rho.rank
    out = SymLaurent.constant(n, 1)
    for w in rho.weights():
        out = out * (SymLaurent.constant(n, 1) - SymLaurent.monomial(w, V ** -1))
    return out.symmetrized_flag() if rho.group == "GL2" else out


def l_section(rho: AlgebraicRep) -> RationalSection:
    return RationalSection(SymLaurent.constant(rho.rank, 1), linv_poly(rho))


def gamma_section(rho: AlgebraicRep) -> RationalSection:
    """gamma(1/2) of rho composed with chi, as a section in chi."""
    P = linv_poly(rho)
    return RationalSection(P, P.dual())


def cone_direction(rho: AlgebraicRep) -> int:
    """+1 if L_rho expands into positive grades, -1 if negative."""
    _check_group(rho)
    rep = cone_check(rho)
    if not rep.strongly_convex:
        raise NotStronglyConvex(f"central weights {list(rep.weights)} do not span a strongly convex cone")
    if not rep.weights:
        return 1
    return 1 if rep.certificate[0] > 0 else -1


def _summand_series(weights, n, sigma, N):
    """prod over y in weights of (1 - v^-1 y)^-1 = sum_k v^-k h_k(weights), to grade N."""
    c = sum(weights[0])  # every weight of an irreducible summand has the same degree
    kmax = N // abs(c)
    comps = {}
    for k in range(kmax + 1):
        hk = complete_homogeneous(k, len(weights)).substitute_monomials(weights, n)
        comps[k * c] = hk.scale(V ** -k)
    return GradedSeries(n, comps, *((None, N) if sigma > 0 else (-N, None)), check=False)


def expand_L_alpha(rho: AlgebraicRep, N: int):
    """(L expansion into the cone of rho, L(X^-1) expansion into the opposite cone).

    Grades run up to N in the direction of the cone.
    """
    sigma = cone_direction(rho)
    n = rho.rank
    out = GradedSeries(n, {0: SymLaurent.constant(n, 1)}, *((None, N) if sigma > 0 else (-N, None)))
    for ws in rho.summand_weights():
        out = out * _summand_series(ws, n, sigma, N)
    if rho.group == "GL2":
        out = GradedSeries(n, {a: p.symmetrized_flag() for a, p in out.components.items()}, out.lo, out.hi,
                           check=False)
    sec = l_section(rho)
    pos = FLSection.wrap(out, sec, note=f"L expansion of {rho.to_json()}")
    neg = FLSection.wrap(out.dual(), sec.dual(), note=f"dual L expansion of {rho.to_json()}")
    return pos, neg


def basic_function(rho: AlgebraicRep, N: int) -> SphericalFunction:
    pos, _ = expand_L_alpha(rho, N)
    f = inverse_satake_graded(pos, rho.group)
    f.section = pos.closed_form
    return f


def _closed_form(T, n):
    if isinstance(T, RationalSection):
        return T
    if isinstance(T, SphericalFunction):
        if T.section is not None:
            return T.section
        T = satake_transform(T)
    if isinstance(T, SymLaurent):
        return RationalSection(T)
    if isinstance(T, FLSection) and T.closed_form is not None:
        return T.closed_form
    if isinstance(T, GradedSeries):
        if T.is_finite():
            return RationalSection(T.total() if T.components else SymLaurent.zero(n))
        raise TruncationTooSmall(
            "input is a truncated expansion without a closed form; its missing grades feed every output grade"
        )
    raise TypeError(f"cannot read a section from {type(T).__name__}")


def schwartz_quotient(T, rho: AlgebraicRep):
    """Linv * T as a Laurent polynomial, or None if it is not one."""
    sec = _closed_form(T, rho.rank)
    return (sec.num * linv_poly(rho)).exact_divide(sec.den)


def is_asymptotic_schwartz(T, rho: AlgebraicRep) -> bool:
    return schwartz_quotient(T, rho) is not None


def _expand_times_poly(rho, sigma, P: SymLaurent, N: int, L_of_dual: bool):
    """Expansion of L(X^{+-1}) * P, known up to grade N in the expansion direction."""
    degs = P.degrees() if P else {0}
    if L_of_dual:
        sigma = -sigma
    # L lives on the sigma side of 0; P's farthest grade on the other side eats into the window
    slack = max(0, max(-sigma * d for d in degs))
    pos, neg = expand_L_alpha(rho, N + slack)
    L = neg if L_of_dual else pos
    out = L * GradedSeries(rho.rank, grade_by_alpha_sym(P, rho.group))
    return out.truncate(*((None, N) if sigma > 0 else (-N, None)))


def grade_by_alpha_sym(P, group):
    comps = {}
    for e, c in P.terms.items():
        comps.setdefault(sum(e), {})[e] = c
    return {a: SymLaurent(P.n, t, weyl_invariant=(group == "GL2")) for a, t in comps.items()}


def fourier_spectral(T, rho: AlgebraicRep, N: int, psi: str = "psi") -> FLSection:
    """Satake-side transform T -> gamma(X^-1) T(X^-1), expanded to grade N."""
    if psi not in PSI:
        raise ValueError(f"psi must be one of {PSI}")
    sigma = cone_direction(rho)
    P = schwartz_quotient(T, rho)
    if P is None:
        raise NotAsymptoticSchwartz("Linv * T is not a Laurent polynomial")
    Pd = P.dual()
    out = _expand_times_poly(rho, sigma, Pd, N, L_of_dual=False)
    closed = RationalSection(Pd, linv_poly(rho))
    return FLSection.wrap(out, closed, note=f"F_{psi} of rho={rho.to_json()}")


def fourier_function(f: SphericalFunction, rho: AlgebraicRep, N: int, psi: str = "psi") -> SphericalFunction:
    if f.group != rho.group:
        raise ValueError("function and representation live on different groups")
    out = fourier_spectral(f, rho, N, psi)
    g = inverse_satake_graded(out, f.group)
    g.section = out.closed_form
    return g


def kernel_gamma_K(rho: AlgebraicRep, N: int) -> SphericalFunction:
    """The spherical function whose Satake transform is gamma(X) = Linv(X) L(X^-1).

    It expands into the cone opposite to rho's.
    """
    sigma = cone_direction(rho)
    out = _expand_times_poly(rho, sigma, linv_poly(rho), N, L_of_dual=True)
    g = inverse_satake_graded(out, rho.group)
    g.section = gamma_section(rho)
    return g


def convolve(f1: SphericalFunction, f2: SphericalFunction) -> SphericalFunction:
    """Spherical convolution computed as a product of Satake transforms."""
    if f1.group != f2.group:
        raise ValueError("groups differ")
    prod = satake_transform(f1) * satake_transform(f2)
    g = inverse_satake_graded(prod, f1.group)
    if f1.section is not None and f2.section is not None:
        g.section = f1.section * f2.section
    return g


def fourier_via_kernel(f: SphericalFunction, rho: AlgebraicRep, N: int) -> SphericalFunction:
    """f^vee * Gamma_K^vee, with the kernel truncated deep enough to fix grades up to N."""
    if not f.is_compactly_supported():
        raise TruncationTooSmall("the kernel route needs a compactly supported input")
    sigma = cone_direction(rho)
    fd = dual_function(f)
    degs = [sum(mu) for mu in fd.cells] or [0]
    slack = max(0, max(-sigma * d for d in degs))
    kernel = dual_function(kernel_gamma_K(rho, N + slack))
    g = convolve(fd, kernel)
    return g.truncate(*((None, N) if sigma > 0 else (-N, None)))


def gamma_product(rho: AlgebraicRep) -> RationalSection:
    """gamma(X) gamma(X^-1), simplified; the identity predicts a monomial."""
    return (gamma_section(rho) * gamma_section(rho).dual()).simplify()
