"""Strong convexity of the cone spanned by central weights, decided exactly.

Gordan's alternative says exactly one of these holds for vectors w_1..w_m:
a functional l with <l, w_i> > 0 for all i, or a nonzero lambda >= 0 with
sum lambda_i w_i = 0.  Both are posed as feasibility problems and solved by
a phase-one simplex over Fractions with Bland's rule, so each verdict comes
with a certificate that is re-verified in integers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from ..wd_params import AlgebraicRep


def _feasible_point(A, b):
    """Some x >= 0 with A x = b, or None.  Rows with negative b are flipped."""
    m = len(A)
    n = len(A[0]) if m else 0
    rows = []
    rhs = []
    for i, (row, bi) in enumerate(zip(A, b)):
        row = [Fraction(x) for x in row]
        bi = Fraction(bi)
        if bi < 0:
            row, bi = [-x for x in row], -bi
        rows.append(row + [Fraction(int(i == k)) for k in range(m)])
        rhs.append(bi)
    basis = [n + i for i in range(m)]
    width = n + m
    # phase-one objective: minimise the sum of artificials
    cost = [Fraction(0)] * width
    for j in range(n):
        cost[j] = -sum(rows[i][j] for i in range(m))
    while True:
        enter = next((j for j in range(width) if cost[j] < 0), None)
        if enter is None:
            break
        best = None
        for i in range(m):
            a = rows[i][enter]
            if a > 0:
                key = (rhs[i] / a, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:  # unbounded below cannot happen in phase one
            raise RuntimeError("phase-one simplex is unbounded")
        r = best[1]
        piv = rows[r][enter]
        rows[r] = [x / piv for x in rows[r]]
        rhs[r] /= piv
        for i in range(m):
            if i != r and rows[i][enter]:
                f = rows[i][enter]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
                rhs[i] -= f * rhs[r]
        f = cost[enter]
        cost = [x - f * y for x, y in zip(cost, rows[r])]
        basis[r] = enter
    if any(basis[i] >= n and rhs[i] != 0 for i in range(m)):
        return None
    x = [Fraction(0)] * n
    for i, j in enumerate(basis):
        if j < n:
            x[j] = rhs[i]
    return x


def _integral(vec):
    den = math.lcm(*(Fraction(x).denominator for x in vec)) if vec else 1
    ints = [int(Fraction(x) * den) for x in vec]
    g = math.gcd(*ints) if any(ints) else 1
    return tuple(i // g for i in ints)


def _pair(a, b):
    return sum(x * y for x, y in zip(a, b))


@dataclass(frozen=True)
class ConeReport:
    weights: tuple
    strongly_convex: bool
    certificate: tuple  # separating functional if convex, else the witness combination

    @property
    def kind(self):
        return "separating_functional" if self.strongly_convex else "witness_combination"

    def verify(self) -> bool:
        if self.strongly_convex:
            return all(_pair(self.certificate, w) >= 1 for w in self.weights)
        lam = self.certificate
        if len(lam) != len(self.weights) or any(c < 0 for c in lam) or not any(lam):
            return False
        dim = len(self.weights[0])
        return all(sum(c * w[k] for c, w in zip(lam, self.weights)) == 0 for k in range(dim))

    def to_json(self):
        return {
            "weights": [list(w) for w in self.weights],
            "strongly_convex": self.strongly_convex,
            "certificate": {"kind": self.kind, "vector": list(self.certificate)},
        }


def _weights_of(rho_or_weights):
    if isinstance(rho_or_weights, AlgebraicRep):
        return [tuple(w) for w in rho_or_weights.central_weights()]
    return [(int(w),) if isinstance(w, int) else tuple(int(c) for c in w) for w in rho_or_weights]


def cone_check(rho_or_weights) -> ConeReport:
    """Decide strong convexity for an AlgebraicRep or a list of integer weights.

    An empty weight list spans the zero cone, which is strongly convex with
    the empty certificate condition; the functional 0 is returned.
    """
    ws = _weights_of(rho_or_weights)
    if not ws:
        return ConeReport((), True, ())
    dim = len(ws[0])
    if any(len(w) != dim for w in ws):
        raise ValueError("weights have different lengths")
    m = len(ws)
    # witness: lambda >= 0, sum lambda_i w_i = 0, sum lambda_i = 1
    A = [[w[k] for w in ws] for k in range(dim)] + [[1] * m]
    lam = _feasible_point(A, [0] * dim + [1])
    if lam is not None:
        rep = ConeReport(tuple(ws), False, _integral(lam))
    else:
        # functional: <l+ - l-, w_i> - s_i = 1 with l+, l-, s >= 0
        A = [[w[k] for k in range(dim)] + [-w[k] for k in range(dim)] + [-int(i == j) for j in range(m)]
             for i, w in enumerate(ws)]
        x = _feasible_point(A, [1] * m)
        if x is None:
            raise RuntimeError("both alternatives infeasible; simplex bug")
        rep = ConeReport(tuple(ws), True, _integral([x[k] - x[dim + k] for k in range(dim)]))
    if not rep.verify():
        raise RuntimeError(f"certificate failed to verify for {ws}")
    return rep


@dataclass(frozen=True)
class HalfSpace:
    """{lambda : <functional, lambda> > bound} on the central cocharacter coordinates."""

    functional: tuple
    bound: Fraction = Fraction(-1, 2)

    def contains(self, lam) -> bool:
        lam = (lam,) if isinstance(lam, (int, float, Fraction)) else tuple(lam)
        return _pair(self.functional, lam) > self.bound

    def __str__(self):
        terms = "+".join(f"{c}*l{i}" for i, c in enumerate(self.functional))
        return f"{terms} > {self.bound}"


def convergence_cone(rho: AlgebraicRep):
    return [HalfSpace(tuple(w)) for w in _weights_of(rho)]


def in_convergence_cone(rho: AlgebraicRep, lam) -> bool:
    return all(h.contains(lam) for h in convergence_cone(rho))
