"""Laurent polynomials in Satake variables X_1..X_n over Q(v)."""

from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np

from ..errors import NotWeylInvariant
from .scalar import ExactScalar


def _add_exp(a, b):
    return tuple(x + y for x, y in zip(a, b))


class SymLaurent:
    """Finite map from exponent vectors to nonzero ExactScalar coefficients.

    ``weyl_invariant`` records that the polynomial is symmetric under all
    permutations of the variables.  Setting it on a non-symmetric input is an
    error rather than a silent promise.
    """

    __slots__ = ("n", "terms", "weyl_invariant")

    def __init__(self, n: int, terms=None, weyl_invariant: bool = False, _trusted=False):
        if n < 1:
            raise ValueError("need at least one variable")
        self.n = n
        if _trusted:
            self.terms = terms
        else:
            clean = {}
            for exp, c in (terms or {}).items():
                exp = tuple(int(e) for e in exp)
                if len(exp) != n:
                    raise ValueError(f"exponent {exp} has wrong length for n={n}")
                c = ExactScalar.of(c)
                if c:
                    clean[exp] = clean[exp] + c if exp in clean else c
            self.terms = {e: c for e, c in clean.items() if c}
        self.weyl_invariant = bool(weyl_invariant)
        if self.weyl_invariant and not _trusted and not self.is_symmetric():
            raise NotWeylInvariant("terms are not permutation stable")

    # -- constructors -----------------------------------------------------------
    @classmethod
    def zero(cls, n):
        return cls(n, {}, weyl_invariant=True, _trusted=True)

    @classmethod
    def constant(cls, n, c=1):
        c = ExactScalar.of(c)
        return cls(n, {(0,) * n: c} if c else {}, weyl_invariant=True, _trusted=True)

    @classmethod
    def monomial(cls, exp, c=1):
        exp = tuple(exp)
        return cls(len(exp), {exp: c})

    @classmethod
    def variable(cls, i, n):
        exp = [0] * n
        exp[i] = 1
        return cls.monomial(exp)

    # -- basic structure ----------------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def coefficient(self, exp) -> ExactScalar:
        return self.terms.get(tuple(exp), ExactScalar.zero())

    def is_symmetric(self) -> bool:
        for exp, c in self.terms.items():
            for perm in set(itertools.permutations(exp)):
                if self.terms.get(perm) != c:
                    return False
        return True

    def degrees(self) -> set[int]:
        return {sum(e) for e in self.terms}

    def total_degree(self) -> int:
        """Degree of a homogeneous nonzero polynomial."""
        degs = self.degrees()
        if not degs:
            raise ValueError("the zero polynomial has no degree")
        if len(degs) > 1:
            raise ValueError(f"not homogeneous: degrees {sorted(degs)}")
        return degs.pop()

    def is_homogeneous(self, d=None) -> bool:
        degs = self.degrees()
        if not degs:
            return True
        return len(degs) == 1 and (d is None or d in degs)

    def homogeneous_part(self, d: int) -> "SymLaurent":
        return SymLaurent(
            self.n,
            {e: c for e, c in self.terms.items() if sum(e) == d},
            self.weyl_invariant,
            _trusted=True,
        )

    def is_polynomial(self) -> bool:
        return all(min(e) >= 0 for e in self.terms)

    # -- arithmetic ---------------------------------------------------------------
    def _check(self, other):
        if isinstance(other, SymLaurent):
            if other.n != self.n:
                raise ValueError("variable counts differ")
            return other
        return SymLaurent.constant(self.n, other)

    def __add__(self, other):
        other = self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out[e] + c if e in out else c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return SymLaurent(self.n, out, self.weyl_invariant and other.weyl_invariant, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return SymLaurent(self.n, {e: -c for e, c in self.terms.items()}, self.weyl_invariant, _trusted=True)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def scale(self, c) -> "SymLaurent":
        c = ExactScalar.of(c)
        if not c:
            return SymLaurent.zero(self.n)
        return SymLaurent(self.n, {e: x * c for e, x in self.terms.items()}, self.weyl_invariant, _trusted=True)

    def __mul__(self, other):
        if not isinstance(other, SymLaurent):
            return self.scale(other)
        other = self._check(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = _add_exp(e1, e2)
                p = c1 * c2
                out[e] = out[e] + p if e in out else p
        out = {e: c for e, c in out.items() if c}
        return SymLaurent(self.n, out, self.weyl_invariant and other.weyl_invariant, _trusted=True)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers need exact_divide")
        out = SymLaurent.constant(self.n, 1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, SymLaurent):
            return self.n == other.n and self.terms == other.terms
        try:
            return self == SymLaurent.constant(self.n, other)
        except TypeError:
            return NotImplemented

    __hash__ = None

    # -- substitutions --------------------------------------------------------------
    def dual(self) -> "SymLaurent":
        """X_i -> X_i^-1."""
        return SymLaurent(
            self.n, {tuple(-x for x in e): c for e, c in self.terms.items()}, self.weyl_invariant, _trusted=True
        )

    def shift_exponent(self, exp) -> "SymLaurent":
        """Multiply by the monomial X^exp."""
        return SymLaurent(self.n, {_add_exp(e, exp): c for e, c in self.terms.items()}, False, _trusted=True)

    def scale_by_degree(self, c) -> "SymLaurent":
        """X_i -> c*X_i, for scalar c."""
        c = ExactScalar.of(c)
        return SymLaurent(
            self.n, {e: x * c ** sum(e) for e, x in self.terms.items()}, self.weyl_invariant, _trusted=True
        )

    def substitute_monomials(self, images, m: int) -> "SymLaurent":
        """X_j -> X^{images[j]} where each image is an exponent vector of length m."""
        if len(images) != self.n:
            raise ValueError("need one image monomial per variable")
        out = {}
        for e, c in self.terms.items():
            new = [0] * m
            for ej, img in zip(e, images):
                for i in range(m):
                    new[i] += ej * img[i]
            new = tuple(new)
            s = out[new] + c if new in out else c
            if s:
                out[new] = s
            else:
                out.pop(new)
        return SymLaurent(m, out, _trusted=True)

    def symmetrized_flag(self) -> "SymLaurent":
        """Copy with the Weyl flag set (validated)."""
        return SymLaurent(self.n, self.terms, weyl_invariant=True)

    # -- division ---------------------------------------------------------------
    def exact_divide(self, other: "SymLaurent"):
        """Quotient in the Laurent ring, or None when ``other`` does not divide.

        Both sides are first moved into the polynomial ring; the divisor is
        stripped of monomial factors, after which it is coprime to every
        variable and a single-divisor lex reduction decides divisibility.
        """
        other = self._check(other)
        if not other.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self.terms:
            return SymLaurent.zero(self.n)
        lo_b = [min(e[i] for e in other.terms) for i in range(self.n)]
        lo_a = [min(e[i] for e in self.terms) for i in range(self.n)]
        b = {tuple(x - l for x, l in zip(e, lo_b)): c for e, c in other.terms.items()}
        rem = {tuple(x - l for x, l in zip(e, lo_a)): c for e, c in self.terms.items()}
        lead_e = max(b)
        lead_c = b[lead_e]
        quot = {}
        while rem:
            e = max(rem)
            if any(x < y for x, y in zip(e, lead_e)):
                return None
            qe = tuple(x - y for x, y in zip(e, lead_e))
            qc = rem[e] / lead_c
            quot[qe] = qc
            for be, bc in b.items():
                te = _add_exp(qe, be)
                val = rem.get(te, ExactScalar.zero()) - qc * bc
                if val:
                    rem[te] = val
                else:
                    rem.pop(te, None)
        shift = tuple(a - b_ for a, b_ in zip(lo_a, lo_b))
        q = SymLaurent(self.n, quot, _trusted=True).shift_exponent(shift)
        if self.weyl_invariant and other.weyl_invariant:
            q.weyl_invariant = True
        return q

    # -- evaluation ---------------------------------------------------------------
    def evaluate_exact(self, values) -> ExactScalar:
        values = [ExactScalar.of(x) for x in values]
        acc = ExactScalar.zero()
        for e, c in self.terms.items():
            term = c
            for x, k in zip(values, e):
                term = term * x ** k
            acc = acc + term
        return acc

    def to_arrays(self, q):
        """(exponents, coefficients) as numpy arrays with v = sqrt(q)."""
        exps = np.array(sorted(self.terms), dtype=np.int64).reshape(-1, self.n)
        coeffs = np.array([self.terms[tuple(e)].evaluate(q) for e in exps], dtype=np.float64)
        return exps, coeffs

    def evaluate(self, values, q) -> complex:
        values = np.asarray(values, dtype=complex)
        acc = 0j
        for e, c in self.terms.items():
            acc += c.evaluate(q) * complex(np.prod(values ** np.asarray(e)))
        return acc

    # -- serialization --------------------------------------------------------------
    def to_json(self):
        return [{"exp": list(e), "coeff": str(c)} for e, c in sorted(self.terms.items())]

    @classmethod
    def from_json(cls, data, n=None, weyl_invariant=False):
        terms = {tuple(d["exp"]): ExactScalar.parse(d["coeff"]) for d in data}
        if n is None:
            if not terms:
                raise ValueError("cannot infer variable count of an empty polynomial")
            n = len(next(iter(terms)))
        return cls(n, terms, weyl_invariant=weyl_invariant)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items(), reverse=True):
            mono = "*".join(
                (f"X{i + 1}" if k == 1 else f"X{i + 1}^{k}") for i, k in enumerate(e) if k
            )
            cs = str(c)
            if not mono:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            elif cs == "-1":
                parts.append("-" + mono)
            else:
                parts.append(f"({cs})*{mono}" if len(c.num) > 1 or len(c.den) > 1 else f"{cs}*{mono}")
        out = parts[0]
        for p in parts[1:]:
            out += p if p.startswith("-") else "+" + p
        return out

    def __repr__(self):
        return f"SymLaurent({self.n}, {self})"


@lru_cache(maxsize=None)
def _h_terms(k: int, n: int):
    out = {}
    for combo in itertools.combinations_with_replacement(range(n), k):
        exp = [0] * n
        for i in combo:
            exp[i] += 1
        out[tuple(exp)] = ExactScalar.one()
    return out


def complete_homogeneous(k: int, n: int) -> SymLaurent:
    """h_k(X_1..X_n); zero for negative k."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if k < 0:
        return SymLaurent.zero(n)
    return SymLaurent(n, dict(_h_terms(k, n)), weyl_invariant=True, _trusted=True)
