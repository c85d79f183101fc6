"""Unramified Weil-Deligne parameters and algebraic representations of the dual group."""

from __future__ import annotations

import json
import math
import re
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .errors import ArityMismatch, ZeroScalar
from .series import ExactScalar, V


def as_satake_scalar(x):
    """Exact inputs become ExactScalar, floats and complexes stay numeric."""
    if isinstance(x, ExactScalar):
        return x
    if isinstance(x, (bool,)):
        raise TypeError("booleans are not Satake scalars")
    if isinstance(x, (int, Fraction, str)):
        return ExactScalar.of(x)
    if isinstance(x, (float, complex)):
        return complex(x)
    raise TypeError(f"unsupported Satake scalar {x!r}")


def _to_complex(x):
    if isinstance(x, complex):
        return x
    if x.is_constant():
        return complex(x.constant_value())
    raise TypeError("cannot mix v-dependent exact scalars with numeric ones")


def _is_zero(x):
    return not x if isinstance(x, ExactScalar) else x == 0


def _v_power(k: int, x, q):
    """x * v**k, exactly when x is exact."""
    if isinstance(x, ExactScalar):
        return x * V ** k
    if q is None:
        raise ValueError("numeric Satake scalars need q to apply a twist")
    return x * math.sqrt(q) ** k


@dataclass(frozen=True)
class UnramWDRep:
    """Multiset of blocks (x, a), each meaning chi_x tensor Sym^(a-1)."""

    blocks: tuple = ()

    def __post_init__(self):
        clean = []
        for x, a in self.blocks:
            if not isinstance(a, int) or isinstance(a, bool) or a < 1:
                raise ValueError(f"monodromy size must be an integer >= 1, got {a!r}")
            clean.append((as_satake_scalar(x), a))
        object.__setattr__(self, "blocks", tuple(clean))

    @property
    def dim(self) -> int:
        return sum(a for _, a in self.blocks)

    def is_exact(self) -> bool:
        return all(isinstance(x, ExactScalar) for x, _ in self.blocks)

    def __eq__(self, other):
        if not isinstance(other, UnramWDRep):
            return NotImplemented
        return Counter(self.blocks) == Counter(other.blocks)

    def __hash__(self):
        return hash(frozenset(Counter(self.blocks).items()))

    def __add__(self, other):
        return direct_sum(self, other)

    def check_tempered(self, tol=1e-9) -> bool:
        """Numeric blocks must sit on the unit circle; exact ones are the caller's promise."""
        return all(isinstance(x, ExactScalar) or abs(abs(x) - 1) <= tol for x, _ in self.blocks)

    def to_json(self):
        return {"blocks": [{"x": str(x) if isinstance(x, ExactScalar) else [x.real, x.imag], "a": a}
                           for x, a in self.blocks]}

    @classmethod
    def from_json(cls, data):
        blocks = []
        for b in data["blocks"]:
            x = b["x"]
            blocks.append((complex(*x) if isinstance(x, list) else ExactScalar.parse(x), int(b["a"])))
        return cls(tuple(blocks))

    @classmethod
    def parse(cls, text: str):
        """Parse ``"x:a,x:a"``; a defaults to 1."""
        blocks = []
        for part in filter(None, (p.strip() for p in text.split(","))):
            x, _, a = part.partition(":")
            blocks.append((ExactScalar.parse(x), int(a) if a else 1))
        return cls(tuple(blocks))

    def __str__(self):
        return "{" + ", ".join(f"({x},{a})" for x, a in self.blocks) + "}"


def dual(phi: UnramWDRep) -> UnramWDRep:
    blocks = []
    for x, a in phi.blocks:
        if _is_zero(x):
            raise ZeroScalar("cannot dualize a block with zero Satake scalar")
        blocks.append((1 / x, a))
    return UnramWDRep(tuple(blocks))


def twist(phi: UnramWDRep, u, q=None) -> UnramWDRep:
    """Twist by |.|^u for half-integral u: x -> x * v**(-2u)."""
    two_u = Fraction(u) * 2
    if two_u.denominator != 1:
        raise ValueError("twists must be half-integers")
    k = -int(two_u)
    return UnramWDRep(tuple((_v_power(k, x, q), a) for x, a in phi.blocks))


def direct_sum(phi: UnramWDRep, psi: UnramWDRep) -> UnramWDRep:
    return UnramWDRep(phi.blocks + psi.blocks)


def diagonal_restriction(block, q=None) -> UnramWDRep:
    """(x, a) -> the a unramified lines x * v**(-(a-1)+2i)."""
    x, a = block
    x = as_satake_scalar(x)
    if a < 1:
        raise ValueError("a must be >= 1")
    return UnramWDRep(tuple((_v_power(-(a - 1) + 2 * i, x, q), 1) for i in range(a)))


# --------------------------------------------------------------------------- groups

_GROUP_RE = re.compile(r"^GL1(\^(\d+))?$|^GL2$")


def parse_group(group: str):
    """Return (canonical name, rank)."""
    m = _GROUP_RE.match(group)
    if not m:
        raise ValueError(f"unknown group {group!r}; expected GL1, GL2 or GL1^n")
    if group == "GL2":
        return "GL2", 2
    n = int(m.group(2)) if m.group(2) else 1
    return ("GL1" if n == 1 and not m.group(1) else f"GL1^{n}"), n


@dataclass(frozen=True)
class AlgebraicRep:
    """A finite-dimensional representation of the dual group.

    GL2 summands are pairs (m, r) meaning Sym^m tensor det^r.  GL1 and GL1^n
    summands are weight vectors.
    """

    group: str
    summands: tuple = ()

    def __post_init__(self):
        name, rank = parse_group(self.group)
        clean = []
        for s in self.summands:
            if name == "GL2":
                m, r = (int(s[0]), int(s[1]))
                if m < 0:
                    raise ValueError("Sym degree must be >= 0")
                clean.append((m, r))
            else:
                w = (int(s),) if isinstance(s, int) else tuple(int(c) for c in s)
                if len(w) != rank:
                    raise ArityMismatch(f"weight {w} does not match rank {rank}")
                clean.append(w)
        object.__setattr__(self, "group", name)
        object.__setattr__(self, "summands", tuple(clean))

    @property
    def rank(self) -> int:
        return parse_group(self.group)[1]

    @property
    def dim(self) -> int:
        if self.group == "GL2":
            return sum(m + 1 for m, _ in self.summands)
        return len(self.summands)

    def summand_weights(self):
        """Per summand, the torus weights (exponent vectors of the Satake variables)."""
        if self.group == "GL2":
            return [[(m - j + r, j + r) for j in range(m + 1)] for m, r in self.summands]
        return [[w] for w in self.summands]

    def weights(self):
        return [w for ws in self.summand_weights() for w in ws]

    def central_weights(self):
        """Central weight of each summand, as an integer vector."""
        if self.group == "GL2":
            return [(m + 2 * r,) for m, r in self.summands]
        return list(self.summands)

    def __add__(self, other):
        if other.group != self.group:
            raise ValueError("cannot add representations of different groups")
        return AlgebraicRep(self.group, self.summands + other.summands)

    def to_json(self):
        if self.group == "GL2":
            return {"group": "GL2", "summands": [{"m": m, "r": r} for m, r in self.summands]}
        return {"group": self.group, "summands": [{"weight": list(w)} for w in self.summands]}

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        group = data["group"]
        out = []
        for s in data.get("summands", []):
            out.append((s["m"], s.get("r", 0)) if "m" in s else tuple(s["weight"]))
        return cls(group, tuple(out))

    @classmethod
    def named(cls, group: str, name: str):
        """Build from a short name: std, det, trivial, sym<m>, sym<m>*det^<r>, or JSON."""
        name = name.strip()
        if name.startswith("{"):
            rep = cls.from_json(name)
            if rep.group != parse_group(group)[0]:
                raise ValueError("group in JSON does not match --group")
            return rep
        g, rank = parse_group(group)
        if name == "trivial":
            return cls(g, ())
        if g != "GL2":
            if name == "std":
                if rank != 1:
                    raise ValueError("std is only defined for GL1 and GL2 here")
                return cls(g, ((1,),))
            raise ValueError(f"unknown representation {name!r} for {g}")
        m_match = re.fullmatch(r"(?:(std)|sym(\d+))?(?:\*?det(?:\^(-?\d+))?)?", name)
        if not name or not m_match:
            raise ValueError(f"unknown representation {name!r} for GL2")
        std, sym, det_pow = m_match.groups()
        has_det = "det" in name
        m = 1 if std else int(sym) if sym else 0
        r = (int(det_pow) if det_pow else 1) if has_det else 0
        if not (std or sym) and not has_det:
            raise ValueError(f"unknown representation {name!r} for GL2")
        return cls("GL2", ((m, r),))


def rho_compose(rho: AlgebraicRep, sigma) -> UnramWDRep:
    """Blocks of rho composed with the unramified principal series of Satake data sigma."""
    if isinstance(sigma, UnramWDRep):
        if any(a != 1 for _, a in sigma.blocks):
            raise ArityMismatch("principal-series input must have trivial monodromy")
        xs = [x for x, _ in sigma.blocks]
    else:
        xs = [as_satake_scalar(x) for x in sigma]
    if any(isinstance(x, complex) for x in xs):
        xs = [_to_complex(x) for x in xs]
    if len(xs) != rho.rank:
        raise ArityMismatch(f"{rho.group} needs {rho.rank} Satake scalars, got {len(xs)}")
    blocks = []
    for w in rho.weights():
        val = xs[0] ** 0 if xs else ExactScalar.one()
        for x, e in zip(xs, w):
            val = val * x ** e
        blocks.append((val, 1))
    return UnramWDRep(tuple(blocks))
