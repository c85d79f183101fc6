"""Dense univariate polynomials over an exact field.

Polynomials are tuples of coefficients, lowest degree first, with no
trailing zeros; the zero polynomial is ``()``.  The coefficient type only
needs field arithmetic and truthiness, so the same helpers serve both
``Fraction`` (polynomials in v) and ``ExactScalar`` (polynomials in t).
"""

from __future__ import annotations


def trim(p):
    n = len(p)
    while n and not p[n - 1]:
        n -= 1
    return tuple(p[:n])


def add(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = out[i] + c
    return trim(out)


def neg(a):
    return tuple(-c for c in a)


def sub(a, b):
    return add(a, neg(b))


def scale(a, c):
    if not c:
        return ()
    return tuple(x * c for x in a)


def mul(a, b):
    if not a or not b:
        return ()
    if len(a) == 1:
        return scale(b, a[0])
    if len(b) == 1:
        return scale(a, b[0])
    out = [None] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            k = i + j
            out[k] = x * y if out[k] is None else out[k] + x * y
    zero = a[0] - a[0]
    return trim([zero if c is None else c for c in out])


def divmod_(a, b):
    """Euclidean division; ``b`` must be nonzero."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return (), a
    rem = list(a)
    lead = b[-1]
    db = len(b) - 1
    quot = [None] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = rem[k]
        if not c:
            quot[k - db] = c
            continue
        c = c / lead
        quot[k - db] = c
        for j in range(db + 1):
            rem[k - db + j] = rem[k - db + j] - c * b[j]
    return trim(quot), trim(rem[:db])


def monic(a):
    if not a:
        return a
    lead = a[-1]
    if lead == 1:
        return a
    return tuple(c / lead for c in a)


def gcd(a, b):
    """Monic greatest common divisor."""
    # monic remainders keep coefficient growth in check over Q(v)
    a, b = monic(a), monic(b)
    while b:
        _, r = divmod_(a, b)
        a, b = b, monic(r)
    return monic(a)


def evaluate(p, x):
    """Horner evaluation; ``x`` may be any type closed under the coefficient ops."""
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def strip_low(p):
    """Split off the power of the variable dividing ``p``: returns (k, p / X^k)."""
    k = 0
    while k < len(p) and not p[k]:
        k += 1
    return k, tuple(p[k:])
