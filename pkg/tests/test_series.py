import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rho_fourier.errors import MixedPoleDirections, NotWeylInvariant, TruncationTooSmall, ZeroDenominator
from rho_fourier.series import (
    ExactScalar,
    GradedSeries,
    LaurentRational,
    SymLaurent,
    V,
    complete_homogeneous,
    grade_by_alpha,
    series_expand,
)

T = LaurentRational.t()


# -- strategies ----------------------------------------------------------------

small = st.integers(-4, 4)


@st.composite
def scalars(draw, allow_zero=True):
    """Random elements of Q(v) built as (a + b v^k) / (c + d v^j)."""
    a, b, c, d = (draw(small) for _ in range(4))
    k, j = draw(st.integers(-3, 3)), draw(st.integers(-3, 3))
    den = c + d * V ** j
    if not den:
        den = ExactScalar.one()
    x = (a + b * V ** k) / den
    if not allow_zero and not x:
        x = ExactScalar.one()
    return x


def _numeric(x, q=7.0):
    # no (c + d v^j) with |c|, |d| <= 4 vanishes at v = sqrt(7)
    return x.evaluate(q)


# -- ExactScalar -------------------------------------------------------------------


def test_parse_and_print_roundtrip():
    for text in ("1", "-1", "v", "v^-2", "3*v^2-1/2", "(v+1)/(v^2-2)", "2*v^-1"):
        x = ExactScalar.parse(text)
        assert ExactScalar.parse(str(x)) == x


def test_reduced_form():
    x = (V ** 2 - 1) / (V - 1)
    assert x == V + 1
    assert x.den == (Fraction(1),)


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        ExactScalar.one() / ExactScalar.zero()


def test_pole_on_specialization():
    x = 1 / (V ** 2 - 4)
    with pytest.raises(ZeroDenominator):
        x.specialize(4)
    with pytest.raises(ZeroDenominator):
        x.evaluate(4)
    assert float(x.specialize(3)) == pytest.approx(-1.0)


def test_quadratic_specialization_is_exact():
    x = (V + 1) * (V - 1)
    assert x.specialize(3) == ExactScalar.of(2).specialize(3)
    # v^-1 at q = 4 is exactly 1/2
    assert (V ** -1).specialize(4) == ExactScalar.of(Fraction(1, 2)).specialize(4)


@given(scalars(), scalars(), scalars())
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0
    if b:
        assert (a / b) * b == a


@given(st.lists(st.tuples(st.sampled_from("+-*/"), scalars(allow_zero=False)), min_size=1, max_size=12))
def test_numeric_specialization_tracks_symbolic(ops):
    """Symbolic arithmetic then evaluation equals evaluation then float arithmetic."""
    x = ExactScalar.one()
    val = 1.0
    for op, y in ops:
        if op == "/" and not y:
            continue
        yv = _numeric(y)
        if op == "/" and abs(yv) < 1e-6:
            continue
        x, val = {"+": (x + y, val + yv), "-": (x - y, val - yv), "*": (x * y, val * yv),
                  "/": (x / y, val / yv)}[op]
    try:
        got = _numeric(x)
    except ZeroDenominator:
        return
    assert got == pytest.approx(val, rel=1e-8, abs=1e-8)


def test_hash_consistency():
    assert hash(ExactScalar.of(3)) == hash(ExactScalar.parse("6/2"))
    assert {V * V: 1}[ExactScalar.parse("v^2")] == 1


# -- LaurentRational ------------------------------------------------------------------


def test_laurent_printing():
    assert str(1 / (1 - T)) == "1/(1-t)"


def test_series_expand_examples():
    assert series_expand(1 / (1 - T), "positive", 3) == [1, 1, 1, 1]
    r = 1 / ((1 - V ** -1 * T) * (1 - 2 * V ** -1 * T))
    assert series_expand(r, "positive", 2) == [1, 3 * V ** -1, 7 * V ** -2]
    assert series_expand(1 - T, "positive", 2) == [1, -1, 0]


def test_series_expand_long_division_oracle():
    """Against an independent truncated long division in plain Fractions (v specialised to 2)."""
    num = [Fraction(1), Fraction(2)]
    den = [Fraction(1), Fraction(-3), Fraction(1, 2)]
    r = (1 + 2 * T) / (1 - 3 * T + Fraction(1, 2) * T ** 2)
    coeffs = series_expand(r, "positive", 6)
    out = []
    for k in range(7):
        acc = num[k] if k < len(num) else Fraction(0)
        for j in range(1, min(k, 2) + 1):
            acc -= den[j] * out[k - j]
        out.append(acc)
    assert [c.constant_value() for c in coeffs] == out


def test_series_expand_negative_direction():
    r = 1 / (1 - 1 / T)  # = sum t^-k
    assert series_expand(r, "negative", 3) == [1, 1, 1, 1]


def test_mixed_pole_directions():
    r = 1 / ((1 - 2 * T) * (1 - T / 2))
    with pytest.raises(MixedPoleDirections):
        series_expand(r, "positive", 3, q=3)


def test_substitute_reciprocal():
    r = 1 / (1 - T)
    s = r.substitute_reciprocal(V ** -2)  # t -> q^-1 / t
    assert s == 1 / (1 - V ** -2 / T)


# -- SymLaurent ------------------------------------------------------------------------


def test_complete_homogeneous_examples():
    X1, X2 = SymLaurent.variable(0, 2), SymLaurent.variable(1, 2)
    assert complete_homogeneous(0, 2) == SymLaurent.constant(2, 1)
    assert complete_homogeneous(1, 2) == X1 + X2
    assert complete_homogeneous(2, 2) == X1 ** 2 + X1 * X2 + X2 ** 2
    assert str(complete_homogeneous(2, 2)) == "X1^2+X1*X2+X2^2"


def test_complete_homogeneous_generating_function_oracle():
    """h_k is the t^k coefficient of prod (1 - X_i t)^-1, checked at numeric points."""
    rng = random.Random(1)
    for n in (1, 2, 3):
        xs = [rng.uniform(-1, 1) for _ in range(n)]
        t = 0.1
        gen = 1.0
        for x in xs:
            gen /= 1 - x * t
        approx = sum(complete_homogeneous(k, n).evaluate(xs, 3).real * t ** k for k in range(25))
        assert approx == pytest.approx(gen, rel=1e-12)


def test_weyl_flag_validated():
    X1 = SymLaurent.variable(0, 2)
    with pytest.raises(NotWeylInvariant):
        SymLaurent(2, X1.terms, weyl_invariant=True)


def test_exact_divide():
    X1, X2 = SymLaurent.variable(0, 2), SymLaurent.variable(1, 2)
    inv3 = SymLaurent.monomial((-3, 0))
    a = (X1 + X2) * (X1 - 2 * X2) * inv3
    assert a.exact_divide(X1 + X2) == (X1 - 2 * X2) * inv3
    assert (X1 + 1).exact_divide(X1 + 2) is None
    assert (X1 * X2).exact_divide(X1 ** 5) == X2 * SymLaurent.monomial((-4, 0))


@st.composite
def sym_polys(draw, n=2):
    terms = {}
    for _ in range(draw(st.integers(0, 4))):
        e = tuple(draw(st.integers(-2, 2)) for _ in range(n))
        terms[e] = ExactScalar.of(draw(st.integers(-3, 3)))
    return SymLaurent(n, terms)


@given(sym_polys(), sym_polys())
def test_exact_divide_recovers_factor(a, b):
    if not b:
        return
    assert (a * b).exact_divide(b) == a


@given(sym_polys())
def test_grade_by_alpha_sums_back(P):
    G = grade_by_alpha(P)
    total = G.total() if G.components else SymLaurent.zero(2)
    assert total == P
    for a, comp in G.components.items():
        assert comp.is_homogeneous(a)


def test_grade_by_alpha_examples():
    X1, X2 = SymLaurent.variable(0, 2), SymLaurent.variable(1, 2)
    assert grade_by_alpha(X1 + X2).components == {1: X1 + X2}
    one = SymLaurent.constant(2, 1)
    assert grade_by_alpha(one + X1 * X2).components == {0: one, 2: X1 * X2}
    h2 = complete_homogeneous(2, 2)
    inv = SymLaurent.monomial((-1, -1))
    assert grade_by_alpha(h2 + inv).components == {2: h2, -2: inv}


# -- GradedSeries ------------------------------------------------------------------------


def test_graded_projection_idempotent():
    X1, X2 = SymLaurent.variable(0, 2), SymLaurent.variable(1, 2)
    G = grade_by_alpha(1 + X1 + X1 * X2)
    assert G.project(1).project(1) == G.project(1)
    assert not G.project(1).project(2).components


def test_graded_truncation_errors():
    X = SymLaurent.variable(0, 1)
    G = GradedSeries(1, {0: SymLaurent.constant(1, 1), 1: X}, None, 3)
    with pytest.raises(TruncationTooSmall):
        G[4]
    assert not G[2]


def test_product_window_rule():
    X = SymLaurent.variable(0, 1)
    geo = GradedSeries(1, {k: X ** k for k in range(6)}, None, 5)
    poly = GradedSeries(1, {-1: SymLaurent.monomial((-1,)), 0: SymLaurent.constant(1, 1)})
    prod = geo * poly
    assert prod.hi == 4  # the X^-1 term pulls the known window down by one


def test_opposite_cones_refused():
    X = SymLaurent.variable(0, 1)
    pos = GradedSeries(1, {k: X ** k for k in range(4)}, None, 3)
    with pytest.raises(TruncationTooSmall):
        pos * pos.dual()
