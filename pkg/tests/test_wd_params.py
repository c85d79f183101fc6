from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rho_fourier.errors import ArityMismatch, ZeroScalar
from rho_fourier.series import ExactScalar, V
from rho_fourier.wd_params import (
    AlgebraicRep,
    UnramWDRep,
    diagonal_restriction,
    direct_sum,
    dual,
    parse_group,
    rho_compose,
    twist,
)

nonzero = st.fractions(min_value=-5, max_value=5, max_denominator=6).filter(bool)
blocks = st.lists(st.tuples(nonzero, st.integers(1, 4)), min_size=1, max_size=4)


def test_parse_and_str():
    phi = UnramWDRep.parse("2:3, v^-1")
    assert phi.blocks == ((ExactScalar.of(2), 3), (V ** -1, 1))
    assert phi.dim == 4
    assert UnramWDRep.parse(str(phi).strip("{}").replace("(", "").replace(")", "").replace(",", ":", 1)) is not None


def test_multiset_equality():
    a = UnramWDRep.parse("2:1,3:2")
    b = UnramWDRep.parse("3:2,2:1")
    assert a == b and hash(a) == hash(b)
    assert a != UnramWDRep.parse("2:1,3:1")


def test_validation():
    with pytest.raises(ValueError):
        UnramWDRep(((1, 0),))
    with pytest.raises(ZeroScalar):
        dual(UnramWDRep(((0, 1),)))


@given(blocks)
def test_dual_involutive(bs):
    phi = UnramWDRep(tuple(bs))
    assert dual(dual(phi)) == phi


@given(blocks, st.integers(-4, 4))
def test_twist_roundtrip(bs, two_u):
    phi = UnramWDRep(tuple(bs))
    u = Fraction(two_u, 2)
    assert twist(twist(phi, u), -u) == phi


def test_twist_by_half():
    phi = UnramWDRep.parse("1")
    assert twist(phi, Fraction(1, 2)).blocks == ((V ** -1, 1),)
    with pytest.raises(ValueError):
        twist(phi, Fraction(1, 3))


def test_numeric_twist_needs_q():
    phi = UnramWDRep(((1j, 1),))
    with pytest.raises(ValueError):
        twist(phi, 1)
    assert twist(phi, 1, q=4).blocks[0][0] == pytest.approx(0.25j)


def test_diagonal_restriction_example():
    res = diagonal_restriction((ExactScalar.of(1), 3))
    assert res == UnramWDRep(((V ** -2, 1), (ExactScalar.one(), 1), (V ** 2, 1)))


@given(nonzero, st.integers(1, 6))
def test_diagonal_restriction_preserves_determinant(x, a):
    res = diagonal_restriction((x, a))
    prod = ExactScalar.one()
    for y, _ in res.blocks:
        prod = prod * y
    assert prod == ExactScalar.of(x) ** a
    assert res.dim == a


def test_direct_sum_dim():
    a, b = UnramWDRep.parse("2:2"), UnramWDRep.parse("3:1")
    assert direct_sum(a, b).dim == 3 and (a + b) == direct_sum(b, a)


def test_json_roundtrip():
    phi = UnramWDRep(((ExactScalar.parse("v^-1"), 2), (0.5 + 0.5j, 1)))
    assert UnramWDRep.from_json(phi.to_json()) == phi


def test_tempered():
    assert UnramWDRep(((1j, 1),)).check_tempered()
    assert not UnramWDRep(((2.0, 1),)).check_tempered()


# -- algebraic representations ---------------------------------------------------


def test_parse_group():
    assert parse_group("GL1") == ("GL1", 1)
    assert parse_group("GL2") == ("GL2", 2)
    assert parse_group("GL1^3") == ("GL1^3", 3)
    with pytest.raises(ValueError):
        parse_group("SL2")


def test_named_reps():
    assert AlgebraicRep.named("GL2", "std").weights() == [(1, 0), (0, 1)]
    assert AlgebraicRep.named("GL2", "sym2*det").weights() == [(3, 1), (2, 2), (1, 3)]
    assert AlgebraicRep.named("GL2", "det^-1").weights() == [(-1, -1)]
    assert AlgebraicRep.named("GL1", "std").weights() == [(1,)]
    assert AlgebraicRep.named("GL2", "trivial").dim == 0
    for bad in ("sym", "foo", ""):
        with pytest.raises(ValueError):
            AlgebraicRep.named("GL2", bad)


def test_weights_are_sym_weights():
    """Weights of Sym^m det^r have total degree m + 2r and cover m + 1 points."""
    for m in range(5):
        for r in (-1, 0, 2):
            ws = AlgebraicRep("GL2", ((m, r),)).weights()
            assert len(set(ws)) == m + 1
            assert all(a + b == m + 2 * r for a, b in ws)


def test_arity():
    with pytest.raises(ArityMismatch):
        AlgebraicRep("GL1^2", ((1,),))
    with pytest.raises(ArityMismatch):
        rho_compose(AlgebraicRep.named("GL2", "std"), [1])


def test_rep_json_roundtrip():
    for rep in (AlgebraicRep("GL2", ((2, 1), (0, -1))), AlgebraicRep("GL1^2", ((1, 0), (0, 1)))):
        assert AlgebraicRep.from_json(rep.to_json()) == rep
    assert AlgebraicRep.named("GL2", '{"group":"GL2","summands":[{"m":1,"r":0}]}') == AlgebraicRep.named("GL2", "std")


def test_rho_compose_sym2():
    sigma = [ExactScalar.of(2), ExactScalar.of(3)]
    out = rho_compose(AlgebraicRep.named("GL2", "sym2"), sigma)
    assert out == UnramWDRep.parse("4,6,9")


def test_rho_compose_numeric():
    out = rho_compose(AlgebraicRep.named("GL2", "std"), [1j, -1j])
    assert sorted(x.imag for x, _ in out.blocks) == [-1, 1]
