from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ghilb.errors import NotInvertible, ParseError, RingMismatch, UnknownVariable
from ghilb.rings import GF, QQ, ZZ, BaseRing, PolyRing, all_monomials, box_monomials

from .strategies import polys

Q2 = PolyRing(QQ, ["u", "v"])


def test_base_ring_parse():
    assert BaseRing.parse("QQ") == QQ
    assert BaseRing.parse("ZZ") == ZZ
    assert BaseRing.parse("GF(5)") == GF(5)
    assert BaseRing.parse("Z/7") == GF(7)
    with pytest.raises(Exception):
        GF(6)


def test_gf_arithmetic():
    F = GF(5)
    assert F.coerce(7) == 2
    assert F.coerce(Fraction(1, 2)) == 3
    assert F.inv(2) == 3
    with pytest.raises(NotInvertible):
        F.inv(0)


def test_zz_division():
    assert ZZ.div(6, 3) == 2
    with pytest.raises(NotInvertible):
        ZZ.div(3, 2)
    with pytest.raises(NotInvertible):
        ZZ.coerce("1/2")


def test_parse_and_print(Qt):
    f = Qt.parse("(1+t)^2")
    assert str(f) == "t^2 + 2*t + 1"
    assert Qt.parse("-3/2*t + 1/2") == Qt.parse("(1 - 3*t)/2")
    g = Q2.parse("u*v - 3/2*u^2 + 2")
    assert str(g) == "-3/2*u^2 + u*v + 2"


def test_parse_over_gf2(Qt):
    R = PolyRing(GF(2), ["t"])
    assert R.parse("2*t") == R.zero


def test_parse_errors(Qt):
    with pytest.raises(ParseError) as exc:
        Qt.parse("t + * 2")
    assert exc.value.position is not None
    with pytest.raises(UnknownVariable):
        Qt.parse("t + x")
    with pytest.raises(ParseError):
        Qt.parse("t^-1")


def test_eval_and_degree(Qt):
    f = Qt.parse("t^2 + 1")
    assert f.eval([2]) == 5
    assert f.total_degree() == 2
    assert Q2.parse("u^2*v + v").degree_in(1) == 1


def test_ring_mismatch(Qt):
    with pytest.raises(RingMismatch):
        Qt.gen(0) + Q2.gen(0)


def test_exact_div():
    f = Q2.parse("u^2 - v^2")
    assert f.exact_div(Q2.parse("u - v")) == Q2.parse("u + v")
    with pytest.raises(NotInvertible):
        f.exact_div(Q2.parse("u + 1"))


def test_monomial_enumerations():
    assert len(all_monomials(2, 3)) == 10
    assert len(box_monomials(2, 3)) == 9
    assert all(max(e) < 3 for e in box_monomials(2, 3))


@given(polys(Q2), polys(Q2))
def test_parse_round_trip(f, g):
    assert Q2.parse(str(f)) == f
    assert Q2.parse(f"({f})*({g})") == f * g


@given(polys(Q2), polys(Q2), polys(Q2))
def test_ring_axioms(f, g, h):
    assert (f + g) * h == f * h + g * h
    assert (f * g) * h == f * (g * h)
    assert f * g == g * f
    assert f - f == Q2.zero


@given(polys(Q2), st.integers(-3, 3), st.integers(-3, 3))
def test_eval_is_homomorphism(f, a, b):
    g = f * f + f
    assert g.eval([a, b]) == f.eval([a, b]) ** 2 + f.eval([a, b])
