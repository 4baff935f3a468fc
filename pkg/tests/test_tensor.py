import pytest
from hypothesis import given, strategies as st

from ghilb.errors import IndexOutOfRange, NotSymmetric
from ghilb.rings import QQ, PolyRing
from ghilb.tensor import (
    SymTensor,
    embed_factor,
    nu_vector,
    nu_vector_det,
    orbit_compress,
    orbit_expand,
    tensor_from_json,
    tensor_mul,
    tensor_to_json,
)
from ghilb.divided import gamma

from .strategies import polys, tuples_of

R = PolyRing(QQ, ["u", "v"])
T = PolyRing(QQ, ["t"])


def test_embed_factor():
    t = T.gen(0)
    e = embed_factor(t, 2, 3)
    assert e.terms == {((0,), (1,), (0,)): 1}
    with pytest.raises(IndexOutOfRange):
        embed_factor(t, 4, 3)


def test_nu_of_one_t():
    t = T.gen(0)
    nu = nu_vector([T.one, t])
    assert nu.terms == {((0,), (1,)): 1, ((1,), (0,)): -1}


def test_not_symmetric_names_transposition():
    t = T.gen(0)
    with pytest.raises(NotSymmetric, match=r"\(1, 2\)"):
        orbit_compress(nu_vector([T.one, t]))


def test_orbit_counts_each_arrangement_once():
    s = SymTensor(T, 3, {((0,), (0,), (1,)): 1})
    assert len(orbit_expand(s).terms) == 3
    assert len(orbit_expand(SymTensor(T, 2, {((1,), (1,)): 1})).terms) == 1


@given(st.integers(1, 3).flatmap(lambda n: tuples_of(R, n, max_deg=2, max_terms=2)))
def test_nu_two_constructions_agree(xs):
    assert nu_vector(xs) == nu_vector_det(xs)


@given(st.integers(1, 3).flatmap(lambda n: tuples_of(R, n, max_deg=2, max_terms=2)))
def test_nu_squared_is_symmetric(xs):
    nu = nu_vector(xs)
    sq = tensor_mul(nu, nu)
    assert sq.is_symmetric()
    assert orbit_expand(orbit_compress(sq)) == sq


@given(polys(R), st.integers(1, 3))
def test_gamma_is_tensor_power(f, a):
    full = embed_factor(f, 1, a)
    for j in range(2, a + 1):
        full = tensor_mul(full, embed_factor(f, j, a))
    assert orbit_expand(gamma(a, f)) == full


def test_json_round_trip():
    u, v = R.gens
    s = gamma(2, u + 3 * v)
    doc = tensor_to_json(s)
    assert tensor_from_json(doc, R) == s
    assert doc[0] == {"tuple": ["u", "u"], "coeff": "1"}
