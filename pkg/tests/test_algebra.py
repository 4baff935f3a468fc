import pytest
from hypothesis import given, strategies as st

from ghilb.algebra import FiniteAlgebra, geometric_sigma
from ghilb.catalog import algebra_catalog, extended_catalog, residue_data
from ghilb.divided import delta, gamma, internal_mul, shuffle, shuffle_all
from ghilb.errors import AlgebraValidationError, DegreeMismatch
from ghilb.rings import QQ, PolyRing

S = PolyRing(QQ, ["s"])
s = S.gen(0)
DUAL = FiniteAlgebra.monogenic(QQ, [0, 0])
PM1 = FiniteAlgebra.monogenic(QQ, [-1, 0])
QXQ = FiniteAlgebra.split(QQ, 2)
ROOT_S = FiniteAlgebra.monogenic(S, [-s, S.zero])


def test_mult_matrix_examples():
    assert DUAL.mult_matrix([0, 1]) == [[0, 0], [1, 0]]
    assert QXQ.mult_matrix([0, 1]) == [[0, 0], [0, 1]]
    assert PM1.mult_matrix(PM1.unit) == [[1, 0], [0, 1]]


def test_charpoly_examples():
    L = PolyRing(QQ, ["L"])
    assert DUAL.charpoly([0, 1]) == L.parse("L^2")
    assert PM1.charpoly([0, 1]) == L.parse("L^2 - 1")
    assert FiniteAlgebra.monogenic(QQ, [0, 0, 0]).charpoly([1, 0, 0]) == L.parse("(L-1)^3")


def test_discriminant_examples():
    assert DUAL.discriminant() == 0
    assert PM1.discriminant() == 4
    assert ROOT_S.discriminant() == 4 * s
    assert FiniteAlgebra.monogenic(QQ, [0, 0, 0]).discriminant() == 0
    assert QXQ.discriminant() == 1


def test_sigma_examples():
    A = QXQ.alphabet
    e1, e2 = A.gens
    assert QXQ.sigma(shuffle(gamma(1, e1), gamma(1, e2))) == 1
    assert PM1.sigma(gamma(2, PM1.alphabet.gen(1))) == -1
    for E in (DUAL, PM1, QXQ, ROOT_S):
        assert E.sigma(gamma(E.n, E.alphabet.one)) == E.base.one
    with pytest.raises(DegreeMismatch):
        PM1.sigma(gamma(3, PM1.alphabet.gen(0)))


def test_validation_rejects_non_associative():
    table = {(0, 0): [1, 0], (0, 1): [0, 1], (1, 1): [1, 1]}
    FiniteAlgebra.from_table(QQ, 2, table, [1, 0])  # Q[t]/(t^2 - t - 1) is fine
    bad = {(0, 0): [1, 0], (0, 1): [0, 1], (1, 1): [0, 0]}
    with pytest.raises(AlgebraValidationError):
        FiniteAlgebra.from_table(QQ, 2, bad, [0, 1])


def test_json_round_trip():
    for E in (DUAL, PM1, QXQ, ROOT_S):
        F = FiniteAlgebra.from_json(E.to_json())
        assert F.c == E.c and F.unit == E.unit and F.discriminant() == E.discriminant()


@pytest.mark.parametrize("entry", extended_catalog(), ids=lambda e: e.name)
def test_sigma_of_basis_delta_is_discriminant(entry):
    E = entry.algebra
    A = E.alphabet
    basis = list(A.gens)
    assert E.sigma(delta(basis, basis)) == E.discriminant() == E.base.coerce(entry.discriminant)


def _elements(E):
    base = E.base.coerce if not isinstance(E.base, PolyRing) else E.base.coerce
    return st.lists(st.integers(-3, 3), min_size=E.n, max_size=E.n).map(lambda v: [base(c) for c in v])


@pytest.mark.parametrize("entry", algebra_catalog(), ids=lambda e: e.name)
@given(data=st.data())
def test_charpoly_coefficients_are_sigma_values(entry, data):
    E = entry.algebra
    x = data.draw(_elements(E))
    cp = E.charpoly(x)
    X = E.element(x)
    for j in range(E.n + 1):
        sig = E.sigma(shuffle(gamma(j, X), gamma(E.n - j, E.alphabet.one)))
        assert cp.coeff((E.n - j,)) == E.base.reduce(sig * (-1) ** j)


@pytest.mark.parametrize("entry", algebra_catalog(), ids=lambda e: e.name)
@given(data=st.data())
def test_sigma_multiplicative(entry, data):
    E = entry.algebra
    A = E.alphabet
    u = shuffle_all([gamma(1, E.element(data.draw(_elements(E)))) for _ in range(E.n)], A)
    v = shuffle_all([gamma(1, E.element(data.draw(_elements(E)))) for _ in range(E.n)], A)
    assert E.sigma(internal_mul(u, v)) == E.base.reduce(E.sigma(u) * E.sigma(v))


@pytest.mark.parametrize("entry", [e for e in extended_catalog() if residue_data(e.name)], ids=lambda e: e.name)
@given(data=st.data())
def test_sigma_through_residue_maps(entry, data):
    E = entry.algebra
    parts = [gamma(1, E.element(data.draw(_elements(E)))) for _ in range(E.n)]
    s = shuffle_all(parts, E.alphabet)
    assert E.sigma(s) == geometric_sigma(E, s, residue_data(entry.name))
