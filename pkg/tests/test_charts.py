from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ghilb.algebra import FiniteAlgebra
from ghilb.charts import (
    ChartAlgebra,
    PointConfig,
    chart_specialize,
    etale_family_coeffs,
    eval_point,
    kernel_check,
    pluecker_coords,
    powersum_generation_check,
    separating_tuple,
    split_algebra,
    transition_check,
    universal_coeff,
)
from ghilb.divided import delta, gamma, internal_mul
from ghilb.errors import (
    DegenerateChart,
    DegreeMismatch,
    DiagonalConfig,
    IndexOutOfRange,
    InfeasibleSize,
    NotABasis,
    NotEtale,
    NotSufficientlyBig,
    OutsideChart,
)
from ghilb.norm import AlgebraMap
from ghilb.rings import GF, QQ, ZZ, PolyRing

from .strategies import tuples_of

T = PolyRing(QQ, ["t"])
t = T.gen(0)
UV = PolyRing(QQ, ["u", "v"])
u, v = UV.gens
X = (T.one, t)


def pts(*coords):
    return PointConfig(list(coords), QQ)


def test_eval_point_examples():
    assert eval_point(gamma(2, t), pts(2, 3)) == 6
    assert eval_point(delta([T.one, t], [T.one, t]), pts(0, 1)) == 1
    assert eval_point(delta([T.one, t], [t, t * t]), pts(4, 4)) == 0
    with pytest.raises(DegreeMismatch):
        eval_point(gamma(3, t), pts(0, 1))


def test_separating_tuple_examples():
    assert separating_tuple(pts(0, 1), T) == [T.parse("1 - t"), t]
    assert separating_tuple(PointConfig([(0, 0), (1, 1)], QQ), UV) == [UV.parse("1 - u"), u]
    assert separating_tuple(PointConfig([(5, 7)], QQ), UV) == [UV.one]
    with pytest.raises(DiagonalConfig, match="diagonal"):
        separating_tuple(pts(1, 1), T)


@pytest.mark.parametrize("a,b", [(0, 1), (2, 5), (Fraction(1, 2), -3)])
def test_universal_coeff_values(a, b):
    P = pts(a, b)
    assert universal_coeff(X, 2, 2, 1).eval(P) == -a * b
    assert universal_coeff(X, 2, 2, 2).eval(P) == a + b
    A = chart_specialize(ChartAlgebra(X), P)
    assert A.c[1][1] == [-a * b, a + b]
    assert A.discriminant() == (b - a) ** 2


def test_universal_coeff_trivial_and_bounds():
    assert universal_coeff(X, 1, 2, 2) == universal_coeff(X, 2, 1, 2)
    one = universal_coeff(X, 1, 2, 2)
    assert one.num == delta(list(X), list(X))
    with pytest.raises(IndexOutOfRange):
        universal_coeff(X, 3, 1, 1)


def test_bracket_examples():
    C = ChartAlgebra(X)
    b = C.bracket(t)
    assert [f.eval(pts(3, 8)) for f in b] == [0, 1]
    assert C.bracket(t * t) == [universal_coeff(X, 2, 2, 1), universal_coeff(X, 2, 2, 2)]
    lhs = C.bracket(t + t * t)
    rhs = [p + q for p, q in zip(C.bracket(t), C.bracket(t * t))]
    assert lhs == rhs


def test_cayley_hamilton_on_two_points():
    C = ChartAlgebra(X)
    a, b = 3, 7
    P = pts(a, b)
    vals = [C.bracket_value(T.parse(f"t^2 - {a + b}*t + {a * b}"), P)]
    assert vals == [[0, 0]]


def test_degenerate_and_outside():
    with pytest.raises(DegenerateChart):
        ChartAlgebra((t, t))
    with pytest.raises(OutsideChart, match="outside chart"):
        chart_specialize(ChartAlgebra((t, t * t)), pts(0, 1))


def test_etale_family_coeff_examples():
    E, phi = split_algebra(pts(0, 1), T)
    b = etale_family_coeffs(E, phi, X)
    assert b[1][1] == [0, 1]
    idem = etale_family_coeffs(E, phi, separating_tuple(pts(0, 1), T))
    assert idem == [[[1, 0], [0, 0]], [[0, 0], [0, 1]]]
    pm1 = FiniteAlgebra.monogenic(QQ, [-1, 0])
    assert etale_family_coeffs(pm1, AlgebraMap(T, pm1, [[0, 1]]), X)[1][1] == [1, 0]
    dual = FiniteAlgebra.monogenic(QQ, [0, 0])
    with pytest.raises(NotEtale):
        etale_family_coeffs(dual, AlgebraMap(T, dual, [[0, 1]]), X)
    with pytest.raises(NotABasis):
        etale_family_coeffs(E, phi, (t, t * t))


def test_transition_examples():
    assert transition_check(X, (t, T.one), pts(1, 2))
    assert transition_check(X, (t, t * t), pts(1, 2))
    with pytest.raises(OutsideChart):
        transition_check(X, (t, t * t), pts(0, 1))


def test_kernel_check_examples():
    assert kernel_check(ChartAlgebra(X), pts(3, 7))
    assert kernel_check(ChartAlgebra((UV.one, u, v)), PointConfig([(0, 0), (1, 0), (0, 1)], QQ))


def test_pluecker_examples():
    E, phi = split_algebra(pts(0, 1), T)
    assert pluecker_coords(E, phi, [T.one, t, t * t]) == [1, 1, 0]
    dual = FiniteAlgebra.monogenic(QQ, [0, 0])
    assert pluecker_coords(dual, AlgebraMap(T, dual, [[0, 1]]), [T.one, t, t * t]) == [1, 0, 0]
    assert len(pluecker_coords(E, phi, [T.one, t])) == 1
    with pytest.raises(NotSufficientlyBig):
        pluecker_coords(E, phi, [T.one, T.one + T.one])


def test_powersum_examples():
    assert powersum_generation_check(1, 2, 3, QQ)
    assert powersum_generation_check(2, 1, 4, QQ)
    assert powersum_generation_check(2, 2, 3, QQ)
    assert not powersum_generation_check(2, 1, 2, GF(2))
    with pytest.raises(InfeasibleSize, match="exceeds configured bounds"):
        powersum_generation_check(4, 1, 2, QQ)


points_1d = st.lists(st.integers(-4, 4), min_size=2, max_size=3, unique=True)


@given(points_1d, tuples_of(T, 3, max_terms=2), tuples_of(T, 3, max_terms=2))
def test_eval_point_homomorphism(p, a, b):
    n = len(p)
    P = pts(*p)
    d1, d2 = delta(a[:n], b[:n]), delta(b[:n], b[:n])
    assert eval_point(internal_mul(d1, d2), P) == eval_point(d1, P) * eval_point(d2, P)


@given(points_1d)
def test_specialization_is_function_algebra(p):
    P = pts(*p)
    n = len(p)
    x = tuple(t**k for k in range(n))
    A = chart_specialize(ChartAlgebra(x), P)
    E, phi = split_algebra(P, T)
    assert etale_family_coeffs(E, phi, x) == A.c
    assert A.discriminant() != 0


@given(st.lists(st.integers(-3, 3), min_size=1, max_size=2), tuples_of(T, 3, max_terms=2))
def test_delta_vanishes_on_diagonal(p, y):
    P = pts(*(p + [p[0]]))
    n = P.n
    xs = y[:n]
    assert eval_point(delta(xs, xs), P) == 0


def test_zz_charts_over_fraction_field():
    Z = PolyRing(ZZ, ["t"])
    z = Z.gen(0)
    P = PointConfig([1, 3], ZZ)
    A = chart_specialize(ChartAlgebra((Z.one, z)), P)
    assert A.c[1][1] == [-3, 4]
    x = separating_tuple(P, Z)
    assert eval_point(delta(x, x), P) != 0
