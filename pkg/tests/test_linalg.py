import pytest
from hypothesis import given, strategies as st

from ghilb.errors import NotInvertible, Undecided
from ghilb.linalg import det, det_bareiss, det_minors, inverse, is_pid, matmul, pid_gcd, rank, solve
from ghilb.rings import GF, QQ, ZZ, PolyRing

from .strategies import polys

S = PolyRing(QQ, ["s"])


def matrices(n, lo=-5, hi=5):
    return st.lists(st.lists(st.integers(lo, hi), min_size=n, max_size=n), min_size=n, max_size=n)


@given(st.integers(1, 6).flatmap(matrices))
def test_minors_agree_with_bareiss(M):
    assert det_minors(M, ZZ) == det_bareiss(M, ZZ)


@given(st.lists(st.lists(polys(S, max_deg=2), min_size=3, max_size=3), min_size=3, max_size=3))
def test_polynomial_determinants_agree(M):
    assert det_minors(M, S) == det_bareiss(M, S)


@given(matrices(3), matrices(3))
def test_det_multiplicative(A, B):
    assert det(matmul(A, B, ZZ), ZZ) == det(A, ZZ) * det(B, ZZ)


def test_rank_and_solve():
    assert rank([[1, 2], [2, 4]], QQ) == 1
    assert solve([[2, 0], [0, 4]], [1, 1], QQ) == [pytest.approx(0.5), pytest.approx(0.25)]
    with pytest.raises(NotInvertible):
        inverse([[1, 2], [2, 4]], QQ)
    assert rank([[1, 1], [1, 1]], GF(2)) == 1


def test_pid_gcd():
    s = S.gen(0)
    assert pid_gcd([4 * s, 6 * s * s], S) == s
    assert pid_gcd([4, 6], ZZ) == 2
    assert pid_gcd([0, 0], QQ) == 0
    assert is_pid(S) and not is_pid(PolyRing(QQ, ["s", "u"]))
    with pytest.raises(Undecided):
        pid_gcd([1], PolyRing(QQ, ["s", "u"]))
