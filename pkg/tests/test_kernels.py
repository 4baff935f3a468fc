"""Both kernel backends compute the same thing; the enumerator matches brute force."""
import importlib
from itertools import product

import pytest
from hypothesis import given, strategies as st

from ghilb import _kernels_py as py
from ghilb import kernels

try:
    cy = importlib.import_module("ghilb._kernels")
except ImportError:  # extension not built
    cy = None

needs_cython = pytest.mark.skipif(cy is None, reason="compiled kernels not built")

exps = st.tuples(st.integers(0, 3), st.integers(0, 3))
poly_terms = st.dictionaries(exps, st.integers(-5, 5).filter(bool), max_size=5)


def sym_terms(n):
    key = st.lists(exps, min_size=n, max_size=n).map(lambda k: tuple(sorted(k, key=lambda e: (sum(e), e))))
    return st.dictionaries(key, st.integers(-4, 4).filter(bool), max_size=4)


def brute_margins(qs, margins):
    n = sum(margins[0])
    index = list(product(*[range(q) for q in qs]))
    out = []
    for b in product(range(n + 1), repeat=len(index)):
        if sum(b) != n:
            continue
        ok = True
        for r, q in enumerate(qs):
            for s in range(q):
                if sum(v for v, I in zip(b, index) if I[r] == s) != margins[r][s]:
                    ok = False
        if ok:
            out.append(b)
    return out


def test_backend_is_selected():
    assert kernels.BACKEND in ("cython", "python")


@pytest.mark.parametrize(
    "qs,margins",
    [
        ((2, 2), ((1, 1), (1, 1))),
        ((3,), ((1, 0, 2),)),
        ((2, 3), ((2, 1), (1, 1, 1))),
        ((2, 2, 2), ((1, 1), (2, 0), (0, 2))),
        ((1, 2), ((3,), (1, 2))),
    ],
)
def test_margin_enumeration_brute_force(qs, margins):
    expected = sorted(brute_margins(qs, margins))
    assert sorted(py.margin_tensors(qs, margins)) == expected
    if cy is not None:
        assert list(cy.margin_tensors(qs, margins)) == list(py.margin_tensors(qs, margins))


def test_multiset_permutations_counts():
    assert len(py.multiset_permutations((0, 0, 1))) == 3
    assert len(py.multiset_permutations((0, 1, 2))) == 6
    assert py.multiset_permutations((0, 0)) == [(0, 0)]


@needs_cython
@given(poly_terms, poly_terms)
def test_poly_mul_backends_agree(a, b):
    assert cy.poly_mul_terms(a, b) == py.poly_mul_terms(a, b)


@needs_cython
@given(st.integers(1, 3).flatmap(lambda n: st.tuples(sym_terms(n), sym_terms(n))))
def test_tensor_mul_backends_agree(uv):
    u, v = uv
    assert cy.tensor_mul_terms(u, v) == py.tensor_mul_terms(u, v)


@needs_cython
@given(sym_terms(2), sym_terms(1))
def test_shuffle_backends_agree(u, v):
    assert cy.shuffle_orbit_terms(u, v) == py.shuffle_orbit_terms(u, v)


@needs_cython
@given(st.lists(st.integers(0, 2), min_size=1, max_size=5).map(lambda r: tuple(sorted(r))))
def test_permutation_backends_agree(ranks):
    assert list(map(tuple, cy.multiset_permutations(ranks))) == list(map(tuple, py.multiset_permutations(ranks)))


def test_pure_python_fallback_same_report():
    import os
    import subprocess
    import sys

    cmd = [sys.executable, "-m", "ghilb.cli", "verify", "prop1.7", "--seed", "5", "--trials", "15"]
    env = dict(os.environ, GHILB_PURE_PYTHON="1")
    pure = subprocess.run(cmd, capture_output=True, env=env, check=True).stdout
    env.pop("GHILB_PURE_PYTHON")
    default = subprocess.run(cmd, capture_output=True, env=env, check=True).stdout
    assert pure == default
    probe = [sys.executable, "-c", "import ghilb.kernels as k; print(k.BACKEND)"]
    out = subprocess.run(probe, capture_output=True, text=True, env=dict(os.environ, GHILB_PURE_PYTHON="1"), check=True)
    assert out.stdout.strip() == "python"
