"""Acceptance gate: one test per criterion, each timed against its budget.

A pass/fail line per criterion is printed straight to the terminal (also
without ``-s``).
"""
import subprocess
import sys
import time

import pytest

from ghilb.catalog import algebra_catalog, extended_catalog
from ghilb.charts import powersum_generation_check
from ghilb.rings import GF, QQ, PolyRing
from ghilb.verify import Job, basis_delta, run_verify

SEED = 20240611


def _report(capsys, number, title, ok, elapsed, budget, detail=""):
    status = "PASS" if ok and elapsed < budget else "FAIL"
    line = f"[acceptance {number}] {status}  {title}  ({elapsed:.1f}s / {budget}s){'  ' + detail if detail else ''}"
    with capsys.disabled():
        print("\n" + line)
    return status == "PASS"


def _run(suite, trials, **kw):
    rep = run_verify(Job(suite, seed=SEED, trials=trials, **kw))
    bad = [c for c in rep["cases"] if not c["passed"]]
    return rep, bad


def test_criterion_1_delta_two_paths(capsys):
    t0 = time.perf_counter()
    total, bad = 0, []
    for ring in ("QQ", "GF(5)"):
        rep, b = _run("prop4.4", 100, ring=ring, n_max=3, r_max=2, degree_max=3)
        total += rep["summary"]["total"]
        bad += b
    elapsed = time.perf_counter() - t0
    assert _report(capsys, 1, "delta: det*-path == nu(x)nu(y)-path", not bad and total == 200, elapsed, 60,
                   f"{total} instances"), bad[:3]


def test_criterion_2_margin_product(capsys):
    t0 = time.perf_counter()
    rep, bad = _run("prop1.7", 100, n_max=3)
    elapsed = time.perf_counter() - t0
    assert _report(capsys, 2, "margin-system product == iterated internal product", not bad, elapsed, 120,
                   f"{rep['summary']['total']} instances"), bad[:3]


@pytest.mark.parametrize("suite", ["lemma2.2", "lemma2.3", "lemma-product", "lemma-gammafn"])
def test_criterion_3_lemmas(capsys, suite):
    t0 = time.perf_counter()
    rep, bad = _run(suite, 100, n_max=3)
    elapsed = time.perf_counter() - t0
    assert _report(capsys, 3, f"suite {suite}", not bad, elapsed, 120, f"{rep['summary']['total']} instances"), bad[:3]


def test_criterion_4_charpoly_and_discriminants(capsys):
    t0 = time.perf_counter()
    s = PolyRing(QQ, ["s"]).gen(0)
    expected = {"Q[t]/(t^2)": 0, "Q[t]/(t^2-1)": 4, "Q[t]/(t^3)": 0, "QxQ": 1, "Q[s][t]/(t^2-s)": 4 * s}
    values_ok = True
    for entry in algebra_catalog():
        E = entry.algebra
        sig = E.sigma(basis_delta(E))
        disc = E.discriminant()  # trace-form determinant, independent of sigma
        want = E.base.coerce(expected[entry.name])
        values_ok &= sig == disc == want
    _, bad_charpoly = _run("prop1.11", len(extended_catalog()) * 4)
    _, bad_disc = _run("prop2.7", len(algebra_catalog()))
    elapsed = time.perf_counter() - t0
    ok = values_ok and not bad_charpoly and not bad_disc
    assert _report(capsys, 4, "charpoly coefficients == sigma values; sigma(delta) == discriminant (0, 4, 0, 1, 4s)",
                   ok, elapsed, 10), (bad_charpoly[:2], bad_disc[:2])


def test_criterion_5_discriminant_ideal(capsys):
    t0 = time.perf_counter()
    rep, bad = _run("thm3.6", len(extended_catalog()))
    elapsed = time.perf_counter() - t0
    assert _report(capsys, 5, "norm image of I_V == discriminant ideal (catalog over Q and Q[s])", not bad,
                   elapsed, 30, f"{rep['summary']['total']} instances"), bad[:3]


def test_criterion_6_good_component_charts(capsys):
    t0 = time.perf_counter()
    rep, bad = _run("good-component", 100, n_max=3, r_max=2)
    elapsed = time.perf_counter() - t0
    assert _report(capsys, 6, "chart specialization valid, = etale family, kernel = I(P), transitions agree",
                   not bad, elapsed, 120, f"{rep['summary']['total']} configurations"), bad[:3]


def test_criterion_7_diagonal(capsys):
    t0 = time.perf_counter()
    rep, bad = _run("cor-support", 100, n_max=3, r_max=2)
    kinds = [c["params"]["kind"] for c in rep["cases"]]
    elapsed = time.perf_counter() - t0
    ok = not bad and kinds.count("diagonal") == 50 and kinds.count("distinct") == 50
    assert _report(capsys, 7, "delta generators vanish on diagonals; separating tuples certify distinct points",
                   ok, elapsed, 30), bad[:3]


def test_criterion_8_power_sums(capsys):
    t0 = time.perf_counter()
    a = powersum_generation_check(2, 1, 4, QQ)
    b = powersum_generation_check(2, 2, 3, QQ)
    c = powersum_generation_check(2, 1, 2, GF(2))
    elapsed = time.perf_counter() - t0
    assert _report(capsys, 8, "power sums generate TS^n over Q; fail over GF(2)", a and b and not c, elapsed, 60,
                   f"(2,1,4,QQ)={a} (2,2,3,QQ)={b} (2,1,2,GF(2))={c}")


def test_criterion_9_determinism(capsys):
    t0 = time.perf_counter()
    cmd = [sys.executable, "-m", "ghilb.cli", "verify", "prop6.3", "--seed", "99", "--trials", "20"]
    runs = [subprocess.run(cmd, capture_output=True, check=False) for _ in range(2)]
    elapsed = time.perf_counter() - t0
    ok = runs[0].returncode == 0 and runs[0].stdout == runs[1].stdout and len(runs[0].stdout) > 0
    assert _report(capsys, 9, "ghilb verify reports are byte-identical across runs", ok, elapsed, 120)
