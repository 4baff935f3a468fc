import pytest

from ghilb import verify
from ghilb.errors import InputError
from ghilb.verify import SUITES, Job, report_json, run_verify

QUICK = {"thm3.6": 9, "prop2.7": 5, "lemma1.6": 6}


@pytest.mark.parametrize("suite", sorted(SUITES))
def test_every_suite_passes_small(suite):
    rep = run_verify(Job(suite, seed=7, trials=QUICK.get(suite, 4)))
    assert rep["status"] == "pass", [c for c in rep["cases"] if not c["passed"]]


def test_report_deterministic_and_order_independent():
    a = report_json(run_verify(Job("prop4.4", seed=11, trials=12)))
    b = report_json(run_verify(Job("prop4.4", seed=11, trials=12)))
    c = report_json(run_verify(Job("prop4.4", seed=11, trials=12, jobs=3)))
    assert a == b == c


def test_seed_changes_instances():
    a = verify.rng_for(1, "prop4.4", 0).random()
    b = verify.rng_for(2, "prop4.4", 0).random()
    assert a != b


def test_failure_is_serialized(monkeypatch):
    def broken(job, rng):
        return False, {"n": 1}, {"x": ["t"]}

    monkeypatch.setitem(SUITES, "prop4.4", broken)
    rep = run_verify(Job("prop4.4", trials=2))
    assert rep["status"] == "fail"
    assert rep["cases"][0]["instance"] == {"x": ["t"]}


def test_lemma_product_n1_edge():
    rep = run_verify(Job("lemma-product", seed=0, trials=5, n=1))
    assert rep["status"] == "pass"


def test_job_bounds():
    with pytest.raises(InputError, match="exceeds configured bounds"):
        run_verify(Job("prop4.4", n_max=9))
    with pytest.raises(InputError):
        run_verify(Job("prop4.4", seed=-1))
