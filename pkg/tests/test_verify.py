import pytest

from weiljet.errors import ExactRingRequired, UnknownSuite
from weiljet.verify import SUITES, run_suite

EXPECTED = {"chain-rule", "recursion", "conjugation", "limited-expansion", "ring-iso", "embedding",
            "locality", "cubic-functor", "sign-determination"}


def test_all_named_suites_exist():
    assert EXPECTED <= set(SUITES)


@pytest.mark.parametrize("name", sorted(SUITES))
@pytest.mark.parametrize("ring", ["rational", "zmod:5"])
def test_suites_pass(name, ring):
    report = run_suite(name, ring, trials=25, seed=11, max_order=3)
    assert report["failed"] == 0 and report["ok"], report["counterexample"]


@pytest.mark.parametrize("name", ["chain-rule", "conjugation", "limited-expansion", "cubic-functor", "locality"])
def test_float_suites_pass(name):
    assert run_suite(name, "real:1e-9", trials=25, seed=5)["ok"]


def test_reports_are_deterministic():
    a = run_suite("limited-expansion", "zmod:7", trials=30, seed=9)
    b = run_suite("limited-expansion", "zmod:7", trials=30, seed=9)
    c = run_suite("limited-expansion", "zmod:7", trials=30, seed=10)
    assert a == b
    assert a["seed"] != c["seed"]


def test_worker_pool_gives_identical_report():
    serial = run_suite("chain-rule", "rational", trials=16, seed=1)
    pooled = run_suite("chain-rule", "rational", trials=16, seed=1, workers=2)
    assert serial == pooled


def test_errors():
    with pytest.raises(UnknownSuite):
        run_suite("nope")
    with pytest.raises(ExactRingRequired):
        run_suite("embedding", "real:1e-9", trials=2)
    with pytest.raises(ValueError):
        run_suite("recursion", max_order=0)


def test_failure_is_reported_with_inputs(monkeypatch):
    from weiljet import cubic
    monkeypatch.setitem(cubic.SIGNS, 2, -1)
    report = run_suite("sign-determination", "rational", trials=5, seed=0)
    assert not report["ok"] and report["failed"] > 0
    example = report["counterexample"]
    assert "order 2" in example["detail"] and "f" in example["inputs"]
