import json
import time

import pytest

from marked_shapes import lemmas as L
from marked_shapes.report import Budget, UnknownLemma


def test_registry_covers_every_criterion():
    assert {e.criterion for e in L.REGISTRY.values()} == set(range(1, 15))
    assert {e.id for e in L.REGISTRY.values() if e.known_failure} == {"Omega-complicial", "H-claim"}


def test_lookup_ignores_case_and_separators():
    assert L.lookup("face_preserve_order").id == "face-preserve-order"
    assert L.lookup("REZK_PUSHOUT").id == "Rezk-pushout-complicial"
    with pytest.raises(UnknownLemma):
        L.lookup("no-such-lemma")


def test_face_preserve_order_small():
    r = L.verify("face_preserve_order", n=3)
    assert r.passed and r.cases > 0


def test_omega_linearization_at_four():
    r = L.verify("omega-linearization", n=4)
    assert r.passed and r.cases > 0


def test_rezk_pushout():
    assert L.verify("rezk_pushout").passed


def test_budget_is_enforced():
    with pytest.raises(Budget):
        L.verify("N-bijection", n=5, budget_cells=10)


def test_report_serializes():
    data = json.loads(L.verify("N-bijection", n=3).dumps())
    assert {"lemma", "params", "cases", "failures", "millis"} <= set(data)
    assert data["params"] == {"n": 3} and data["passed"]


def test_known_failures_carry_counterexamples():
    h = L.verify("H-claim", n=2)
    assert not h.passed and {"n": 2, "simplex": "+−1", "image": "+1"} in h.failures
    om = L.verify("Omega-complicial", n=3)
    assert not om.passed
    assert any(f["Omega"] == "132" and f["unmarked faces"] == ["121"] for f in om.failures)
    assert L.verify("Omega-complicial-dagger", n=3).passed


def test_verify_is_deterministic():
    a, b = L.verify("disordered-face", n=3), L.verify("disordered-face", n=3)
    assert (a.cases, a.failures) == (b.cases, b.failures)


def test_parallel_suite_matches_serial():
    only = ["worked-examples", "N-bijection", "Q_triv", "H-claim"]
    serial = L.run_suite("quick", only=only, threads=1)
    par = L.run_suite("quick", only=only, threads=2)
    assert [r.lemma for r in par] == only
    assert [(r.cases, r.failure_count) for r in serial] == [(r.cases, r.failure_count) for r in par]


def test_thread_cap_reads_environment(monkeypatch):
    monkeypatch.setenv("MARKED_SHAPES_THREADS", "3")
    assert L.thread_cap() == 3
    monkeypatch.setenv("MARKED_SHAPES_THREADS", "bogus")
    assert L.thread_cap() == 1


def test_quick_profile_runs_everything_fast():
    start = time.perf_counter()
    reports = L.run_suite("quick")
    assert time.perf_counter() - start < 60
    assert [r.lemma for r in reports] == list(L.REGISTRY)
    assert {r.lemma for r in reports if not r.passed} <= {"Omega-complicial", "H-claim"}
