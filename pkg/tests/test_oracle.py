import pytest
from hypothesis import given, settings

from fairsum import config
from fairsum.data import GenericError
from fairsum.families import gen_family
from fairsum.instance import Kind, separate, shared
from fairsum.oracle import (
    OracleReport,
    Verdict,
    check_random,
    check_theorems,
    enumerate_all,
    oracle_frontier,
    pareto_filter,
    report_to_dict,
    state_count,
)
from strategies import instances


def test_enumerate_shared_single_item():
    assert set(enumerate_all(shared(10, [5]))) == {(0, 0), (5, 0), (0, 5)}


def test_enumerate_separate(two_solutions):
    found = enumerate_all(two_solutions)
    assert set(found) == {(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2), (100, 0)}
    for vector, allocation in found.items():
        assert allocation.feasible(two_solutions)
        assert allocation.utilities(two_solutions) == vector


def test_enumerate_three_agents_shared():
    inst = shared(4, [1, 3], agent_count=3)
    found = enumerate_all(inst)
    assert (1, 3, 0) in found and (0, 0, 3) in found
    assert (3, 3, 0) not in found
    for vector, allocation in found.items():
        assert allocation.feasible(inst)
        assert allocation.utilities(inst) == vector


def test_state_count():
    assert state_count(separate(10, [1, 1], [1])) == 6
    assert state_count(shared(10, [1, 1, 1])) == 27
    assert state_count(shared(10, [1, 1], agent_count=3)) == 16


def test_size_guard():
    config.options["oracle_size_guard"] = 10
    with pytest.raises(GenericError) as e:
        enumerate_all(shared(10, [1, 1, 1]))
    assert e.value.code == 300
    assert enumerate_all(separate(10, [1, 1], [1]))


def test_agent_count_mismatch(two_solutions):
    with pytest.raises(GenericError) as e:
        enumerate_all(two_solutions, k=3)
    assert e.value.code == 990


def test_pareto_filter():
    assert pareto_filter([(1, 2), (2, 1), (1, 1), (2, 1), (0, 2)]) == [(1, 2), (2, 1)]
    assert pareto_filter([(1, 1, 1), (1, 1, 0), (0, 2, 0)]) == [(0, 2, 0), (1, 1, 1)]
    assert pareto_filter([]) == []


def test_oracle_frontier_fixtures(six_solutions, shared_odd_blocks):
    assert len(oracle_frontier(six_solutions)) == 6
    assert {(34, 34), (66, 33), (99, 0)} <= oracle_frontier(shared_odd_blocks).utility_set()


@pytest.mark.parametrize(
    "fixture",
    ["six_solutions", "three_solutions", "two_solutions", "shared_large_alpha", "shared_odd_blocks"],
)
def test_theorems_hold_on_fixtures(fixture, request):
    report = check_theorems(request.getfixturevalue(fixture))
    assert report.holds, report.failures()
    names = {verdict.name for verdict in report.verdicts}
    assert {"frontier_equivalence", "witness_soundness", "pf_unique", "packing_lemma"} <= names


def test_shared_pf_verdict():
    report = check_theorems(shared(10, [5, 5]))
    assert report.observations["pf_total"] == 10
    assert "shared_pf_system_optimal" in {verdict.name for verdict in report.verdicts}
    assert report.holds


def test_three_agents_mm_beats_pf():
    report = check_theorems(gen_family("k3-mm-beats-pf", {"D": 1000}))
    assert report.holds
    assert report.observations["mm_totals"] == [992]
    assert report.observations["pf_total"] is None
    assert report.observations["frontier_size"] == 5
    names = {verdict.name for verdict in report.verdicts}
    assert "frontier_equivalence" not in names


def test_three_agents_pf_below_mm():
    report = check_theorems(gen_family("k3-pf-below-mm", {"D": 125}))
    assert report.holds
    assert report.observations["pf_total"] == 124
    assert report.observations["mm_totals"] == [125]


def test_failures():
    inst = separate(10, [1], [1])
    report = OracleReport(
        inst, oracle_frontier(inst), (Verdict("a", True), Verdict("b", False, {})), {}
    )
    assert not report.holds
    assert [verdict.name for verdict in report.failures()] == ["b"]


def test_report_dict(three_solutions):
    payload = report_to_dict(check_theorems(three_solutions))
    assert payload["holds"] is True
    assert payload["instance"]["kind"] == "separate"
    assert [52, 44] in payload["frontier"]
    assert payload["observations"]["zstar"] == 100
    assert all(verdict["counterexample"] is None for verdict in payload["verdicts"])


@given(instances())
@settings(max_examples=100, deadline=None)
def test_theorems_hold(inst):
    report = check_theorems(inst)
    assert report.holds, report.failures()


@given(instances(agents=3, max_items=9, max_capacity=40))
@settings(max_examples=40, deadline=None)
def test_theorems_hold_three_agents(inst):
    report = check_theorems(inst)
    assert report.holds, report.failures()


@pytest.mark.parametrize("kind", list(Kind))
def test_check_random(kind):
    reports = check_random(12, kind=kind, c=40, seed=5, workers=1)
    assert len(reports) == 12
    assert all(report.holds for report in reports)
    labels = [report.instance.label for report in reports]
    assert labels == sorted(labels)


def test_check_random_three_agents():
    reports = check_random(4, kind=Kind.SHARED, k=3, n=5, c=30, workers=1)
    assert all(report.instance.agent_count == 3 for report in reports)
    assert all(report.holds for report in reports)


def test_check_random_count():
    with pytest.raises(GenericError) as e:
        check_random(0)
    assert e.value.code == 991


@pytest.mark.slow
@pytest.mark.parametrize("kind", list(Kind))
def test_check_random_thousand(kind):
    reports = check_random(1000, kind=kind, workers=None)
    failures = [report.instance.label for report in reports if not report.holds]
    assert not failures


@pytest.mark.slow
@pytest.mark.parametrize("kind", list(Kind))
def test_check_random_three_agents_many(kind):
    reports = check_random(500, kind=kind, k=3, c=40, workers=None)
    assert len(reports) == 500
    assert all(report.instance.agent_count == 3 for report in reports)
    failures = [report.instance.label for report in reports if not report.holds]
    assert not failures
