from fractions import Fraction

import pytest
from hypothesis import given, settings

from fairsum.data import GenericError
from fairsum.fairness import (
    kalai_smorodinski,
    ks_ratios,
    maximin,
    mutually_proportional,
    nash_max,
    pf_candidates,
    pf_holds,
    proportional_fair,
    report_to_dict,
    representative,
    smallest_total,
    solve,
)
from fairsum.families import gen_family
from fairsum.frontier import pareto_frontier
from fairsum.instance import separate
from strategies import instances, utility_vectors


def test_six_solutions(six_solutions):
    report = solve(six_solutions)
    assert report.zstar == 400
    assert report.optimum == (400, 0)
    assert report.bests == (400, 388)
    assert report.mm == (200, 200)
    assert report.ks == (202, 196)
    assert report.pf == (200, 200)
    assert report.nash_product == 40000


def test_three_solutions(three_solutions):
    report = solve(three_solutions)
    assert report.bests == (100, 44)
    assert report.mm == (52, 44)
    assert report.ks == (75, 23)
    assert report.pf == (52, 44)
    assert report.zstar == 100


def test_two_solutions_no_pf(two_solutions):
    report = solve(two_solutions)
    assert report.mm == (1, 2)
    assert not report.pf_exists
    assert report.nash_set == ((1, 2),)


def test_shared_large_alpha(shared_large_alpha):
    report = solve(shared_large_alpha)
    assert report.mm_set == ((26, 26),)
    assert report.zstar == 100
    assert report.pf is None


def test_shared_odd_blocks(shared_odd_blocks):
    report = solve(shared_odd_blocks)
    assert report.mm == (34, 34)
    assert report.optimum == (99, 0)
    assert set(report.nash_set) == {(33, 66), (66, 33)}
    assert report.pf is None


def test_three_agents_mm_beats_pf():
    report = solve(gen_family("k3-mm-beats-pf", {"D": 1000}))
    assert report.frontier.utility_set() == {
        (0, 515, 283),
        (206, 503, 283),
        (206, 515, 271),
        (409, 0, 554),
        (409, 515, 0),
    }
    assert report.mm_set == ((206, 503, 283), (206, 515, 271))
    assert report.mm == (206, 515, 271)
    assert report.nash_set == ((206, 503, 283),)
    assert report.nash_product == 29323894
    assert report.pf is None


def test_three_agents_pf_below_mm():
    report = solve(gen_family("k3-pf-below-mm", {"D": 125}))
    assert report.frontier.utility_set() == {
        (2, 24, 82),
        (20, 24, 80),
        (22, 21, 82),
        (22, 24, 2),
    }
    assert report.mm == (22, 21, 82)
    assert report.pf == (20, 24, 80)
    assert report.nash_product == 38400
    assert sum(report.pf) < sum(report.mm)


def test_pf_boundary_is_inclusive():
    # 22/20 + 21/24 + 82/80 == 3
    assert pf_holds((20, 24, 80), [(22, 21, 82)])
    assert not pf_holds((20, 24, 80), [(22, 21, 83)])


def test_pf_holds_needs_positive_candidate():
    assert not pf_holds((0, 5), [(0, 5)])


def test_representatives():
    vectors = [(3, 5), (5, 3), (4, 3)]
    assert representative(vectors) == (5, 3)
    assert smallest_total(vectors) == (4, 3)


def test_ks_zero_best():
    assert ks_ratios((0, 5), (0, 10)) == [Fraction(1), Fraction(1, 2)]


def test_ks_all_bests_zero():
    inst = separate(10, [0], [0])
    frontier = pareto_frontier(inst)
    with pytest.raises(GenericError) as e:
        kalai_smorodinski(frontier, (0, 0))
    assert e.value.code == 500
    report = solve(inst)
    assert report.ks_set == report.mm_set == ((0, 0),)


def test_ks_wrong_bests(six_solutions):
    with pytest.raises(GenericError) as e:
        kalai_smorodinski(pareto_frontier(six_solutions), (400,))
    assert e.value.code == 990


def test_exhaustive_matches_nash_search(six_solutions, two_solutions):
    for inst in (six_solutions, two_solutions):
        frontier = pareto_frontier(inst)
        assert proportional_fair(frontier, exhaustive=True) == proportional_fair(frontier)


def test_report_dict(six_solutions):
    payload = report_to_dict(solve(six_solutions))
    assert payload["kind"] == "separate"
    assert payload["k"] == 2
    assert payload["system_optimum"] == {"utilities": [400, 0], "zstar": 400}
    assert payload["mm"]["representative"] == [200, 200]
    assert payload["ks"]["set"] == [[202, 196]]
    assert payload["nash"]["product"] == "40000"
    assert payload["pf"] == {"exists": True, "utilities": [200, 200]}
    assert len(payload["frontier"]) == 6


@given(utility_vectors(2), utility_vectors(2))
def test_mutually_proportional_only_when_equal(x, y):
    assert mutually_proportional(x, y) == (x == y)


@given(utility_vectors(3, 30), utility_vectors(3, 30))
def test_mutually_proportional_three_agents(x, y):
    assert mutually_proportional(x, y) == (x == y)


def test_mutually_proportional_length_mismatch():
    with pytest.raises(GenericError):
        mutually_proportional((1, 2), (1, 2, 3))


@given(instances())
@settings(max_examples=100, deadline=None)
def test_pf_is_unique_nash_maximizer(inst):
    frontier = pareto_frontier(inst)
    found = pf_candidates(frontier)
    assert len(found) <= 1
    pf = proportional_fair(frontier)
    if found:
        assert pf == found[0]
        assert pf in nash_max(frontier)
    else:
        assert pf is None


@given(instances())
@settings(max_examples=100, deadline=None)
def test_pf_total_at_least_mm(inst):
    report = solve(inst)
    if report.pf_exists:
        assert all(sum(v) <= sum(report.pf) for v in report.mm_set)
    assert min(report.mm) == max(min(v) for v in maximin(report.frontier))
