import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from batchcodes.bigraph import BiGraph
from batchcodes.code import code_from_graph
from batchcodes.scheduler import (Assignment, BudgetExceededError, InfeasibleScheduleError, Plan,
                                  RequestPattern, oracle_feasible, schedule, verify_assignment)

from conftest import complete_bipartite, constructed


def test_pattern_parse_and_expand():
    r = RequestPattern.parse("5:1, 0:2,7")
    assert r.counts == {0: 2, 5: 1, 7: 1}
    assert r.k == 4 and r.expanded() == [0, 0, 5, 7]
    assert RequestPattern([3, 1, 3]) == RequestPattern({1: 1, 3: 2})
    with pytest.raises(ValueError):
        RequestPattern({0: -1})
    with pytest.raises(ValueError):
        RequestPattern([9]).validate(8)


def test_zigzag_repeated_request():
    c = code_from_graph(constructed("zigzag(2,2)"))
    a = schedule(c, RequestPattern({0: 2}))
    assert a.plans[0] == Plan(0, (0,), None)
    second = a.plans[1]
    assert second.target == 0 and second.parity is not None
    assert not set(a.plans[0].buckets) & set(second.buckets)
    assert verify_assignment(c, RequestPattern({0: 2}), a)
    assert oracle_feasible(c, RequestPattern({0: 2})) is not None


def test_single_request_is_direct():
    c = code_from_graph(constructed("W(2)"))
    assert schedule(c, RequestPattern({4: 1})).plans == (Plan(4, (4,), None),)


def test_lazebnik_three_distinct():
    c = code_from_graph(constructed("lazebnik(3,1,1)"))
    req = RequestPattern({0: 1, 1: 1, 2: 1})
    a = schedule(c, req)
    assert len(a.plans) == 3 and verify_assignment(c, req, a)


def test_lazebnik_all_three_multisets_on_a_window():
    c = code_from_graph(constructed("lazebnik(3,1,1)"))
    for combo in itertools.combinations_with_replacement(range(12), 3):
        req = RequestPattern(combo)
        assert verify_assignment(c, req, schedule(c, req))


def test_example_graph_oracle(example_graph):
    c = code_from_graph(example_graph)
    req = RequestPattern([1, 2, 1])
    a = oracle_feasible(c, req)
    assert a is not None and verify_assignment(c, req, a)


def test_empty_pattern(example_graph):
    c = code_from_graph(example_graph)
    assert schedule(c, RequestPattern({})).plans == ()
    assert oracle_feasible(c, RequestPattern({})) == Assignment(())


def test_infeasible_on_four_cycle():
    c = code_from_graph(complete_bipartite(2, 2))
    req = RequestPattern({0: 1, 1: 2})
    with pytest.raises(InfeasibleScheduleError):
        schedule(c, req)
    assert oracle_feasible(c, req) is None


def test_budget():
    c = code_from_graph(complete_bipartite(3, 4))
    with pytest.raises(BudgetExceededError):
        oracle_feasible(c, RequestPattern({0: 3, 1: 3, 2: 3}), budget=5)


def test_verify_rejects_bad_assignments():
    c = code_from_graph(constructed("zigzag(2,2)"))
    req = RequestPattern({0: 2})
    good = schedule(c, req)
    assert verify_assignment(c, req, good)
    direct, rep = good.plans
    # sharing a bucket
    assert not verify_assignment(c, req, Assignment((direct, Plan(0, (0,), None))))
    # wrong parity bucket
    other = next(g for g in c.repair_groups(1))
    wrong = Plan(0, tuple(sorted(set(rep.buckets) - {rep.parity} | {other.parity_bucket})),
                 other.parity_bucket)
    assert not verify_assignment(c, req, Assignment((direct, wrong)))
    # wrong multiset
    assert not verify_assignment(c, RequestPattern({0: 1}), good)
    # direct read of a parity for a different symbol
    assert not verify_assignment(c, RequestPattern({0: 1}), Assignment((Plan(0, (1,), None),)))


def test_deterministic():
    c = code_from_graph(constructed("W(3)"))
    req = RequestPattern.parse("0:2,5:1,7:1")
    assert schedule(c, req).to_json() == schedule(c, req).to_json()


def test_assignment_round_trip():
    c = code_from_graph(constructed("W(3)"))
    a = schedule(c, RequestPattern.parse("0:2,5:1,7:1"))
    assert Assignment.from_dict(a.to_dict()) == a


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 2 ** 32 - 1))
def test_greedy_success_implies_oracle_success(seed):
    rng = random.Random(seed)
    n1, n2 = rng.randint(1, 7), rng.randint(1, 7)
    g = BiGraph(n1, n2, [sorted(rng.sample(range(n2), rng.randint(0, n2))) for _ in range(n1)])
    c = code_from_graph(g)
    req = RequestPattern([rng.randrange(n1) for _ in range(rng.randint(0, 4))])
    oracle = oracle_feasible(c, req)
    if oracle is not None:
        assert verify_assignment(c, req, oracle)
    try:
        a = schedule(c, req)
    except InfeasibleScheduleError:
        return
    assert verify_assignment(c, req, a)
    assert oracle is not None
