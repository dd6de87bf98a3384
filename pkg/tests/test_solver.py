import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from softcommittee import errors, solver
from softcommittee.axioms import deficits, dominates, is_jef, is_type_optimal
from softcommittee.generator import GenParams, random_instance
from softcommittee.model import type_distribution, validate_instance
from softcommittee.oracle import oracle_jef, oracle_type_optimal
from softcommittee.solver import (
    DominanceSwap,
    EnvySwap,
    GreedyAdd,
    TieBreakPolicy,
    TopUpAdd,
    solve,
    stage1_greedy_fill,
    stage2_dominance_swaps,
    stage3_envy_swaps,
)


def envy_breaks_optimality():
    """Four candidates where an envy swap re-opens a dominating swap.

    From {a, cp} (type optimal), c envies cp; after the swap {a, c} can trade
    a for b and cover type u.
    """
    return validate_instance(
        candidates=["c", "a", "cp", "b"],
        priority_tiers=[["c"], ["a"], ["cp"], ["b"]],
        types=["s", "r", "u"],
        membership=[[1, 1, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]],
        lower_quotas=[1, 1, 1],
        committee_size=2,
    )


def test_stage1_example(example):
    w, events = stage1_greedy_fill(example)
    assert w == {"c2", "c3"}
    assert events == [GreedyAdd("t2", "c2"), GreedyAdd("t3", "c3")]


def test_stage1_largest_deficit_policy(example):
    w, events = stage1_greedy_fill(example, TieBreakPolicy("largest-deficit"))
    assert w == {"c2", "c3"}
    assert events == [GreedyAdd("t3", "c3"), GreedyAdd("t2", "c2")]


def test_unknown_policy():
    with pytest.raises(ValueError):
        TieBreakPolicy("random")


def test_stage1_zero_quotas_is_top_k(example_zero):
    w, events = stage1_greedy_fill(example_zero)
    assert w == {"c1", "c2"}
    assert events == [TopUpAdd("c1"), TopUpAdd("c2")]


def test_stage1_skips_type_without_candidates():
    inst = validate_instance(["a", "b", "c"], [["a"], ["b"], ["c"]], ["x", "y"],
                             [[0, 0], [0, 1], [0, 0]], [2, 1], 2)
    w, events = stage1_greedy_fill(inst)
    assert events == [GreedyAdd("y", "b"), TopUpAdd("a")]
    assert w == {"a", "b"}


def test_stage2_example(example):
    w, events = stage2_dominance_swaps(example, {"c2", "c3"})
    assert w == {"c3", "c4"}
    assert events == [DominanceSwap("c2", "c4", (0, 1, 1, 0), (0, 1, 2, 0))]
    w2, events = stage2_dominance_swaps(example, w)
    assert w2 == w and events == []
    with pytest.raises(errors.WrongCommitteeSizeError):
        stage2_dominance_swaps(example, {"c1"})


def test_stage3_example(example, example_zero):
    w, events = stage3_envy_swaps(example, {"c3", "c4"})
    assert w == {"c3", "c4"} and events == []
    w, events = stage3_envy_swaps(example_zero, {"c3", "c4"})
    assert w == {"c1", "c2"}
    assert events == [EnvySwap("c4", "c1"), EnvySwap("c3", "c2")]


def test_envy_swap_can_break_type_optimality():
    inst = envy_breaks_optimality()
    start = {"a", "cp"}
    assert is_type_optimal(inst, start) and oracle_type_optimal(inst, start)
    w, events = stage3_envy_swaps(inst, start)
    assert events == [EnvySwap("cp", "c")]
    assert w == {"a", "c"}
    assert is_jef(inst, w)
    assert not is_type_optimal(inst, w) and not oracle_type_optimal(inst, w)
    # deficits did not grow; the new committee simply has a better neighbour
    q = inst.lower_quotas
    assert deficits(type_distribution(inst, w), q) == deficits(type_distribution(inst, start), q)


def test_solve_repairs_when_envy_swaps_break_optimality(monkeypatch):
    inst = envy_breaks_optimality()
    monkeypatch.setattr(solver, "stage1_greedy_fill",
                        lambda instance, policy=None: (frozenset({"a", "cp"}),
                                                       [GreedyAdd("s", "a"), GreedyAdd("r", "cp")]))
    committee, trace, report = solver.solve(inst)
    assert report.ok
    assert committee == {"b", "c"}
    assert trace.counters["repair_rounds"] == 1
    assert trace.events[2:] == [EnvySwap("cp", "c"),
                                DominanceSwap("a", "b", (2, 1, 0), (1, 1, 1))]
    assert trace.replay() == committee


def test_solve_example(example):
    committee, trace, report = solve(example)
    assert committee == {"c3", "c4"}
    assert trace.events == [
        GreedyAdd("t2", "c2"),
        GreedyAdd("t3", "c3"),
        DominanceSwap("c2", "c4", (0, 1, 1, 0), (0, 1, 2, 0)),
    ]
    assert report.type_optimal and report.jef
    assert trace.replay() == committee
    assert trace.counters == {"greedy_adds": 2, "top_up_adds": 0, "dominance_swaps": 1,
                              "envy_swaps": 0, "repair_rounds": 0}


def test_solve_degenerate(example, example_zero):
    assert solve(example_zero).committee == {"c1", "c2"}
    full = validate_instance(example.candidates, example.priority_tiers, example.types,
                             example.membership, example.lower_quotas, 4)
    assert solve(full).committee == set(example.candidates)
    empty = validate_instance(example.candidates, example.priority_tiers, example.types,
                              example.membership, example.lower_quotas, 0)
    assert solve(empty).committee == frozenset()


def test_typeless_pool_still_selects_k():
    inst = random_instance(GenParams(m=8, n_types=3, k=4, density=0.0, seed=3))
    committee, _, report = solve(inst)
    assert len(committee) == 4 and report.ok
    assert committee == inst.top_k()


def _params(seed):
    return GenParams(m=(1, 10), n_types=(1, 4), k=(0, 10), density=0.2 + 0.2 * (seed % 3),
                     tightness=(0.3, 0.7, 1.0)[seed // 3 % 3], tie_prob=(0.0, 0.3)[seed % 2],
                     seed=seed)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**9), st.sampled_from(["lexicographic", "largest-deficit"]))
def test_solver_invariants(seed, rule):
    inst = random_instance(_params(seed))
    committee, trace, report = solve(inst, TieBreakPolicy(rule))
    assert len(committee) == inst.k
    assert report.ok
    assert oracle_type_optimal(inst, committee) and oracle_jef(inst, committee)
    assert trace.replay() == committee
    assert trace.counters["dominance_swaps"] <= sum(inst.lower_quotas)
    assert trace.counters["envy_swaps"] <= inst.k * inst.m

    stage = {GreedyAdd: 0, TopUpAdd: 1, DominanceSwap: 2, EnvySwap: 3}
    order = [stage[type(e)] for e in trace.events]
    assert order == sorted(order)  # no repair round happened on these instances

    q = inst.lower_quotas
    w: set[str] = set()
    for e in trace.events:
        if isinstance(e, (GreedyAdd, TopUpAdd)):
            w.add(e.candidate)
            continue
        before = type_distribution(inst, w)
        w = (w - {e.out}) | {e.incoming}
        after = type_distribution(inst, w)
        if isinstance(e, DominanceSwap):
            assert (e.before, e.after) == (before, after)
            assert dominates(after, before, q)
        else:
            assert inst.strict_prefers(e.incoming, e.out)
            assert all(a <= b for a, b in zip(deficits(after, q), deficits(before, q)))


def test_determinism():
    inst = random_instance(GenParams(m=30, n_types=5, k=12, tie_prob=0.4, seed=11))
    a, b = solve(inst), solve(inst)
    assert a.committee == b.committee and a.trace == b.trace
