"""Three-stage committee selection rule.

1. Greedy fill: while the committee is short and some type is under-represented,
   add the best remaining candidate of such a type; then top up with the best
   remaining candidates.
2. Dominance swaps: while a single swap yields a dominating type distribution,
   apply it.
3. Envy swaps: while an outsider has justified envy for a member, swap them.

Every step is recorded in a :class:`SolveTrace`. :func:`solve` re-audits the
result after stage 3. Envy swaps never raise a deficit, but they can make a new
dominating single swap available (see ``tests/test_solver.py`` for a four
candidate instance), so when the audit finds one, stages 2 and 3 are run again.
Each round strictly lowers (total deficit, sum of member tiers) in lexicographic
order, so this terminates.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable
from dataclasses import dataclass, field
from typing import Literal, NamedTuple, Union

from softcommittee.axioms import (
    AxiomReport,
    audit,
    find_dominating_swap,
    find_jef_violation,
    require_size,
)
from softcommittee.model import Instance, type_distribution

log = logging.getLogger(__name__)

TYPE_RULES = ("lexicographic", "largest-deficit")


@dataclass(frozen=True)
class TieBreakPolicy:
    """How stage 1 picks among under-represented types.

    ``lexicographic`` takes the first under-represented type in type order;
    ``largest-deficit`` takes the one with the largest deficit, ties by type order.
    Candidates are always taken best first, ties by input order.
    """

    type_rule: Literal["lexicographic", "largest-deficit"] = "lexicographic"

    def __post_init__(self):
        if self.type_rule not in TYPE_RULES:
            raise ValueError(f"unknown type rule {self.type_rule!r}; expected one of {TYPE_RULES}")


@dataclass(frozen=True)
class GreedyAdd:
    type: str
    candidate: str


@dataclass(frozen=True)
class TopUpAdd:
    candidate: str


@dataclass(frozen=True)
class DominanceSwap:
    out: str
    incoming: str
    before: tuple[int, ...]
    after: tuple[int, ...]


@dataclass(frozen=True)
class EnvySwap:
    out: str
    incoming: str


Event = Union[GreedyAdd, TopUpAdd, DominanceSwap, EnvySwap]


@dataclass
class SolveTrace:
    events: list[Event] = field(default_factory=list)
    counters: dict[str, int] = field(
        default_factory=lambda: {
            "greedy_adds": 0,
            "top_up_adds": 0,
            "dominance_swaps": 0,
            "envy_swaps": 0,
            "repair_rounds": 0,
        }
    )

    def extend(self, events: Iterable[Event]) -> None:
        for e in events:
            self.events.append(e)
            self.counters[_COUNTER[type(e)]] += 1

    def replay(self) -> frozenset[str]:
        """Rebuild the committee by applying the events to the empty set."""
        w: set[str] = set()
        for e in self.events:
            if isinstance(e, (GreedyAdd, TopUpAdd)):
                w.add(e.candidate)
            else:
                w.remove(e.out)
                w.add(e.incoming)
        return frozenset(w)


_COUNTER = {
    GreedyAdd: "greedy_adds",
    TopUpAdd: "top_up_adds",
    DominanceSwap: "dominance_swaps",
    EnvySwap: "envy_swaps",
}


class Solution(NamedTuple):
    committee: frozenset[str]
    trace: SolveTrace
    report: AxiomReport


def stage1_greedy_fill(
    instance: Instance, policy: TieBreakPolicy | None = None
) -> tuple[frozenset[str], list[Event]]:
    policy = policy or TieBreakPolicy()
    k, quotas = instance.committee_size, instance.lower_quotas
    # best-first candidates of each type; next_pos[j] skips selected ones lazily
    by_type: list[list[str]] = [[] for _ in instance.types]
    for c in instance.order:
        row = instance.membership[instance.candidate_index[c]]
        for j, bit in enumerate(row):
            if bit:
                by_type[j].append(c)
    next_pos = [0] * instance.n_types
    counts = [0] * instance.n_types
    w: set[str] = set()
    events: list[Event] = []

    def available(j: int) -> str | None:
        lst = by_type[j]
        while next_pos[j] < len(lst) and lst[next_pos[j]] in w:
            next_pos[j] += 1
        return lst[next_pos[j]] if next_pos[j] < len(lst) else None

    while len(w) < k:
        eligible = [j for j in range(instance.n_types)
                    if counts[j] < quotas[j] and available(j) is not None]
        if not eligible:
            break
        if policy.type_rule == "lexicographic":
            j = eligible[0]
        else:
            j = max(eligible, key=lambda t: (quotas[t] - counts[t], -t))
        c = available(j)
        w.add(c)
        for t, bit in enumerate(instance.membership[instance.candidate_index[c]]):
            counts[t] += bit
        events.append(GreedyAdd(instance.types[j], c))

    for c in instance.order:
        if len(w) >= k:
            break
        if c not in w:
            w.add(c)
            events.append(TopUpAdd(c))
    return frozenset(w), events


def stage2_dominance_swaps(
    instance: Instance, committee: Iterable[str]
) -> tuple[frozenset[str], list[Event]]:
    w = set(require_size(instance, committee))
    events: list[Event] = []
    while (swap := find_dominating_swap(instance, w)) is not None:
        out, inc = swap
        before = type_distribution(instance, w)
        w.remove(out)
        w.add(inc)
        events.append(DominanceSwap(out, inc, before, type_distribution(instance, w)))
    return frozenset(w), events


def stage3_envy_swaps(
    instance: Instance, committee: Iterable[str]
) -> tuple[frozenset[str], list[Event]]:
    w = set(require_size(instance, committee))
    events: list[Event] = []
    while (pair := find_jef_violation(instance, w)) is not None:
        envier, envied = pair
        w.remove(envied)
        w.add(envier)
        events.append(EnvySwap(envied, envier))
    return frozenset(w), events


def solve(instance: Instance, policy: TieBreakPolicy | None = None) -> Solution:
    trace = SolveTrace()
    w, events = stage1_greedy_fill(instance, policy)
    trace.extend(events)
    while True:
        w, events = stage2_dominance_swaps(instance, w)
        trace.extend(events)
        w, events = stage3_envy_swaps(instance, w)
        trace.extend(events)
        report = audit(instance, w)
        if report.ok:
            break
        trace.counters["repair_rounds"] += 1
        log.warning("envy swaps re-enabled a dominating swap %s; repeating stages 2-3",
                    report.optimality_witness)

    if trace.counters["dominance_swaps"] > instance.m:
        log.info("dominance swaps (%d) exceeded the number of candidates (%d)",
                 trace.counters["dominance_swaps"], instance.m)
    return Solution(w, trace, report)
