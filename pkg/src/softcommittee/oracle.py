"""Brute-force reference checks for small instances.

Nothing here uses :mod:`softcommittee.axioms`. Distributions are recomputed
from the membership matrix for every committee, dominance is checked as
componentwise comparison of deficit vectors, and priority ranks are read from
the tiers directly. Agreement between these and the fast checkers is therefore
a real cross-check.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Iterable, Iterator
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from softcommittee.errors import InstanceTooLargeError
from softcommittee.model import Instance
from softcommittee.solver import TieBreakPolicy, solve

DEFAULT_CAP = 10**6


@dataclass(frozen=True)
class OracleResult:
    committees: tuple[frozenset[str], ...]
    type_optimal: frozenset[frozenset[str]]
    jef: frozenset[frozenset[str]]

    @property
    def both(self) -> frozenset[frozenset[str]]:
        return self.type_optimal & self.jef


@dataclass(frozen=True)
class Certification:
    passed: bool
    committee: frozenset[str]
    in_type_optimal: bool
    in_jef: bool
    intersection: frozenset[frozenset[str]]


def _ensure_cap(n: int, cap: int) -> None:
    if n > cap:
        raise InstanceTooLargeError(f"{n} committees to check exceeds the cap of {cap}",
                                    element=n)


def enumerate_committees(instance: Instance, cap: int = DEFAULT_CAP) -> Iterator[frozenset[str]]:
    """Every size-k committee once, in lexicographic order of candidate positions."""
    _ensure_cap(math.comb(instance.m, instance.committee_size), cap)
    for combo in itertools.combinations(instance.candidates, instance.committee_size):
        yield frozenset(combo)


class _Reference:
    """Literal evaluation of the axioms on one instance."""

    def __init__(self, instance: Instance):
        self.instance = instance
        self.rank = {}
        for i, tier in enumerate(instance.priority_tiers):
            for c in tier:
                self.rank[c] = i
        self.types_of = {
            c: {j for j, v in enumerate(row) if v == 1}
            for c, row in zip(instance.candidates, instance.membership)
        }
        self.quotas = list(instance.lower_quotas)

    def counts(self, committee: Iterable[str]) -> list[int]:
        n = [0] * len(self.quotas)
        for c in committee:
            for j in self.types_of[c]:
                n[j] += 1
        return n

    def shortfall(self, committee: Iterable[str]) -> list[int]:
        return [max(0, q - n) for n, q in zip(self.counts(committee), self.quotas)]

    def better(self, x: Iterable[str], y: Iterable[str]) -> bool:
        dx, dy = self.shortfall(x), self.shortfall(y)
        return all(a <= b for a, b in zip(dx, dy)) and any(a < b for a, b in zip(dx, dy))

    def type_optimal(self, committee: frozenset[str]) -> bool:
        outside = [c for c in self.instance.candidates if c not in committee]
        for leaving in committee:
            for entering in outside:
                if self.better((committee - {leaving}) | {entering}, committee):
                    return False
        return True

    def jef(self, committee: frozenset[str]) -> bool:
        n = self.counts(committee)
        for c in self.instance.candidates:
            if c in committee:
                continue
            for d in committee:
                if not self.rank[c] < self.rank[d]:
                    continue
                exclusive = self.types_of[d] - self.types_of[c]
                if not any(n[t] <= self.quotas[t] for t in exclusive):
                    return False
        return True

    def globally_optimal(self, committee: frozenset[str], limit: int) -> bool:
        inside = sorted(committee)
        outside = [c for c in self.instance.candidates if c not in committee]
        for size in range(1, limit + 1):
            for leaving in itertools.combinations(inside, size):
                rest = committee.difference(leaving)
                for entering in itertools.combinations(outside, size):
                    if self.better(rest.union(entering), committee):
                        return False
        return True


def oracle_type_optimal(instance: Instance, committee: Iterable[str]) -> bool:
    return _Reference(instance).type_optimal(frozenset(committee))


def oracle_jef(instance: Instance, committee: Iterable[str]) -> bool:
    return _Reference(instance).jef(frozenset(committee))


def _classify(args: tuple[Instance, list[frozenset[str]]]) -> list[tuple[bool, bool]]:
    instance, chunk = args
    ref = _Reference(instance)
    return [(ref.type_optimal(w), ref.jef(w)) for w in chunk]


def oracle_axiom_sets(instance: Instance, cap: int = DEFAULT_CAP, workers: int = 1) -> OracleResult:
    """Classify every size-k committee under both axioms.

    With ``workers > 1`` the committees are split into chunks and classified in
    separate processes; the merged result does not depend on ``workers``.
    """
    committees = tuple(enumerate_committees(instance, cap))
    if workers > 1 and len(committees) > 1:
        size = -(-len(committees) // workers)
        chunks = [list(committees[i:i + size]) for i in range(0, len(committees), size)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            verdicts = [v for part in pool.map(_classify, [(instance, ch) for ch in chunks])
                        for v in part]
    else:
        verdicts = _classify((instance, list(committees)))
    return OracleResult(
        committees=committees,
        type_optimal=frozenset(w for w, (opt, _) in zip(committees, verdicts) if opt),
        jef=frozenset(w for w, (_, fair) in zip(committees, verdicts) if fair),
    )


def global_type_optimality_check(
    instance: Instance, committee: Iterable[str], swap_size_limit: int, cap: int = DEFAULT_CAP
) -> bool:
    """True iff no exchange of up to ``swap_size_limit`` members for as many outsiders dominates."""
    w = frozenset(committee)
    for c in w:
        instance.check_candidate(c)
    outside = instance.m - len(w)
    work = sum(math.comb(len(w), s) * math.comb(outside, s) for s in range(1, swap_size_limit + 1))
    _ensure_cap(work, cap)
    return _Reference(instance).globally_optimal(w, swap_size_limit)


def certify_solver(
    instance: Instance,
    cap: int = DEFAULT_CAP,
    policy: TieBreakPolicy | None = None,
    workers: int = 1,
) -> Certification:
    """Solve ``instance`` and check the output against the brute-force axiom sets."""
    result = oracle_axiom_sets(instance, cap, workers)
    committee = solve(instance, policy).committee
    in_opt = committee in result.type_optimal
    in_jef = committee in result.jef
    return Certification(
        passed=in_opt and in_jef,
        committee=committee,
        in_type_optimal=in_opt,
        in_jef=in_jef,
        intersection=result.both,
    )
