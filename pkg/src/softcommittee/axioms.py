"""Dominance between type distributions and the two committee axioms.

A type is *under-represented* when its count is below its lower quota; its
*deficit* is the shortfall ``max(0, quota - count)``.

:func:`dominates` follows the three-condition definition literally, with the
"both under-represented" case of the existence condition read as a strict
decrease of the deficit. Under that reading ``x`` dominates ``y`` exactly when
no deficit of ``x`` exceeds the corresponding deficit of ``y`` and at least
one is smaller.

The swap and envy scans work on bitmasks instead of recomputing whole
distributions. For a committee with counts ``n`` call a type *tight* when
``n[t] <= q[t]`` and *short* when ``n[t] < q[t]``. Then, for ``out`` in the
committee and ``inc`` outside it:

* swapping ``out`` for ``inc`` dominates iff no tight type is held by ``out``
  but not by ``inc``, and some short type is held by ``inc`` but not ``out``;
* ``inc`` has justified envy for ``out`` iff ``inc`` is in a strictly better
  tier and no tight type is held by ``out`` but not by ``inc``.

Witnesses are found in a fixed scan order: incoming candidates (and enviers)
best first, outgoing candidates (and envied members) worst first.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass

from softcommittee.errors import (
    LengthMismatchError,
    MembershipViolationError,
    UnknownTypeError,
    WrongCommitteeSizeError,
)
from softcommittee.model import Instance, type_distribution


@dataclass(frozen=True)
class AxiomReport:
    type_optimal: bool
    jef: bool
    optimality_witness: tuple[str, str] | None = None  # (leaves, enters)
    envy_witness: tuple[str, str] | None = None  # (envier, envied)

    @property
    def ok(self) -> bool:
        return self.type_optimal and self.jef


def deficits(dist: Sequence[int], quotas: Sequence[int]) -> tuple[int, ...]:
    if len(dist) != len(quotas):
        raise LengthMismatchError(
            f"distribution has {len(dist)} entries but there are {len(quotas)} quotas",
            element=len(dist),
        )
    return tuple(max(0, q - x) for x, q in zip(dist, quotas))


def is_under_represented(
    dist: Sequence[int],
    quotas: Sequence[int],
    t: int | str,
    types: Sequence[str] | None = None,
) -> bool:
    """True iff type ``t`` (an index, or a name looked up in ``types``) is below quota."""
    if isinstance(t, str):
        if types is None or t not in types:
            raise UnknownTypeError(f"unknown type {t!r}", element=t)
        t = list(types).index(t)
    if not 0 <= t < len(quotas) or t >= len(dist):
        raise UnknownTypeError(f"type index {t} out of range", element=t)
    return dist[t] < quotas[t]


def dominates(x: Sequence[int], y: Sequence[int], quotas: Sequence[int]) -> bool:
    """Whether distribution ``x`` dominates ``y`` under ``quotas``."""
    if not len(x) == len(y) == len(quotas):
        raise LengthMismatchError(
            f"lengths differ: x={len(x)}, y={len(y)}, quotas={len(quotas)}",
            element=(len(x), len(y), len(quotas)),
        )
    improved = False
    for xi, yi, q in zip(x, y, quotas):
        if yi >= q:
            if xi < q:
                return False
        elif xi >= q:
            improved = True
        else:
            if q - xi > q - yi:
                return False
            if q - xi < q - yi:
                improved = True
    return improved


def _tight_and_short(instance: Instance, counts: Sequence[int]) -> tuple[int, int]:
    tight = short = 0
    for j, (n, q) in enumerate(zip(counts, instance.lower_quotas)):
        if n <= q:
            tight |= 1 << j
            if n < q:
                short |= 1 << j
    return tight, short


def require_size(instance: Instance, w: Iterable[str]) -> frozenset[str]:
    w = instance.committee(w)
    if len(w) != instance.committee_size:
        raise WrongCommitteeSizeError(
            f"committee has {len(w)} members, expected {instance.committee_size}",
            element=len(w),
        )
    return w


def find_dominating_swap(instance: Instance, committee: Iterable[str]) -> tuple[str, str] | None:
    """First ``(leaves, enters)`` swap whose result dominates, or None if type optimal."""
    w = require_size(instance, committee)
    tight, short = _tight_and_short(instance, type_distribution(instance, w))
    if not short:
        return None
    masks, pos = instance.masks, instance.position
    # members only matter through their tight types; keep the worst member per signature
    worst_by_key: dict[int, str] = {}
    for c in reversed(instance.order):
        if c in w:
            worst_by_key.setdefault(masks[c] & tight, c)
    for inc in instance.order:
        if inc in w:
            continue
        m_in = masks[inc]
        gain = m_in & short
        if not gain:
            continue
        best = None
        allowed = m_in & tight
        if 1 << allowed.bit_count() < len(worst_by_key):
            sub = allowed
            while True:
                out = worst_by_key.get(sub)
                if out is not None and gain & ~sub and (best is None or pos[out] > pos[best]):
                    best = out
                if not sub:
                    break
                sub = (sub - 1) & allowed
        else:
            for key, out in worst_by_key.items():
                if key & ~allowed == 0 and gain & ~key and (best is None or pos[out] > pos[best]):
                    best = out
        if best is not None:
            return best, inc
    return None


def is_type_optimal(instance: Instance, committee: Iterable[str]) -> bool:
    return find_dominating_swap(instance, committee) is None


def has_justified_envy(instance: Instance, committee: Iterable[str], c: str, c_prime: str) -> bool:
    """Whether outsider ``c`` has justified envy for member ``c_prime``."""
    w = instance.committee(committee)
    instance.check_candidate(c)
    instance.check_candidate(c_prime)
    if c in w:
        raise MembershipViolationError(f"{c!r} is already in the committee", element=c)
    if c_prime not in w:
        raise MembershipViolationError(f"{c_prime!r} is not in the committee", element=c_prime)
    if not instance.strict_prefers(c, c_prime):
        return False
    counts = type_distribution(instance, w)
    for j in range(instance.n_types):
        held_only_by_member = (instance.membership[instance.candidate_index[c_prime]][j]
                               and not instance.membership[instance.candidate_index[c]][j])
        if held_only_by_member and counts[j] <= instance.lower_quotas[j]:
            return False
    return True


def find_jef_violation(instance: Instance, committee: Iterable[str]) -> tuple[str, str] | None:
    """First ``(envier, envied)`` pair with justified envy, or None."""
    w = require_size(instance, committee)
    tight, _ = _tight_and_short(instance, type_distribution(instance, w))
    masks, tier = instance.masks, instance.tier_of
    insiders = [c for c in reversed(instance.order) if c in w]
    if not insiders:
        return None
    worst_tier = tier[insiders[0]]
    for c in instance.order:
        if tier[c] >= worst_tier:
            break
        if c in w:
            continue
        for d in insiders:
            if tier[d] <= tier[c]:
                break
            if masks[d] & tight & ~masks[c] == 0:
                return c, d
    return None


def is_jef(instance: Instance, committee: Iterable[str]) -> bool:
    return find_jef_violation(instance, committee) is None


def audit(instance: Instance, committee: Iterable[str]) -> AxiomReport:
    swap = find_dominating_swap(instance, committee)
    envy = find_jef_violation(instance, committee)
    return AxiomReport(
        type_optimal=swap is None,
        jef=envy is None,
        optimality_witness=swap,
        envy_witness=envy,
    )
