"""Instance data model for committee selection with soft lower quotas.

An instance holds the candidates, a weak priority order over them (given as
ordered tiers of tied candidates), a set of types, a binary membership matrix,
one lower quota per type, and the target committee size ``k``.

Committees are plain ``frozenset`` objects of candidate identifiers and type
distributions are tuples of per-type member counts, aligned with
``Instance.types``.
"""

from __future__ import annotations

import numbers
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import cached_property

from softcommittee.errors import (
    DuplicateIdError,
    EmptySubsetError,
    InstanceError,
    KOutOfRangeError,
    MatrixShapeMismatchError,
    NegativeQuotaError,
    NonBinaryEntryError,
    TierNotPartitionError,
    UnknownCandidateError,
    UnknownTypeError,
)

Committee = frozenset
TypeDistribution = tuple


@dataclass(frozen=True)
class Instance:
    """A validated instance. Build it with :func:`validate_instance`."""

    candidates: tuple[str, ...]
    priority_tiers: tuple[tuple[str, ...], ...]
    types: tuple[str, ...]
    membership: tuple[tuple[int, ...], ...]
    lower_quotas: tuple[int, ...]
    committee_size: int

    @property
    def m(self) -> int:
        return len(self.candidates)

    @property
    def n_types(self) -> int:
        return len(self.types)

    @property
    def k(self) -> int:
        return self.committee_size

    @cached_property
    def candidate_index(self) -> dict[str, int]:
        return {c: i for i, c in enumerate(self.candidates)}

    @cached_property
    def type_index(self) -> dict[str, int]:
        return {t: i for i, t in enumerate(self.types)}

    @cached_property
    def tier_of(self) -> dict[str, int]:
        """Tier index per candidate; 0 is the highest priority."""
        return {c: i for i, tier in enumerate(self.priority_tiers) for c in tier}

    @cached_property
    def order(self) -> tuple[str, ...]:
        """All candidates best first: by tier, then by position in ``candidates``."""
        return tuple(c for tier in self.priority_tiers for c in tier)

    @cached_property
    def position(self) -> dict[str, int]:
        return {c: i for i, c in enumerate(self.order)}

    @cached_property
    def masks(self) -> dict[str, int]:
        """Bitmask of each candidate's types (bit j set iff it has type j)."""
        out = {}
        for c, row in zip(self.candidates, self.membership):
            mask = 0
            for j, bit in enumerate(row):
                if bit:
                    mask |= 1 << j
            out[c] = mask
        return out

    def strict_prefers(self, a: str, b: str) -> bool:
        """True iff ``a`` is in a strictly better tier than ``b``."""
        return self.tier_of[a] < self.tier_of[b]

    def check_candidate(self, c: str) -> None:
        if c not in self.candidate_index:
            raise UnknownCandidateError(f"unknown candidate {c!r}", element=c)

    def committee(self, members: Iterable[str]) -> frozenset[str]:
        """Return ``members`` as a committee, checking every identifier."""
        w = frozenset(members)
        for c in w:
            self.check_candidate(c)
        return w

    def top_k(self) -> frozenset[str]:
        """The ``k`` best candidates, ties broken by input order."""
        return frozenset(self.order[: self.committee_size])


def validate_instance(
    candidates: Sequence[str],
    priority_tiers: Sequence[Iterable[str]],
    types: Sequence[str],
    membership: Sequence[Sequence[int]],
    lower_quotas: Sequence[int],
    committee_size: int,
) -> Instance:
    """Check raw instance data and return an :class:`Instance`.

    Tiers are re-ordered internally so that tied candidates appear in the order
    of ``candidates``; that order is the tie-break everywhere.
    """
    candidates = tuple(candidates)
    types = tuple(types)
    _check_unique(candidates, "candidate")
    _check_unique(types, "type")
    for name in candidates + types:
        if not isinstance(name, str):
            raise InstanceError(f"identifier {name!r} is not a string", element=name)

    rows = [tuple(row) for row in membership]
    if len(rows) != len(candidates):
        raise MatrixShapeMismatchError(
            f"membership has {len(rows)} rows but there are {len(candidates)} candidates",
            element=len(rows),
        )
    matrix = []
    for c, row in zip(candidates, rows):
        if len(row) != len(types):
            raise MatrixShapeMismatchError(
                f"membership row of {c!r} has {len(row)} entries, expected {len(types)}",
                element=c,
            )
        for t, v in zip(types, row):
            if v not in (0, 1):
                raise NonBinaryEntryError(
                    f"membership entry ({c!r}, {t!r}) is {v!r}, expected 0 or 1",
                    element=(c, t),
                )
        matrix.append(tuple(int(v) for v in row))

    quotas = tuple(lower_quotas)
    if len(quotas) != len(types):
        raise MatrixShapeMismatchError(
            f"{len(quotas)} lower quotas given for {len(types)} types", element=len(quotas)
        )
    for t, q in zip(types, quotas):
        if not _is_int(q):
            raise NegativeQuotaError(f"quota of {t!r} is not an integer: {q!r}", element=t)
        if q < 0:
            raise NegativeQuotaError(f"quota of {t!r} is negative: {q}", element=t)

    if not _is_int(committee_size):
        raise KOutOfRangeError(f"committee size {committee_size!r} is not an integer",
                               element=committee_size)
    if not 0 <= committee_size <= len(candidates):
        raise KOutOfRangeError(
            f"committee size {committee_size} outside [0, {len(candidates)}]",
            element=committee_size,
        )

    index = {c: i for i, c in enumerate(candidates)}
    seen: set[str] = set()
    tiers = []
    for i, tier in enumerate(priority_tiers):
        tier = list(tier)
        if not tier:
            raise TierNotPartitionError(f"priority tier {i} is empty", element=i)
        for c in tier:
            if c not in index:
                raise TierNotPartitionError(f"tier {i} names unknown candidate {c!r}", element=c)
            if c in seen:
                raise TierNotPartitionError(f"candidate {c!r} appears in more than one tier",
                                            element=c)
            seen.add(c)
        tiers.append(tuple(sorted(tier, key=index.__getitem__)))
    missing = [c for c in candidates if c not in seen]
    if missing:
        raise TierNotPartitionError(f"candidate {missing[0]!r} is in no priority tier",
                                    element=missing[0])

    return Instance(
        candidates=candidates,
        priority_tiers=tuple(tiers),
        types=types,
        membership=tuple(matrix),
        lower_quotas=tuple(int(q) for q in quotas),
        committee_size=int(committee_size),
    )


def _is_int(x: object) -> bool:
    return isinstance(x, numbers.Integral) and not isinstance(x, bool)


def _check_unique(ids: tuple, kind: str) -> None:
    seen = set()
    for x in ids:
        if x in seen:
            raise DuplicateIdError(f"duplicate {kind} identifier {x!r}", element=x)
        seen.add(x)


def type_distribution(instance: Instance, committee: Iterable[str]) -> tuple[int, ...]:
    """Per-type member counts of ``committee``."""
    counts = [0] * instance.n_types
    for c in instance.committee(committee):
        for j, bit in enumerate(instance.membership[instance.candidate_index[c]]):
            counts[j] += bit
    return tuple(counts)


def candidate_types(instance: Instance, c: str) -> frozenset[str]:
    instance.check_candidate(c)
    row = instance.membership[instance.candidate_index[c]]
    return frozenset(t for t, bit in zip(instance.types, row) if bit)


def expand_group_quota(
    instance: Instance, type_subset: Iterable[str], bound: int, name: str | None = None
) -> Instance:
    """Add an artificial type for "at least ``bound`` members from any of these types".

    The new column is the row-wise OR of the chosen columns. It is appended after
    the existing types, which keep their columns and quotas. ``name`` defaults to
    ``"{a,b,...}"`` with the members in type order.
    """
    subset = set(type_subset)
    if not subset:
        raise EmptySubsetError("group quota needs at least one type", element=())
    for t in subset:
        if t not in instance.type_index:
            raise UnknownTypeError(f"unknown type {t!r}", element=t)
    if not _is_int(bound) or bound < 0:
        raise NegativeQuotaError(f"group bound must be a non-negative integer, got {bound!r}",
                                 element=bound)
    cols = sorted(instance.type_index[t] for t in subset)
    if name is None:
        name = "{" + ",".join(instance.types[j] for j in cols) + "}"
    if name in instance.type_index:
        raise DuplicateIdError(f"type {name!r} already exists", element=name)
    membership = [row + (int(any(row[j] for j in cols)),) for row in instance.membership]
    return validate_instance(
        instance.candidates,
        instance.priority_tiers,
        instance.types + (name,),
        membership,
        instance.lower_quotas + (int(bound),),
        instance.committee_size,
    )
