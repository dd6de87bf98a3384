"""Seeded random instances.

The draw order and the PRNG (SplitMix64) are fixed so that the same parameters
give the same instance in any implementation; ``docs/generator.md`` is the
normative description.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from softcommittee.errors import InvalidParamsError
from softcommittee.model import Instance, validate_instance

MASK64 = (1 << 64) - 1

IntOrRange = Union[int, tuple[int, int]]


class SplitMix64:
    """SplitMix64 (Steele, Lea, Flood 2014) on a 64-bit state."""

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """Integer in ``[0, n)`` by multiply-shift; one draw."""
        return (self.next_u64() * n) >> 64

    def between(self, lo: int, hi: int) -> int:
        """Integer in ``[lo, hi]``; one draw."""
        return lo + self.below(hi - lo + 1)

    def uniform(self) -> float:
        """Float in ``[0, 1)`` from the top 53 bits; one draw."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))


@dataclass(frozen=True)
class GenParams:
    m: IntOrRange = 6
    n_types: IntOrRange = 3
    k: IntOrRange = 3
    density: float = 0.5
    tightness: float = 1.0
    tie_prob: float = 0.0
    seed: int = 0

    def __post_init__(self):
        for name in ("m", "n_types", "k"):
            lo, hi = _bounds(getattr(self, name), name)
            if lo < 0 or lo > hi:
                raise InvalidParamsError(f"{name} range [{lo}, {hi}] is invalid", element=name)
        for name in ("density", "tightness", "tie_prob"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, (int, float)) or not 0.0 <= v <= 1.0:
                raise InvalidParamsError(f"{name} must lie in [0, 1], got {v!r}", element=name)
        if isinstance(self.seed, bool) or not isinstance(self.seed, int) or self.seed < 0:
            raise InvalidParamsError(f"seed must be a non-negative integer, got {self.seed!r}",
                                     element="seed")
        if isinstance(self.k, int) and isinstance(self.m, int) and self.k > self.m:
            raise InvalidParamsError(f"k={self.k} exceeds m={self.m}", element="k")


def _bounds(v: IntOrRange, name: str) -> tuple[int, int]:
    if isinstance(v, bool):
        raise InvalidParamsError(f"{name} must be an integer or a (lo, hi) pair", element=name)
    if isinstance(v, int):
        return v, v
    try:
        lo, hi = v
    except (TypeError, ValueError):
        raise InvalidParamsError(f"{name} must be an integer or a (lo, hi) pair",
                                 element=name) from None
    if not all(isinstance(x, int) and not isinstance(x, bool) for x in (lo, hi)):
        raise InvalidParamsError(f"{name} bounds must be integers", element=name)
    return lo, hi


def random_instance(params: GenParams) -> Instance:
    rng = SplitMix64(params.seed)
    m = rng.between(*_bounds(params.m, "m"))
    n_types = rng.between(*_bounds(params.n_types, "n_types"))
    k_lo, k_hi = _bounds(params.k, "k")
    k = rng.between(min(k_lo, m), min(k_hi, m))

    membership = [[int(rng.uniform() < params.density) for _ in range(n_types)]
                  for _ in range(m)]
    quota_max = int(params.tightness * k)
    quotas = [rng.below(quota_max + 1) for _ in range(n_types)]

    perm = list(range(m))
    for i in range(m - 1, 0, -1):
        j = rng.below(i + 1)
        perm[i], perm[j] = perm[j], perm[i]
    tiers: list[list[str]] = []
    for pos, idx in enumerate(perm):
        joins = pos > 0 and rng.uniform() < params.tie_prob
        if joins:
            tiers[-1].append(f"c{idx + 1}")
        else:
            tiers.append([f"c{idx + 1}"])

    return validate_instance(
        candidates=[f"c{i + 1}" for i in range(m)],
        priority_tiers=tiers,
        types=[f"t{j + 1}" for j in range(n_types)],
        membership=membership,
        lower_quotas=quotas,
        committee_size=k,
    )
