"""Committee selection with soft lower quotas on candidate types."""

from softcommittee.axioms import (
    AxiomReport,
    audit,
    dominates,
    find_dominating_swap,
    find_jef_violation,
    has_justified_envy,
    is_type_optimal,
    is_under_represented,
)
from softcommittee.generator import GenParams, random_instance
from softcommittee.instance_io import parse_instance, serialize_instance, serialize_result
from softcommittee.model import (
    Instance,
    candidate_types,
    expand_group_quota,
    type_distribution,
    validate_instance,
)
from softcommittee.oracle import certify_solver, oracle_axiom_sets
from softcommittee.solver import SolveTrace, TieBreakPolicy, solve

__all__ = [
    "AxiomReport",
    "GenParams",
    "Instance",
    "SolveTrace",
    "TieBreakPolicy",
    "audit",
    "candidate_types",
    "certify_solver",
    "dominates",
    "expand_group_quota",
    "find_dominating_swap",
    "find_jef_violation",
    "has_justified_envy",
    "is_type_optimal",
    "is_under_represented",
    "oracle_axiom_sets",
    "parse_instance",
    "random_instance",
    "serialize_instance",
    "serialize_result",
    "solve",
    "type_distribution",
    "validate_instance",
]
