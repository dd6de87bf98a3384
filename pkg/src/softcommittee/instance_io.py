"""JSON documents for instances, results and audit reports.

Instance document::

    {
      "types": ["t1", "t2"],
      "candidates": [{"id": "c1", "types": ["t1"]}, {"id": "c2", "types": []}],
      "priority": [["c1"], ["c2"]],
      "quotas": {"t1": 1},
      "k": 1,
      "group_quotas": [{"types": ["t1", "t2"], "bound": 1}]
    }

``quotas`` may omit types (quota 0). ``group_quotas`` is optional; each entry
adds an artificial type (``name`` is optional). Unknown keys are rejected.
"""

from __future__ import annotations

import json
from collections.abc import Iterable
from typing import Any

from softcommittee.axioms import AxiomReport
from softcommittee.errors import (
    DocumentSyntaxError,
    DuplicateIdError,
    InstanceError,
    KOutOfRangeError,
    MissingFieldError,
    NegativeQuotaError,
    PriorityMissingError,
    TierNotPartitionError,
    UnknownKeyError,
    UnknownTypeError,
)
from softcommittee.model import Instance, expand_group_quota, validate_instance
from softcommittee.solver import DominanceSwap, EnvySwap, GreedyAdd, SolveTrace, TopUpAdd

_INSTANCE_KEYS = ("types", "candidates", "priority", "quotas", "k", "group_quotas")
_REQUIRED = ("types", "candidates", "priority", "k")


def _fail(message: str, location: str, element: object = None, cls=InstanceError):
    raise cls(message, element=element, location=location)


def _load(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentSyntaxError(e.msg, e.lineno, e.colno) from None


def _expect(value: Any, kind: type | tuple, location: str) -> Any:
    # bool is an int subclass; never accept it where a number is expected
    if not isinstance(value, kind) or (isinstance(value, bool) and kind is not bool):
        name = kind.__name__ if isinstance(kind, type) else " or ".join(k.__name__ for k in kind)
        _fail(f"expected {name}, got {type(value).__name__}", location, value)
    return value


def _check_keys(obj: dict, allowed: Iterable[str], location: str) -> None:
    for key in obj:
        if key not in allowed:
            _fail(f"unknown key {key!r}", f"{location}.{key}" if location else key, key,
                  UnknownKeyError)


def instance_from_dict(doc: Any) -> Instance:
    _expect(doc, dict, "document")
    _check_keys(doc, _INSTANCE_KEYS, "")
    for key in _REQUIRED:
        if key not in doc:
            cls = PriorityMissingError if key == "priority" else MissingFieldError
            _fail(f"required key {key!r} is missing", key, key, cls)

    raw_types = _expect(doc["types"], list, "types")
    types = [_expect(t, str, f"types[{i}]") for i, t in enumerate(raw_types)]
    type_set = set(types)
    candidates, rows = [], []
    for i, entry in enumerate(_expect(doc["candidates"], list, "candidates")):
        loc = f"candidates[{i}]"
        _expect(entry, dict, loc)
        _check_keys(entry, ("id", "types"), loc)
        if "id" not in entry:
            _fail("candidate needs an 'id'", loc, None, MissingFieldError)
        cid = _expect(entry["id"], str, f"{loc}.id")
        held = _expect(entry.get("types", []), list, f"{loc}.types")
        for t in held:
            if t not in type_set:
                _fail(f"unknown type {t!r}", f"{loc}.types", t, UnknownTypeError)
        candidates.append(cid)
        rows.append([int(t in held) for t in types])

    tiers = []
    for i, tier in enumerate(_expect(doc["priority"], list, "priority")):
        loc = f"priority[{i}]"
        tiers.append([_expect(c, str, loc) for c in _expect(tier, list, loc)])

    quota_map = _expect(doc.get("quotas", {}), dict, "quotas")
    for t in quota_map:
        if t not in type_set:
            _fail(f"quota given for unknown type {t!r}", f"quotas.{t}", t, UnknownTypeError)
        _expect(quota_map[t], int, f"quotas.{t}")
    quotas = [quota_map.get(t, 0) for t in types]
    k = _expect(doc["k"], int, "k")

    try:
        instance = validate_instance(candidates, tiers, types, rows, quotas, k)
    except InstanceError as e:
        e.location = e.location or _locate(e)
        raise

    for i, group in enumerate(_expect(doc.get("group_quotas", []), list, "group_quotas")):
        loc = f"group_quotas[{i}]"
        _expect(group, dict, loc)
        _check_keys(group, ("types", "bound", "name"), loc)
        for key in ("types", "bound"):
            if key not in group:
                _fail(f"required key {key!r} is missing", f"{loc}.{key}", key, MissingFieldError)
        try:
            instance = expand_group_quota(
                instance,
                _expect(group["types"], list, f"{loc}.types"),
                _expect(group["bound"], int, f"{loc}.bound"),
                _expect(group["name"], str, f"{loc}.name") if "name" in group else None,
            )
        except InstanceError as e:
            e.location = e.location or loc
            raise
    return instance


def _locate(e: InstanceError) -> str:
    where = {
        DuplicateIdError: "candidates",
        KOutOfRangeError: "k",
        TierNotPartitionError: "priority",
        NegativeQuotaError: f"quotas.{e.element}",
    }
    return where.get(type(e), "document")


def parse_instance(text: str) -> Instance:
    return instance_from_dict(_load(text))


def instance_to_dict(instance: Instance) -> dict:
    return {
        "types": list(instance.types),
        "candidates": [
            {"id": c, "types": [t for t, bit in zip(instance.types, row) if bit]}
            for c, row in zip(instance.candidates, instance.membership)
        ],
        "priority": [list(tier) for tier in instance.priority_tiers],
        "quotas": dict(zip(instance.types, instance.lower_quotas)),
        "k": instance.committee_size,
    }


def _dump(doc: Any) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def serialize_instance(instance: Instance) -> str:
    return _dump(instance_to_dict(instance))


def _event_to_dict(e) -> dict:
    if isinstance(e, GreedyAdd):
        return {"event": "greedy_add", "type": e.type, "candidate": e.candidate}
    if isinstance(e, TopUpAdd):
        return {"event": "top_up_add", "candidate": e.candidate}
    if isinstance(e, DominanceSwap):
        return {"event": "dominance_swap", "out": e.out, "in": e.incoming,
                "before": list(e.before), "after": list(e.after)}
    return {"event": "envy_swap", "out": e.out, "in": e.incoming}


def _event_from_dict(d: dict):
    kind = d["event"]
    if kind == "greedy_add":
        return GreedyAdd(d["type"], d["candidate"])
    if kind == "top_up_add":
        return TopUpAdd(d["candidate"])
    if kind == "dominance_swap":
        return DominanceSwap(d["out"], d["in"], tuple(d["before"]), tuple(d["after"]))
    if kind == "envy_swap":
        return EnvySwap(d["out"], d["in"])
    raise UnknownKeyError(f"unknown trace event {kind!r}", element=kind, location="trace")


def report_to_dict(report: AxiomReport) -> dict:
    opt, envy = report.optimality_witness, report.envy_witness
    return {
        "type_optimal": report.type_optimal,
        "jef": report.jef,
        "optimality_witness": None if opt is None else {"out": opt[0], "in": opt[1]},
        "envy_witness": None if envy is None else {"envier": envy[0], "envied": envy[1]},
    }


def serialize_result(
    committee: Iterable[str],
    trace: SolveTrace | None = None,
    report: AxiomReport | None = None,
) -> str:
    """Result document: sorted members, then the audit and trace when given."""
    doc: dict[str, Any] = {"members": sorted(committee)}
    if report is not None:
        doc["audit"] = report_to_dict(report)
    if trace is not None:
        doc["trace"] = [_event_to_dict(e) for e in trace.events]
        doc["counters"] = dict(trace.counters)
    return _dump(doc)


def parse_result(text: str) -> tuple[frozenset[str], SolveTrace | None, AxiomReport | None]:
    doc = _expect(_load(text), dict, "document")
    _check_keys(doc, ("members", "audit", "trace", "counters"), "")
    if "members" not in doc:
        _fail("required key 'members' is missing", "members", "members", MissingFieldError)
    committee = frozenset(_expect(doc["members"], list, "members"))
    trace = None
    if "trace" in doc:
        trace = SolveTrace(events=[_event_from_dict(d) for d in doc["trace"]])
        trace.counters.update(doc.get("counters", {}))
    report = None
    if "audit" in doc:
        a = doc["audit"]
        opt, envy = a.get("optimality_witness"), a.get("envy_witness")
        report = AxiomReport(
            type_optimal=a["type_optimal"],
            jef=a["jef"],
            optimality_witness=None if opt is None else (opt["out"], opt["in"]),
            envy_witness=None if envy is None else (envy["envier"], envy["envied"]),
        )
    return committee, trace, report
