"""JSON instance and result files with exact rational encoding."""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Any, Sequence

from .core import Allocation, InputError, Instance, Trace

_RATIONAL = re.compile(r"\s*(-?\d+)\s*(?:/\s*(\d+)\s*)?$")


class ParseError(InputError):
    """Malformed file content; the message names the offending location."""


def encode_rational(q: Fraction) -> int | str:
    return q.numerator if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def decode_rational(value: Any, where: str) -> Fraction:
    if isinstance(value, bool):
        raise ParseError(f"{where}: expected a number, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        match = _RATIONAL.match(value)
        if match:
            num, den = match.groups()
            if den is not None and int(den) == 0:
                raise ParseError(f"{where}: zero denominator in {value!r}")
            return Fraction(int(num), int(den or 1))
    raise ParseError(f"{where}: expected an integer or a \"num/den\" string, got {value!r}")


def dumps(obj: Any) -> str:
    """Canonical text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _load(data: bytes | str) -> Any:
    try:
        return json.loads(data)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def _id_list(doc: dict, key: str) -> list[str]:
    ids = doc.get(key)
    if not isinstance(ids, list) or not all(isinstance(x, str) for x in ids):
        raise ParseError(f"{key}: expected a list of string identifiers")
    return ids


def instance_from_obj(doc: Any) -> Instance:
    if not isinstance(doc, dict):
        raise ParseError("top level: expected an object")
    if doc.get("kind") != "chores":
        raise ParseError(f"kind: expected \"chores\", got {doc.get('kind')!r}")
    agents = _id_list(doc, "agents")
    chores = _id_list(doc, "chores")
    matrix = doc.get("disutility")
    if not isinstance(matrix, list):
        raise ParseError("disutility: expected a list of rows")
    if len(matrix) != len(agents):
        raise ParseError(f"disutility: {len(matrix)} rows for {len(agents)} declared agents")
    rows = []
    for i, row in enumerate(matrix):
        if not isinstance(row, list):
            raise ParseError(f"disutility[{i}]: expected a list")
        if len(row) != len(chores):
            raise ParseError(f"disutility[{i}]: {len(row)} entries for {len(chores)} declared chores")
        parsed = []
        for j, v in enumerate(row):
            q = decode_rational(v, f"disutility[{i}][{j}]")
            if q < 0:
                raise ParseError(f"disutility[{i}][{j}]: negative entry {v!r}")
            parsed.append(q)
        rows.append(tuple(parsed))
    try:
        return Instance(tuple(agents), tuple(chores), tuple(rows))
    except InputError as exc:
        raise ParseError(str(exc)) from exc


def parse_instance(data: bytes | str) -> Instance:
    return instance_from_obj(_load(data))


def instance_to_obj(inst: Instance) -> dict:
    return {
        "kind": "chores",
        "agents": list(inst.agent_ids),
        "chores": list(inst.chore_ids),
        "disutility": [[encode_rational(v) for v in row] for row in inst.disutility],
    }


def serialize_instance(inst: Instance) -> str:
    return dumps(instance_to_obj(inst))


# Allocations, payments, results ---------------------------------------------

def allocation_to_obj(inst: Instance, alloc: Allocation) -> dict:
    return {inst.agent_ids[i]: [inst.chore_ids[j] for j in sorted(b)]
            for i, b in enumerate(alloc.bundles)}


def allocation_from_obj(inst: Instance, obj: Any) -> Allocation:
    if not isinstance(obj, dict):
        raise ParseError("allocation: expected an object mapping agents to chore lists")
    agent_index = {a: i for i, a in enumerate(inst.agent_ids)}
    chore_index = {c: j for j, c in enumerate(inst.chore_ids)}
    alloc = Allocation.empty(inst.n)
    for agent, chores in obj.items():
        if agent not in agent_index:
            raise ParseError(f"allocation: unknown agent {agent!r}")
        if not isinstance(chores, list):
            raise ParseError(f"allocation[{agent}]: expected a list of chore ids")
        for c in chores:
            if c not in chore_index:
                raise ParseError(f"allocation[{agent}]: unknown chore {c!r}")
            alloc.bundles[agent_index[agent]].add(chore_index[c])
    try:
        alloc.check_complete(inst)
    except InputError as exc:
        raise ParseError(f"allocation: {exc}") from exc
    return alloc


def payments_to_obj(inst: Instance, pay: Sequence[Fraction]) -> dict:
    return {inst.chore_ids[j]: encode_rational(p) for j, p in enumerate(pay)}


def payments_from_obj(inst: Instance, obj: Any) -> list[Fraction]:
    if not isinstance(obj, dict):
        raise ParseError("payments: expected an object mapping chores to amounts")
    chore_index = {c: j for j, c in enumerate(inst.chore_ids)}
    pay: list[Fraction | None] = [None] * inst.m
    for c, v in obj.items():
        if c not in chore_index:
            raise ParseError(f"payments: unknown chore {c!r}")
        q = decode_rational(v, f"payments[{c}]")
        if q <= 0:
            raise ParseError(f"payments[{c}]: payment must be positive")
        pay[chore_index[c]] = q
    missing = [inst.chore_ids[j] for j, p in enumerate(pay) if p is None]
    if missing:
        raise ParseError(f"payments: no payment for chore {missing[0]!r}")
    return pay


_AGENT_KEYS = {"src", "dst", "big", "least", "middle", "agent", "envier", "envied"}
_CHORE_KEYS = {"chore"}


def _encode_value(inst: Instance, key: str, value: Any) -> Any:
    if isinstance(value, Fraction):
        return encode_rational(value)
    if key in _AGENT_KEYS and isinstance(value, int):
        return inst.agent_ids[value]
    if key in _CHORE_KEYS and isinstance(value, int):
        return inst.chore_ids[value]
    if key in ("chores",) and isinstance(value, (list, tuple)):
        return [inst.chore_ids[j] for j in value]
    if key in ("agents",) and isinstance(value, (list, tuple)):
        return [inst.agent_ids[i] for i in value]
    if isinstance(value, (list, tuple)):
        return [_encode_value(inst, "", v) for v in value]
    return value


def encode_info(inst: Instance, info: dict) -> dict:
    return {k: _encode_value(inst, k, v) for k, v in info.items()}


def trace_to_obj(inst: Instance, trace: Trace) -> list[dict]:
    out = []
    for ev in trace:
        out.append({
            "event": ev.kind,
            **encode_info(inst, ev.info),
            "allocation": {inst.agent_ids[i]: [inst.chore_ids[j] for j in b]
                           for i, b in enumerate(ev.bundles)},
        })
    return out


def result_to_obj(inst: Instance, alloc: Allocation, payments: Sequence[Fraction] | None = None,
                  certificate: dict | None = None, trace: list | None = None,
                  algorithm: str | None = None) -> dict:
    obj: dict[str, Any] = {
        "allocation": allocation_to_obj(inst, alloc),
        "certificate": certificate or {},
    }
    if algorithm is not None:
        obj["algorithm"] = algorithm
    if payments is not None:
        obj["payments"] = payments_to_obj(inst, payments)
    if trace is not None:
        obj["trace"] = trace
    return obj


def load_allocation(inst: Instance, data: bytes | str) -> Allocation:
    """Read an allocation from a result file or a bare ``{"allocation": ...}`` object."""
    doc = _load(data)
    if not isinstance(doc, dict) or "allocation" not in doc:
        raise ParseError("top level: expected an object with an \"allocation\" key")
    return allocation_from_obj(inst, doc["allocation"])


def load_payments(inst: Instance, data: bytes | str) -> list[Fraction]:
    doc = _load(data)
    if not isinstance(doc, dict) or "payments" not in doc:
        raise ParseError("top level: expected an object with a \"payments\" key")
    return payments_from_obj(inst, doc["payments"])
