"""Decision procedures for fairness and market predicates."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .core import (
    Allocation,
    Instance,
    InputError,
    bundle_disutility,
    disutility_less_one,
    earning,
    earning_less_one,
    mpb_ratio,
)


@dataclass(frozen=True)
class FairnessReport:
    prop: str
    holds: bool
    witness: dict | None = None

    def __bool__(self) -> bool:
        return self.holds


def _ok(prop: str) -> FairnessReport:
    return FairnessReport(prop, True)


def _envy(prop: str, envier: int, envied: int, lhs, rhs, **extra) -> FairnessReport:
    return FairnessReport(prop, False, {"envier": envier, "envied": envied,
                                        "lhs": lhs, "rhs": rhs, **extra})


def is_ef(inst: Instance, alloc: Allocation) -> FairnessReport:
    alloc.check_complete(inst)
    for i in inst.agents:
        own = bundle_disutility(inst, i, alloc.bundles[i])
        for h in inst.agents:
            other = bundle_disutility(inst, i, alloc.bundles[h])
            if h != i and own > other:
                return _envy("ef", i, h, own, other)
    return _ok("ef")


def is_ef1(inst: Instance, alloc: Allocation) -> FairnessReport:
    alloc.check_complete(inst)
    for i in inst.agents:
        own = disutility_less_one(inst, i, alloc.bundles[i])
        for h in inst.agents:
            if h == i:
                continue
            other = bundle_disutility(inst, i, alloc.bundles[h])
            if own > other:
                return _envy("ef1", i, h, own, other)
    return _ok("ef1")


def efx_cost(inst: Instance, i: int, S: Iterable[int]) -> Fraction:
    """Cost of ``S`` for ``i`` after dropping its cheapest chore (0 if empty)."""
    vals = [inst.d(i, j) for j in S]
    if not vals:
        return Fraction(0)
    return sum(vals, Fraction(0)) - min(vals)


def efx_envies(inst: Instance, alloc: Allocation, i: int, h: int) -> bool:
    return efx_cost(inst, i, alloc.bundles[i]) > bundle_disutility(inst, i, alloc.bundles[h])


def is_efx(inst: Instance, alloc: Allocation) -> FairnessReport:
    alloc.check_complete(inst)
    for i in inst.agents:
        own = efx_cost(inst, i, alloc.bundles[i])
        for h in inst.agents:
            if h == i:
                continue
            other = bundle_disutility(inst, i, alloc.bundles[h])
            if own > other:
                return _envy("efx", i, h, own, other)
    return _ok("efx")


def is_ce(inst: Instance, alloc: Allocation, pay: Sequence[Fraction]) -> FairnessReport:
    alloc.check_complete(inst)
    if len(pay) != inst.m:
        raise InputError(f"payment vector has {len(pay)} entries for {inst.m} chores")
    for j, p in enumerate(pay):
        if p <= 0:
            return FairnessReport("ce", False, {"chore": j, "payment": p, "reason": "nonpositive payment"})
    if inst.m == 0:
        return _ok("ce")
    for i in inst.agents:
        alpha = mpb_ratio(inst, pay, i)
        for j in sorted(alloc.bundles[i]):
            ratio = inst.d(i, j) / pay[j]
            if ratio != alpha:
                return FairnessReport("ce", False, {"agent": i, "chore": j, "ratio": ratio,
                                                    "mpb_ratio": alpha, "reason": "non-MPB chore"})
    return _ok("ce")


def pef1_envies(alloc: Allocation, pay: Sequence[Fraction], i: int, h: int) -> bool:
    return earning_less_one(pay, alloc.bundles[i]) > earning(pay, alloc.bundles[h])


def is_pef1(inst: Instance, alloc: Allocation, pay: Sequence[Fraction]) -> FairnessReport:
    alloc.check_complete(inst)
    for i in inst.agents:
        own = earning_less_one(pay, alloc.bundles[i])
        for h in inst.agents:
            other = earning(pay, alloc.bundles[h])
            if h != i and own > other:
                return _envy("pef1", i, h, own, other)
    return _ok("pef1")


def select_big_earner(alloc: Allocation, pay: Sequence[Fraction], A: Iterable[int]) -> int:
    agents = sorted(A)
    if not agents:
        raise InputError("cannot select a big earner from no agents")
    return max(agents, key=lambda i: (earning_less_one(pay, alloc.bundles[i]), -i))


def select_least_earner(alloc: Allocation, pay: Sequence[Fraction], A: Iterable[int]) -> int:
    agents = sorted(A)
    if not agents:
        raise InputError("cannot select a least earner from no agents")
    return min(agents, key=lambda i: (earning(pay, alloc.bundles[i]), i))


BALANCE_MODES = ("total", "one_chores", "k_chores", "fully")


def _is_unit_normal(inst: Instance) -> bool:
    rest = {v for row in inst.disutility for v in row} - {1}
    return len(rest) <= 1 and all(v > 1 for v in rest)


def _spread(counts: list[int]) -> int:
    return max(counts) - min(counts) if counts else 0


def is_balanced(inst: Instance, alloc: Allocation, mode: str = "total",
                agents: Iterable[int] | None = None) -> bool:
    """Bundle-count spread at most one, over ``agents`` (default: everybody).

    The ``one_chores`` and ``k_chores`` modes need costs normalised to {1, k}.
    """
    if mode not in BALANCE_MODES:
        raise InputError(f"unknown balance mode {mode!r}")
    group = list(inst.agents if agents is None else agents)
    sizes = [len(alloc.bundles[i]) for i in group]
    if mode == "total":
        return _spread(sizes) <= 1
    if not _is_unit_normal(inst):
        raise InputError(f"balance mode {mode!r} needs costs normalised to {{1, k}}")
    ones = [sum(1 for j in alloc.bundles[i] if inst.d(i, j) == 1) for i in group]
    highs = [s - o for s, o in zip(sizes, ones)]
    if mode == "one_chores":
        return _spread(ones) <= 1
    if mode == "k_chores":
        return _spread(highs) <= 1
    return _spread(sizes) <= 1 and _spread(ones) <= 1 and _spread(highs) <= 1


def is_cost_minimizing(inst: Instance, alloc: Allocation) -> bool:
    alloc.check_complete(inst)
    for i, bundle in enumerate(alloc.bundles):
        for j in bundle:
            if inst.d(i, j) != min(inst.d(h, j) for h in inst.agents):
                return False
    return True
