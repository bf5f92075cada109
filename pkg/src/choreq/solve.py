"""One entry point for every solver, plus certificate construction."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import certify, oracle
from .certify import FairnessReport
from .core import Allocation, InputError, Instance, Payments, Trace
from .solver_bivalued import (
    AgentGroups,
    balanced_ef1_fpo,
    efx_fpo_three_bivalued,
    rescale_bivalued,
    solve_two_ary,
)
from .solver_three import solve_three_agents
from .solver_twotype import solve_two_type

ALGORITHMS = ("three-agents", "two-type", "bivalued-balanced", "bivalued-efx", "two-ary")

ADVERTISED = {
    "three-agents": ("ef1", "ce", "fpo"),
    "two-type": ("ef1", "pef1", "ce", "fpo"),
    "bivalued-balanced": ("balanced", "ef1", "ce", "fpo"),
    "bivalued-efx": ("efx", "ce", "fpo"),
    "two-ary": ("ef1", "po"),
}


@dataclass
class SolveResult:
    algorithm: str
    instance: Instance
    allocation: Allocation
    payments: Payments | None
    trace: Trace
    trace_instance: Instance
    groups: AgentGroups | None = None

    @property
    def properties(self) -> tuple[str, ...]:
        props = ADVERTISED[self.algorithm]
        return props if self.payments is not None else tuple(p for p in props if p != "ce")


def solve(algorithm: str, inst: Instance, debug: bool = False) -> SolveResult:
    """Run ``algorithm`` on ``inst``.

    Payments from the bivalued solvers refer to rescaled costs; rescaling an
    agent's costs leaves its MPB set unchanged, so they support the original
    instance as well.
    """
    if algorithm == "three-agents":
        alloc, pay, trace = solve_three_agents(inst, debug)
        return SolveResult(algorithm, inst, alloc, pay, trace, _trace_instance(inst, pay))
    if algorithm == "two-type":
        alloc, pay, trace = solve_two_type(inst, debug)
        return SolveResult(algorithm, inst, alloc, pay, trace, _trace_instance(inst, pay))
    if algorithm == "bivalued-balanced":
        market = balanced_ef1_fpo(rescale_bivalued(inst), debug)
        return SolveResult(algorithm, inst, market.alloc, market.pay, market.trace, inst, market.groups)
    if algorithm == "bivalued-efx":
        market = efx_fpo_three_bivalued(rescale_bivalued(inst), debug)
        return SolveResult(algorithm, inst, market.alloc, market.pay, market.trace, inst, market.groups)
    if algorithm == "two-ary":
        alloc, report = solve_two_ary(inst, debug)
        return SolveResult(algorithm, inst, alloc, None, Trace(), inst, report.groups)
    raise InputError(f"unknown algorithm {algorithm!r}; choose from {', '.join(ALGORITHMS)}")


def _trace_instance(inst: Instance, pay: Payments | None) -> Instance:
    # Without payments the solver ran on the instance with zero-cost chores removed.
    if pay is not None:
        return inst
    from .core import preprocess_zero_chores
    return preprocess_zero_chores(inst).instance


def check_property(inst: Instance, alloc: Allocation, prop: str,
                   payments: Payments | None = None, limit: int | None = None) -> FairnessReport:
    """Evaluate one named property; ``ce`` and ``pef1`` need payments."""
    if prop == "ef":
        return certify.is_ef(inst, alloc)
    if prop == "ef1":
        return certify.is_ef1(inst, alloc)
    if prop == "efx":
        return certify.is_efx(inst, alloc)
    if prop in ("ce", "pef1"):
        if payments is None:
            raise InputError(f"property {prop} needs payments")
        return (certify.is_ce if prop == "ce" else certify.is_pef1)(inst, alloc, payments)
    if prop == "balanced":
        return FairnessReport(prop, certify.is_balanced(inst, alloc, "total"),
                              None if certify.is_balanced(inst, alloc, "total")
                              else {"sizes": alloc.sizes()})
    if prop == "fpo":
        gap = oracle.fpo_gap(inst, alloc)
        return FairnessReport(prop, gap == 0, None if gap == 0 else {"total_cost_saving": gap})
    if prop == "po":
        ok = oracle.is_po_bruteforce(inst, alloc, limit)
        return FairnessReport(prop, ok, None if ok else {"reason": "dominated by an integral allocation"})
    raise InputError(f"unknown property {prop!r}")


def certificate(result: SolveResult, limit: int | None = None) -> dict[str, FairnessReport]:
    return {p: check_property(result.instance, result.allocation, p, result.payments, limit)
            for p in result.properties}


def witness_to_obj(inst: Instance, report: FairnessReport) -> dict:
    from .io import encode_info
    out: dict = {"holds": report.holds}
    if report.witness is not None:
        out["witness"] = encode_info(inst, report.witness)
    return out


def total_cost(inst: Instance, alloc: Allocation) -> Fraction:
    return sum((inst.d(i, j) for i, b in enumerate(alloc.bundles) for j in b), Fraction(0))
