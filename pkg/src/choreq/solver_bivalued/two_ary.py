"""EF1 + PO allocations for 2-ary instances whose cost ratios are large."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..certify import is_ef1
from ..core import Allocation, InputError, Instance
from .balanced import balanced_ef1_fpo
from .market import AgentGroups
from .normal import rescale_two_ary


@dataclass(frozen=True)
class TwoAryReport:
    ratios: tuple[Fraction | None, ...]
    groups: AgentGroups
    ef1: bool


def solve_two_ary(inst: Instance, debug: bool = False) -> tuple[Allocation, TwoAryReport]:
    """Balanced allocation computed as if every agent shared one high/low ratio.

    Each agent's high/low ratio must be at least the number of chores; below
    that the balanced outcome can fail to be EF1 under the true costs.
    """
    normal, ratios = rescale_two_ary(inst)
    for i, ratio in enumerate(ratios):
        if ratio is not None and ratio < inst.m:
            raise InputError(
                f"agent {inst.agent_ids[i]} has cost ratio {ratio} below the required bound "
                f"k_i >= m = {inst.m}")
    market = balanced_ef1_fpo(normal, debug)
    report = TwoAryReport(tuple(ratios), market.groups, bool(is_ef1(inst, market.alloc)))
    return market.alloc, report
