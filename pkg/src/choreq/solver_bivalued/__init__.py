"""Algorithms for instances whose costs take two values per agent."""

from .balanced import audit_balanced, balanced_ef1_fpo
from .efx import (
    efx_fpo_three_bivalued,
    fix_one_extra_K,
    fix_R2_pair_top,
    fix_R2_singleton_top,
    fix_two_extra_K,
    reduce_efx_envy,
)
from .groups import MPBGraph, group_property_violations, make_init_groups
from .market import AgentGroups, Market
from .normal import BivaluedNormal, rescale_bivalued, rescale_two_ary
from .two_ary import TwoAryReport, solve_two_ary

__all__ = [
    "AgentGroups",
    "BivaluedNormal",
    "MPBGraph",
    "Market",
    "TwoAryReport",
    "audit_balanced",
    "balanced_ef1_fpo",
    "efx_fpo_three_bivalued",
    "group_property_violations",
    "fix_R2_pair_top",
    "fix_R2_singleton_top",
    "fix_one_extra_K",
    "fix_two_extra_K",
    "make_init_groups",
    "reduce_efx_envy",
    "rescale_bivalued",
    "rescale_two_ary",
    "solve_two_ary",
]
