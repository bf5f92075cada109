"""Fair allocation of indivisible chores with exact rational arithmetic."""

from .certify import (
    FairnessReport,
    is_balanced,
    is_ce,
    is_ef,
    is_ef1,
    is_efx,
    is_pef1,
    select_big_earner,
    select_least_earner,
)
from .core import (
    AlgorithmDefect,
    Allocation,
    BudgetExceeded,
    ChoreqError,
    InputError,
    Instance,
    InstanceClass,
    Trace,
    classify,
)
from .generate import generate
from .io import parse_instance, serialize_instance
from .oracle import find_allocations, is_fpo_lp, is_po_bruteforce, verify_nonexistence_efx_fpo
from .solve import ALGORITHMS, SolveResult, certificate, check_property, solve
from .solver_bivalued import balanced_ef1_fpo, efx_fpo_three_bivalued, solve_two_ary
from .solver_three import solve_three_agents
from .solver_twotype import round_robin, solve_two_type

__all__ = [
    "ALGORITHMS",
    "AlgorithmDefect",
    "Allocation",
    "BudgetExceeded",
    "ChoreqError",
    "FairnessReport",
    "InputError",
    "Instance",
    "InstanceClass",
    "SolveResult",
    "Trace",
    "balanced_ef1_fpo",
    "certificate",
    "check_property",
    "classify",
    "efx_fpo_three_bivalued",
    "find_allocations",
    "generate",
    "is_balanced",
    "is_ce",
    "is_ef",
    "is_ef1",
    "is_efx",
    "is_fpo_lp",
    "is_pef1",
    "is_po_bruteforce",
    "parse_instance",
    "round_robin",
    "select_big_earner",
    "select_least_earner",
    "serialize_instance",
    "solve",
    "solve_three_agents",
    "solve_two_ary",
    "solve_two_type",
    "verify_nonexistence_efx_fpo",
]
