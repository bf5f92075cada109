"""Brute-force ground truth: enumeration, PO by dominance, fPO by exact LP."""

from __future__ import annotations

import itertools
import os
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from . import certify
from .core import (
    AlgorithmDefect,
    Allocation,
    BudgetExceeded,
    InputError,
    Instance,
    bundle_disutility,
)
from .lp import LpProblem

DEFAULT_ENUM_LIMIT = 10**7
PREDICATES = ("ef", "ef1", "efx", "pef1", "po", "fpo")


def enum_limit() -> int:
    raw = os.environ.get("CHOREQ_ENUM_LIMIT")
    if raw is None:
        return DEFAULT_ENUM_LIMIT
    try:
        return int(raw)
    except ValueError as exc:
        raise InputError(f"CHOREQ_ENUM_LIMIT is not an integer: {raw!r}") from exc


def _check_budget(inst: Instance, limit: int | None) -> None:
    limit = enum_limit() if limit is None else limit
    total = inst.n ** inst.m if inst.n else (1 if inst.m == 0 else 0)
    if total > limit:
        raise BudgetExceeded(f"{total} allocations exceed the enumeration budget {limit}")


def enumerate_owner_vectors(inst: Instance, limit: int | None = None) -> Iterator[tuple[int, ...]]:
    _check_budget(inst, limit)
    return itertools.product(range(inst.n), repeat=inst.m)


def enumerate_allocations(inst: Instance, limit: int | None = None) -> Iterator[Allocation]:
    """All ``n**m`` allocations, lexicographic in the chore-to-owner vector."""
    for owners in enumerate_owner_vectors(inst, limit):
        yield Allocation.from_owners(owners, inst.n)


def _cost_vectors(inst: Instance, limit: int | None) -> Iterator[tuple[tuple[int, ...], tuple[Fraction, ...]]]:
    for owners in enumerate_owner_vectors(inst, limit):
        costs = [Fraction(0)] * inst.n
        for j, i in enumerate(owners):
            costs[i] += inst.d(i, j)
        yield owners, tuple(costs)


def is_po_bruteforce(inst: Instance, alloc: Allocation, limit: int | None = None) -> bool:
    alloc.check_complete(inst)
    mine = [bundle_disutility(inst, i, alloc.bundles[i]) for i in inst.agents]
    for _, costs in _cost_vectors(inst, limit):
        if all(c <= v for c, v in zip(costs, mine)) and any(c < v for c, v in zip(costs, mine)):
            return False
    return True


def fpo_problem(inst: Instance, alloc: Allocation) -> LpProblem:
    """Total-cost LP over fractional allocations capped by each agent's current cost.

    Variable ``i*m + j`` is the share of chore ``j`` given to agent ``i``. The
    coverage equalities already bound every share by one.
    """
    n, m = inst.n, inst.m
    nv = n * m
    objective = [inst.d(i, j) for i in range(n) for j in range(m)]
    A_eq, A_ub = [], []
    for j in range(m):
        row = [Fraction(0)] * nv
        for i in range(n):
            row[i * m + j] = Fraction(1)
        A_eq.append(row)
    for i in range(n):
        row = [Fraction(0)] * nv
        for j in range(m):
            row[i * m + j] = inst.d(i, j)
        A_ub.append(row)
    caps = [bundle_disutility(inst, i, alloc.bundles[i]) for i in range(n)]
    return LpProblem(objective, A_eq, [Fraction(1)] * m, A_ub, caps)


def fpo_gap(inst: Instance, alloc: Allocation) -> Fraction:
    """Current total cost minus the best total reachable by a fractional dominator."""
    alloc.check_complete(inst)
    if inst.m == 0:
        return Fraction(0)
    problem = fpo_problem(inst, alloc)
    owners = alloc.owners(inst.m)
    # The current allocation is a basic feasible point: its own shares plus the slacks.
    basis = [owners[j] * inst.m + j for j in range(inst.m)]
    basis += [inst.n * inst.m + i for i in range(inst.n)]
    res = problem.solve(basis=basis)
    if res.status != "optimal":
        raise AlgorithmDefect(f"fPO program reported {res.status}; the allocation itself is feasible")
    total = sum((bundle_disutility(inst, i, alloc.bundles[i]) for i in inst.agents), Fraction(0))
    return total - res.value


def is_fpo_lp(inst: Instance, alloc: Allocation) -> bool:
    return fpo_gap(inst, alloc) == 0


def _check_predicates(predicates: Iterable[str]) -> set[str]:
    preds = set(predicates)
    unknown = preds - set(PREDICATES)
    if unknown:
        raise InputError(f"unknown predicate(s): {', '.join(sorted(unknown))}")
    return preds


_CHEAP = {"ef": certify.is_ef, "ef1": certify.is_ef1, "efx": certify.is_efx}


def find_allocations(inst: Instance, predicates: Iterable[str],
                     payments: Sequence[Fraction] | None = None,
                     limit: int | None = None) -> list[Allocation]:
    """Every allocation satisfying all ``predicates``, in enumeration order.

    ``pef1`` needs a payment vector.
    """
    preds = _check_predicates(predicates)
    if "pef1" in preds and payments is None:
        raise InputError("pef1 needs payments")
    ordered = [p for p in ("ef", "efx", "ef1", "pef1", "fpo", "po") if p in preds]
    found = []
    for alloc in enumerate_allocations(inst, limit):
        ok = True
        for p in ordered:
            if p in _CHEAP:
                ok = bool(_CHEAP[p](inst, alloc))
            elif p == "pef1":
                ok = bool(certify.is_pef1(inst, alloc, payments))
            elif p == "fpo":
                ok = is_fpo_lp(inst, alloc)
            else:
                ok = is_po_bruteforce(inst, alloc, limit)
            if not ok:
                break
        if ok:
            found.append(alloc)
    return found


def verify_nonexistence_efx_fpo(inst: Instance, limit: int | None = None) -> bool:
    """True iff no allocation of ``inst`` is simultaneously EFX and fPO."""
    for alloc in enumerate_allocations(inst, limit):
        if certify.is_efx(inst, alloc) and is_fpo_lp(inst, alloc):
            return False
    return True
