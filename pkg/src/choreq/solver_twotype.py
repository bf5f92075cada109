"""EF1 + fPO allocations when agents come in two types.

Chores are split into a part served by the first type and a part served by
the second. Each part is dealt out by round robin; chores migrate from the
first part to the second, and payments of the first part are raised when no
chore is attractive to the second type yet.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .certify import is_ce, is_pef1
from .core import (
    AlgorithmDefect,
    Allocation,
    InputError,
    Instance,
    Payments,
    Trace,
    preprocess_zero_chores,
)


def round_robin(agents: Sequence[int], chores: Iterable[int], inst: Instance,
                alloc: Allocation | None = None) -> Allocation:
    """Agents pick in cyclic order; each takes its cheapest remaining chore."""
    if alloc is None:
        alloc = Allocation.empty(inst.n)
    remaining = sorted(chores)
    if not agents:
        if remaining:
            raise InputError("round robin over chores needs at least one agent")
        return alloc
    turn = 0
    while remaining:
        i = agents[turn % len(agents)]
        row = inst.disutility[i]
        pick = min(remaining, key=lambda j: (row[j], j))
        remaining.remove(pick)
        alloc.bundles[i].add(pick)
        turn += 1
    return alloc


@dataclass
class TwoTypePartition:
    N1: list[int]
    N2: list[int]
    M1: set[int]
    M2: set[int]
    payments: Payments

    def allocate(self, inst: Instance) -> Allocation:
        alloc = round_robin(self.N1, self.M1, inst)
        return round_robin(self.N2, self.M2, inst, alloc)


def split_types(inst: Instance) -> tuple[list[int], list[int]]:
    first = inst.disutility[0] if inst.n else None
    N1 = [i for i in inst.agents if inst.disutility[i] == first]
    N2 = [i for i in inst.agents if inst.disutility[i] != first]
    if N2 and len({inst.disutility[i] for i in N2}) != 1:
        raise InputError("instance has more than two distinct cost functions")
    return N1, N2


def _ratio_min(inst: Instance, i: int, pay: Sequence[Fraction], S: Iterable[int]) -> Fraction:
    return min(inst.d(i, j) / pay[j] for j in S)


def raise_factor_two_type(inst: Instance, part: TwoTypePartition) -> Fraction:
    """Factor that makes the cheapest first-part chore MPB for the second type."""
    if not part.M1 or not part.M2:
        raise AlgorithmDefect("raise needs both chore parts nonempty")
    rep = part.N2[0]
    gamma = _ratio_min(inst, rep, part.payments, part.M1) / _ratio_min(inst, rep, part.payments, part.M2)
    if gamma <= 1:
        raise AlgorithmDefect(f"raise factor {gamma} is not a strict raise")
    return gamma


def loop_cap(m: int) -> int:
    return 2 * m + 2


def _solve_positive(inst: Instance, debug: bool) -> tuple[Allocation, Payments, Trace]:
    N1, N2 = split_types(inst)
    trace = Trace()
    if not N2:
        pay = list(inst.disutility[0]) if inst.n else []
        alloc = round_robin(N1, inst.chores, inst)
        trace.record("round_robin", alloc, pay)
        return alloc, pay, trace
    rep = N2[0]
    part = TwoTypePartition(N1, N2, set(inst.chores), set(), list(inst.disutility[N1[0]]))
    alloc = part.allocate(inst)
    trace.record("round_robin", alloc, part.payments)
    iterations = 0
    while not is_pef1(inst, alloc, part.payments):
        iterations += 1
        if iterations > loop_cap(inst.m):
            raise AlgorithmDefect(f"two-type solver exceeded {loop_cap(inst.m)} iterations")
        pay = part.payments
        alpha2 = min(inst.d(rep, j) / pay[j] for j in inst.chores)
        movable = sorted(j for j in part.M1 if inst.d(rep, j) / pay[j] == alpha2)
        if movable:
            j = movable[0]
            part.M1.discard(j)
            part.M2.add(j)
            alloc = part.allocate(inst)
            trace.record("transfer", alloc, pay, chore=j)
        else:
            gamma = raise_factor_two_type(inst, part)
            for j in part.M1:
                pay[j] *= gamma
            trace.record("payment_raise", alloc, pay, factor=gamma)
        if debug and not is_ce(inst, alloc, part.payments):
            raise AlgorithmDefect("market left competitive equilibrium")
    return alloc, part.payments, trace


def solve_two_type(inst: Instance, debug: bool = False) -> tuple[Allocation, Payments | None, Trace]:
    """Return a pEF1 competitive equilibrium (hence EF1 and fPO) and its trace.

    A single-type instance is dealt out by plain round robin with payments
    equal to the shared costs.
    """
    if inst.n == 0:
        raise InputError("instance has no agents")
    split_types(inst)
    pre = preprocess_zero_chores(inst)
    alloc, pay, trace = _solve_positive(pre.instance, debug)
    if pre.trivial:
        return alloc, pay, trace
    return pre.lift(alloc), None, trace
