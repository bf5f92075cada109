"""EF1 + fPO allocations for exactly three agents.

All chores start with agent 0 at payments equal to its costs. The market is
then rebalanced by moving chores along MPB edges and by multiplicatively
lowering the payments of the poorer agents until the allocation is EF1.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .certify import is_ce, is_ef1, select_big_earner, select_least_earner
from .core import (
    AlgorithmDefect,
    Allocation,
    InputError,
    Instance,
    Payments,
    Trace,
    earning,
    mpb_ratio,
    mpb_set,
    preprocess_zero_chores,
)

STEP_FACTOR = 20


def step_cap(m: int) -> int:
    return STEP_FACTOR * max(m, 1) ** 2


def drop_factor(inst: Instance, pay: Sequence[Fraction], droppers: Iterable[int],
                targets: Iterable[int]) -> Fraction:
    """Largest factor by which the droppers' payments can fall before some target
    chore becomes MPB for one of them."""
    targets = list(targets)
    droppers = list(droppers)
    if not targets or not droppers:
        raise AlgorithmDefect("payment drop without droppers or target chores")
    beta = max(mpb_ratio(inst, pay, i) / (inst.d(i, j) / pay[j])
               for i in droppers for j in targets)
    if beta > 1:
        raise AlgorithmDefect(f"payment drop factor {beta} exceeds 1")
    return beta


def _scale(pay: Payments, chores: Iterable[int], factor: Fraction) -> None:
    for j in chores:
        pay[j] *= factor


def _solve_positive(inst: Instance, debug: bool) -> tuple[Allocation, Payments, Trace]:
    m = inst.m
    alloc = Allocation([set(inst.chores), set(), set()])
    pay: Payments = [inst.d(0, j) for j in inst.chores]
    trace = Trace()
    cap = step_cap(m)

    def transfer(j: int, src: int, dst: int) -> None:
        if debug and j not in mpb_set(inst, pay, dst):
            raise AlgorithmDefect(f"chore {j} moved to agent {dst} is not MPB for it")
        alloc.move(j, dst)
        trace.record("transfer", alloc, pay, chore=j, src=src, dst=dst)

    def drop(agents: list[int], beta: Fraction) -> None:
        chores = set().union(*(alloc.bundles[i] for i in agents))
        _scale(pay, chores, beta)
        trace.record("payment_drop", alloc, pay, agents=agents, factor=beta)

    while not is_ef1(inst, alloc):
        if len(trace) > cap:
            raise AlgorithmDefect(f"three-agent solver exceeded its step cap of {cap} events")
        if debug and not is_ce(inst, alloc, pay):
            raise AlgorithmDefect("market left competitive equilibrium")
        b = select_big_earner(alloc, pay, range(3))
        ell = select_least_earner(alloc, pay, range(3))
        if b == ell:
            raise AlgorithmDefect("big earner and least earner coincide on a non-EF1 allocation")
        h = 3 - b - ell
        trace.record("roles", alloc, pay, big=b, least=ell, middle=h)
        x_b, x_l, x_h = alloc.bundles[b], alloc.bundles[ell], alloc.bundles[h]
        mpb_l = mpb_set(inst, pay, ell)
        from_big = sorted(x_b & mpb_l)
        if from_big:
            transfer(from_big[0], b, ell)
            continue
        from_mid = sorted(x_h & mpb_l)
        if from_mid:
            e_l = earning(pay, x_l)
            e_h = earning(pay, x_h)
            envied = [j for j in from_mid if e_h - pay[j] > e_l]
            if envied:
                transfer(envied[0], h, ell)
                continue
            big_to_mid = sorted(x_b & mpb_set(inst, pay, h))
            if big_to_mid:
                transfer(big_to_mid[0], b, h)
            else:
                drop([ell, h], drop_factor(inst, pay, [ell, h], x_b))
        else:
            drop([ell], drop_factor(inst, pay, [ell], x_b | x_h))
    if debug and not is_ce(inst, alloc, pay):
        raise AlgorithmDefect("final market is not a competitive equilibrium")
    return alloc, pay, trace


def solve_three_agents(inst: Instance, debug: bool = False) -> tuple[Allocation, Payments | None, Trace]:
    """Return an EF1 and fPO allocation, its supporting payments and the event trace.

    Chores some agent finds free are handed out up front; in that case no
    payment vector supports the merged allocation and ``None`` is returned for it.
    """
    if inst.n != 3:
        raise InputError(f"the three-agent solver requires exactly 3 agents, got {inst.n}")
    pre = preprocess_zero_chores(inst)
    alloc, pay, trace = _solve_positive(pre.instance, debug)
    if pre.trivial:
        return alloc, pay, trace
    return pre.lift(alloc), None, trace
