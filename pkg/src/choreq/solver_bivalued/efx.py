"""EFX + fPO allocations for three agents with bivalued costs.

The balanced allocation is repaired by a handful of chore transfers and swaps,
chosen by how many agent groups the balancing phase produced. Every moved
chore is MPB for its receiver, so the market stays a competitive equilibrium.
"""

from __future__ import annotations

from fractions import Fraction

from ..core import AlgorithmDefect, Allocation, InputError
from .balanced import balanced_ef1_fpo
from .market import Market
from .normal import BivaluedNormal


def _first(chores) -> int | None:
    return min(chores) if chores else None


def _others(i: int) -> list[int]:
    return [h for h in range(3) if h != i]


def _guard(count: int, cap: int, what: str) -> None:
    if count > cap:
        raise AlgorithmDefect(f"{what} exceeded {cap} iterations")


def _k_count(market: Market, i: int) -> int:
    return len(market.highs(i))


def _k_chore(market: Market, i: int) -> int | None:
    """Lowest chore costing ``i`` the high value.

    On cost-minimising markets these are exactly the K-chores ``i`` holds;
    after the balancing phase an unraised agent's costly chores may also come
    from a raised group, and those cost every unraised agent the high value too.
    """
    return _first(market.highs(i))


def reduce_efx_envy(market: Market) -> Market:
    """Rotate the surplus K-chores until at most one EFX-envy remains, then repair it.

    Needs a cost-minimising market whose chores are fully balanced.
    """
    if market.is_efx():
        return market
    K = market.K
    extra = len(K) % 3
    x = market.x
    if extra == 2:
        i1 = min(range(3), key=lambda i: (_k_count(market, i), i))
        order = [i1, *_others(i1)]
        for step in range(3):
            low, giver, third = order[step % 3], order[(step + 1) % 3], order[(step + 2) % 3]
            if not (x(low) <= market.mpb(giver) and x(low) <= market.mpb(third)):
                break
            k_giver = _k_chore(market, giver)
            if market.size(giver) > market.size(low):
                market.transfer(k_giver, low, routine="reduce")
            else:
                market.swap(k_giver, _first(market.ones_for(giver, x(low))), routine="reduce")
        if not market.is_efx():
            fix_two_extra_K(market)
    elif extra == 1:
        i1 = max(range(3), key=lambda i: (_k_count(market, i), -i))
        order = [i1, *_others(i1)]
        for step in range(3):
            holder, recv, third = order[step % 3], order[(step + 1) % 3], order[(step + 2) % 3]
            if not (x(recv) | x(third)) <= market.mpb(holder):
                break
            k_holder = _k_chore(market, holder)
            if market.size(holder) > market.size(recv):
                market.transfer(k_holder, recv, routine="reduce")
            else:
                market.swap(k_holder, _first(market.ones_for(holder, x(recv))), routine="reduce")
        if not market.is_efx():
            fix_one_extra_K(market)
    if not market.is_efx():
        raise AlgorithmDefect("envy reduction ended without EFX")
    return market


def _single_envy(market: Market) -> tuple[int, int]:
    pairs = market.envy_pairs()
    if len(pairs) != 1:
        raise AlgorithmDefect(f"repair expects exactly one EFX-envy relation, found {pairs}")
    return pairs[0]


def fix_two_extra_K(market: Market) -> Market:
    """Remove the single EFX-envy towards the agent short of a K-chore."""
    envier, envied = _single_envy(market)
    c = min(range(3), key=lambda i: (_k_count(market, i), i))
    if envied != c:
        raise AlgorithmDefect(f"EFX-envy points at agent {envied}, expected agent {c}")
    b = envier
    a = 3 - b - c
    x, mpb = market.x, market.mpb
    j_c = _first(x(c) - mpb(a))
    cap = market.inst.m + 1

    def push_from(giver: int) -> None:
        market.transfer(_first(market.ones_for(c, x(giver))), c, routine="two_extra")

    if x(b) - mpb(c):
        market.swap(_k_chore(market, b), j_c, routine="two_extra")
    elif market.k <= 2:
        push_from(b)
    elif len(market.ones(a)) < 2:
        count = 0
        while market.efx_envies(b, c):
            count += 1
            _guard(count, cap, "two-extra transfer loop")
            push_from(b)
    elif x(a) & mpb(b) - mpb(c):
        market.transfer(_first(x(a) & mpb(b) - mpb(c)), b, routine="two_extra")
        market.swap(_k_chore(market, b), j_c, routine="two_extra")
    elif x(a) & mpb(c) - mpb(b):
        market.transfer(_first(x(a) & mpb(c) - mpb(b)), c, routine="two_extra")
        if market.efx_envies(b, a):
            push_from(b)
    elif len(x(a) - mpb(b) - mpb(c)) >= 2:
        if market.size(b) <= market.size(a):
            market.transfer(_k_chore(market, a), c, routine="two_extra")
        else:
            cheap_for_a = market.ones_for(a, x(b) | x(c))
            if cheap_for_a:
                k_a = _k_chore(market, a)
                market.transfer(cheap_for_a[0], a, routine="two_extra")
                market.transfer(k_a, c, routine="two_extra")
            else:
                market.transfer(_k_chore(market, b), a, routine="two_extra")
    else:
        count = 0
        while market.efx_envies(b, c):
            count += 1
            _guard(count, cap, "two-extra transfer loop")
            push_from(b if market.size(b) >= market.size(a) else a)
    return market


def fix_one_extra_K(market: Market) -> Market:
    """Remove the single EFX-envy of the agent holding the surplus K-chore."""
    a, b = _single_envy(market)
    top = max(range(3), key=lambda i: (_k_count(market, i), -i))
    if a != top:
        raise AlgorithmDefect(f"EFX-envy comes from agent {a}, expected agent {top}")
    c = 3 - a - b
    x, mpb = market.x, market.mpb
    L = set(market.normal.L)
    j_c = _first(x(c) - mpb(a))
    k_a = _k_chore(market, a)
    j_b = _first(market.ones_for(a, x(b)))
    cap = market.inst.m + 1

    if x(c) - mpb(b):
        market.swap(k_a, j_b, routine="one_extra")
        count = 0
        while market.efx_envies(b, a):
            count += 1
            _guard(count, cap, "one-extra transfer loop")
            market.transfer(_first(market.ones_for(a, x(b))), a, routine="one_extra")
    elif market.ones_for(c, x(b)):
        market.swap(market.ones_for(c, x(b))[0], j_c, routine="one_extra")
        if not market.is_efx():
            market.swap(k_a, _first(x(c) & L & mpb(a)), routine="one_extra")
        count = 0
        while market.efx_envies(c, a) or market.efx_envies(c, b):
            count += 1
            _guard(count, cap, "one-extra transfer loop")
            dst = a if market.size(a) < market.size(b) else b
            market.transfer(_first(x(c) & L & mpb(dst)), dst, routine="one_extra")
    elif len(market.ones(b)) == 1:
        market.swap(k_a, j_b, routine="one_extra")
    else:
        j_c_cheap_for_b = _first(market.ones_for(b, x(c)))
        market.transfer(k_a, c, routine="one_extra")
        market.transfer(j_c_cheap_for_b, b, routine="one_extra")
        market.transfer(j_b, a, routine="one_extra")
    return market


def fix_R2_singleton_top(market: Market) -> Market:
    """Repair when the top group is a single agent and the other two share a group."""
    if market.is_efx():
        return market
    a = market.groups.groups[0][0]
    N2 = market.groups.groups[1]
    b = max(N2, key=lambda i: (len(market.ones(i)), -_k_count(market, i), -i))
    c = N2[0] if N2[1] == b else N2[1]
    x = market.x
    if len(market.ones(a)) == len(market.ones(c)):
        return reduce_efx_envy(market)
    if market.size(a) < market.size(c):
        market.transfer(_k_chore(market, c), a, routine="r2_single")
    elif market.size(b) < market.size(a) or len(market.ones(b)) >= 3:
        candidates = x(a) & market.mpb(b)
        if not candidates:
            market.raise_payments(x(a), routine="r2_single")
            candidates = x(a) & market.mpb(b)
        market.transfer(_first(candidates), b, routine="r2_single")
    else:
        cheap_for_b = market.ones_for(b, x(c))
        if cheap_for_b:
            market.transfer(cheap_for_b[0], b, routine="r2_single")
        else:
            market.swap(_k_chore(market, c), _first(market.ones_for(c, x(b))), routine="r2_single")
    return market


def fix_R2_pair_top(market: Market) -> Market:
    """Repair when the top group holds two agents and the third is alone below."""
    if market.is_efx():
        return market
    N1 = market.groups.groups[0]
    c = market.groups.groups[1][0]
    a = max(N1, key=lambda i: (len(market.ones(i)), -_k_count(market, i), -i))
    b = N1[0] if N1[1] == a else N1[1]
    x = market.x
    if market.size(c) > market.size(a):
        if _k_count(market, c) > _k_count(market, b):
            market.transfer(_k_chore(market, c), a, routine="r2_pair")
        else:
            return reduce_efx_envy(market)
    elif len(market.ones(c)) >= len(market.ones(b)):
        return reduce_efx_envy(market)
    elif market.ones_for(b, x(c)):
        market.swap(market.ones_for(b, x(c))[0], _k_chore(market, b), routine="r2_pair")
    else:
        k_c = _k_chore(market, c)
        j_a = _first(market.ones_for(b, x(a)))
        market.transfer(k_c, a, routine="r2_pair")
        market.transfer(j_a, b, routine="r2_pair")
    return market


def _identical_greedy(normal: BivaluedNormal) -> Market:
    """Identical agents: costliest chores first, each to the currently cheapest bundle."""
    inst = normal.instance
    row = inst.disutility[0]
    alloc = Allocation.empty(inst.n)
    loads = [Fraction(0)] * inst.n
    for j in sorted(inst.chores, key=lambda j: (-row[j], j)):
        i = min(inst.agents, key=lambda i: (loads[i], i))
        alloc.bundles[i].add(j)
        loads[i] += row[j]
    market = Market(normal, alloc, list(row))
    market.record("greedy")
    return market


def efx_fpo_three_bivalued(normal: BivaluedNormal, debug: bool = False) -> Market:
    """EFX allocation with supporting payments for three bivalued agents."""
    inst = normal.instance
    if inst.n != 3:
        raise InputError(f"the EFX solver requires exactly 3 agents, got {inst.n}")
    if len(set(inst.disutility)) == 1:
        return _identical_greedy(normal)
    market = balanced_ef1_fpo(normal, debug)
    groups = market.groups.groups
    if len(groups) == 1:
        reduce_efx_envy(market)
    elif len(groups) == 2 and len(groups[0]) == 1:
        fix_R2_singleton_top(market)
    elif len(groups) == 2:
        fix_R2_pair_top(market)
    market.check_ce("after repair")
    if not market.is_efx():
        raise AlgorithmDefect("repair finished without an EFX allocation")
    return market
