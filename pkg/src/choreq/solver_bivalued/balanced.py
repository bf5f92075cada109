"""Balanced EF1 + fPO allocations for bivalued instances, and a trace auditor."""

from __future__ import annotations

from ..certify import is_balanced, is_ce, is_cost_minimizing, is_ef1
from ..core import AlgorithmDefect, Allocation, Instance, mpb_ratio, mpb_set
from .groups import make_init_groups
from .market import Market
from .normal import BivaluedNormal


def balanced_ef1_fpo(normal: BivaluedNormal, debug: bool = False) -> Market:
    """Group the agents, deal out the K-chores, then even out bundle sizes.

    Chores only move from a largest bundle to a smallest one along MPB edges;
    when none is available the giver's group has its payments raised by ``k``.
    The returned market carries allocation, payments, groups and trace.
    """
    market = make_init_groups(normal, debug)
    groups = market.groups
    inst = normal.instance
    agents = list(inst.agents)
    k_count = [0] * inst.n
    for j in normal.K:
        i = min(agents, key=lambda i: (market.size(i), -groups.of(i), k_count[i], i))
        market.alloc.bundles[i].add(j)
        k_count[i] += 1
        market.record("assign_k", chore=j, dst=i)
    market.record("balance_start")
    market.check_ce("after K-chores")
    transfers = raises = 0
    transfer_cap, raise_cap = inst.m * inst.n, inst.n
    while agents:
        a = min(agents, key=lambda i: (-market.size(i), groups.of(i), i))
        ell = min(agents, key=lambda i: (market.size(i), -groups.of(i), len(market.highs(i)), i))
        if market.size(ell) >= market.size(a) - 1:
            break
        candidates = sorted(market.x(a) & market.mpb(ell))
        if candidates:
            transfers += 1
            if transfers > transfer_cap:
                raise AlgorithmDefect(f"balancing exceeded {transfer_cap} transfers")
            market.transfer(candidates[0], ell, src_group=groups.of(a), dst_group=groups.of(ell))
        else:
            raises += 1
            if raises > raise_cap:
                raise AlgorithmDefect(f"balancing exceeded {raise_cap} payment raises")
            r = groups.of(a)
            groups.raised[r] = True
            chores = set().union(*(market.x(i) for i in groups.groups[r]))
            market.raise_payments(chores, group=r)
        market.check_ce("balancing step")
    market.record("balanced")
    return market


def _one_count(inst: Instance, bundles, i: int) -> int:
    return sum(1 for j in bundles[i] if inst.d(i, j) == 1)


def audit_balanced(market: Market) -> list[str]:
    """Replay a balancing trace and list every broken structural guarantee.

    Checked at each step of the balancing phase: size dominance of higher
    groups, full balance inside groups, the payment-raise conditions, raised
    agents holding only cheap chores nobody unraised wants, and the direction
    of every transfer. The final state must be balanced, EF1 and a CE.
    """
    inst = market.inst
    k = market.k
    groups = market.groups
    R = len(groups)
    gof = {i: groups.of(i) for i in inst.agents}
    problems: list[str] = []
    events = market.trace.events
    start = next(t for t, e in enumerate(events) if e.kind == "balance_start")
    raised_order: list[int] = []
    gained: set[int] = set()
    lost: set[int] = set()
    transfers = raises = 0

    for t in range(start, len(events)):
        ev = events[t]
        bundles, pay = ev.bundles, list(ev.payments)
        if ev.kind == "transfer":
            transfers += 1
            src, dst = gof[ev.info["src"]], gof[ev.info["dst"]]
            if not src < dst:
                problems.append(f"step {t}: transfer from group {src} to group {dst} is not downward")
            lost.add(src)
            gained.add(dst)
        elif ev.kind == "raise":
            raises += 1
            r = ev.info["group"]
            if r in raised_order:
                problems.append(f"step {t}: group {r} raised twice")
            if raised_order and r < raised_order[-1]:
                problems.append(f"step {t}: group {r} raised after group {raised_order[-1]}")
            raised_order.append(r)
        if gained & lost:
            problems.append(f"step {t}: groups {sorted(gained & lost)} both gained and lost chores")
        for r in lost:
            if r not in raised_order:
                problems.append(f"step {t}: group {r} lost a chore without being raised")
        sizes = [len(b) for b in bundles]
        for i in inst.agents:
            for h in inst.agents:
                if gof[i] < gof[h] and sizes[h] > sizes[i] + 1:
                    problems.append(f"step {t}: agent {h} holds {sizes[h]} chores, more than "
                                    f"one above agent {i} of a higher group")
        alloc = Allocation([set(b) for b in bundles])
        for r, members in enumerate(groups.groups):
            if not is_balanced(inst, alloc, "fully", members):
                problems.append(f"step {t}: group {r} is not fully balanced")
        raised_agents = [i for i in inst.agents if gof[i] in raised_order]
        unraised = [i for i in inst.agents if gof[i] not in raised_order]
        for i in inst.agents:
            want = 1 / k if i in raised_agents else 1
            if mpb_ratio(inst, pay, i) != want:
                problems.append(f"step {t}: agent {i} has MPB ratio {mpb_ratio(inst, pay, i)}, expected {want}")
        for u in unraised:
            mpb_u = mpb_set(inst, pay, u)
            for h in raised_agents:
                if not set(bundles[h]) <= mpb_u:
                    problems.append(f"step {t}: chores of raised agent {h} not MPB for unraised agent {u}")
                for j in bundles[h]:
                    if inst.d(h, j) != 1 or inst.d(u, j) != k:
                        problems.append(f"step {t}: raised agent {h} holds chore {j} that is not "
                                        f"cheap for it and costly for agent {u}")
            for j in bundles[u]:
                if inst.d(u, j) != 1 and any(inst.d(v, j) != k for v in unraised):
                    problems.append(f"step {t}: k-chore {j} of agent {u} is cheap for an unraised agent")
    if transfers > inst.m * inst.n:
        problems.append(f"{transfers} transfers exceed the cap {inst.m * inst.n}")
    if raises > inst.n or len(raised_order) > R:
        problems.append(f"{raises} payment raises exceed the cap {inst.n}")
    final = market.alloc
    if not is_balanced(inst, final, "total"):
        problems.append("final allocation is not balanced")
    if not is_ef1(inst, final):
        problems.append("final allocation is not EF1")
    if not is_ce(inst, final, market.pay):
        problems.append("final market is not a competitive equilibrium")
    if transfers == 0 and not is_cost_minimizing(inst, final):
        problems.append("no transfers yet the final allocation is not cost-minimising")
    return problems
