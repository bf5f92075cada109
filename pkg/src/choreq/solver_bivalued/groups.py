"""MPB graph search and the initial grouping of agents."""

from __future__ import annotations

from collections import deque
from fractions import Fraction
from typing import Iterable

from ..certify import select_big_earner
from ..core import AlgorithmDefect, Allocation, earning, earning_less_one
from .market import AgentGroups, Market
from .normal import BivaluedNormal


class MPBGraph:
    """Special-path search in the bipartite agent/chore MPB graph.

    An edge leads from agent ``u`` to agent ``v`` through chore ``j`` when
    ``u`` holds ``j`` and ``j`` is MPB for ``v``. Only ``agents`` take part.
    """

    def __init__(self, market: Market, agents: Iterable[int]):
        self.market = market
        self.agents = sorted(agents)
        self.mpb = {i: market.mpb(i) for i in self.agents}

    def tree(self, source: int) -> dict[int, tuple[int, int] | None]:
        """Breadth-first parents ``v -> (u, j)``; lower indices are expanded first."""
        parent: dict[int, tuple[int, int] | None] = {source: None}
        queue = deque([source])
        while queue:
            u = queue.popleft()
            for j in sorted(self.market.x(u)):
                for v in self.agents:
                    if v not in parent and j in self.mpb[v]:
                        parent[v] = (u, j)
                        queue.append(v)
        return parent

    def levels(self, source: int) -> dict[int, int]:
        """Half the shortest special-path length; ``n`` for unreachable agents."""
        parent = self.tree(source)
        n = self.market.inst.n
        out = {}
        for v in self.agents:
            if v not in parent:
                out[v] = n
                continue
            depth, node = 0, v
            while parent[node] is not None:
                node = parent[node][0]
                depth += 1
            out[v] = depth
        return out

    def component(self, source: int) -> list[int]:
        return sorted(self.tree(source))

    def path(self, source: int, target: int) -> list[int] | None:
        """Shortest alternating path as ``[i0, j1, i1, ..., jl, il]``."""
        parent = self.tree(source)
        if target not in parent:
            return None
        path = [target]
        node = target
        while parent[node] is not None:
            u, j = parent[node]
            path[:0] = [u, j]
            node = u
        return path


def make_init_groups(normal: BivaluedNormal, debug: bool = False) -> Market:
    """Cost-minimising allocation of the L-chores, split into ordered groups.

    Starting from each L-chore at the lowest-index agent finding it cheap, the
    current big earner pushes chores down shortest alternating paths until no
    agent in its component earns less than it does without its top chore; that
    component then becomes the next group.
    """
    inst = normal.instance
    k = normal.k
    pay = [Fraction(1)] * inst.m
    for j in normal.K:
        pay[j] = k
    alloc = Allocation.empty(inst.n)
    for j in normal.L:
        owner = next(i for i in inst.agents if inst.d(i, j) == 1)
        alloc.bundles[owner].add(j)
    market = Market(normal, alloc, pay, debug=debug)
    market.record("init")
    remaining = set(inst.agents)
    groups: list[list[int]] = []
    cap = max(1, inst.m) * inst.n ** 2 + inst.n
    steps = 0
    while remaining:
        steps += 1
        if steps > cap:
            raise AlgorithmDefect(f"grouping exceeded {cap} steps")
        b = select_big_earner(alloc, pay, remaining)
        graph = MPBGraph(market, remaining)
        tree = graph.tree(b)
        top = earning_less_one(pay, alloc.bundles[b])
        targets = [i for i in sorted(tree) if top > earning(pay, alloc.bundles[i])]
        if targets:
            _, j = tree[targets[0]]
            market.transfer(j, targets[0], phase="groups", big=b)
            continue
        group = sorted(tree)
        groups.append(group)
        remaining -= set(group)
        market.record("group", agents=group, big=b)
    market.groups = AgentGroups(groups)
    return market


def group_property_violations(market: Market) -> list[str]:
    """Check the three structural properties of freshly made groups.

    Sizes of the largest bundle weakly decrease from group to group, bundle
    sizes are balanced inside each group, and every chore of a higher group
    costs agents of lower groups the high value.
    """
    problems = []
    groups = market.groups.groups
    tops = [max(market.size(i) for i in g) for g in groups]
    if any(a < b for a, b in zip(tops, tops[1:])):
        problems.append(f"largest bundle sizes {tops} increase across groups")
    for r, g in enumerate(groups):
        sizes = [market.size(i) for i in g]
        if max(sizes) - min(sizes) > 1:
            problems.append(f"group {r} has unbalanced sizes {sizes}")
        for h in g:
            for lower in groups[r + 1:]:
                for i in lower:
                    cheap = [j for j in market.x(h) if market.is_one(i, j)]
                    if cheap:
                        problems.append(f"agent {i} finds chore {cheap[0]} of higher agent {h} cheap")
    return problems
