"""Mutable market state shared by the bivalued algorithms."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from ..certify import efx_envies, is_ce, is_efx
from ..core import AlgorithmDefect, Allocation, InputError, Payments, Trace, mpb_set
from .normal import BivaluedNormal


@dataclass
class AgentGroups:
    """Ordered partition of the agents; group 0 is the highest."""

    groups: list[list[int]]
    raised: list[bool] = field(default_factory=list)

    def __post_init__(self):
        if not self.raised:
            self.raised = [False] * len(self.groups)

    def of(self, i: int) -> int:
        for r, group in enumerate(self.groups):
            if i in group:
                return r
        raise InputError(f"agent {i} is in no group")

    def __len__(self) -> int:
        return len(self.groups)


@dataclass
class Market:
    normal: BivaluedNormal
    alloc: Allocation
    pay: Payments
    groups: AgentGroups | None = None
    trace: Trace = field(default_factory=Trace)
    debug: bool = False

    def __post_init__(self):
        self.K = set(self.normal.K)

    @property
    def inst(self):
        return self.normal.instance

    @property
    def k(self) -> Fraction:
        return self.normal.k

    @property
    def agents(self) -> range:
        return self.inst.agents

    def x(self, i: int) -> set[int]:
        return self.alloc.bundles[i]

    def size(self, i: int) -> int:
        return len(self.alloc.bundles[i])

    def is_one(self, i: int, j: int) -> bool:
        return self.inst.d(i, j) == 1

    def ones(self, i: int) -> set[int]:
        return {j for j in self.x(i) if self.is_one(i, j)}

    def highs(self, i: int) -> set[int]:
        return {j for j in self.x(i) if not self.is_one(i, j)}

    def ones_for(self, viewer: int, S: Iterable[int]) -> list[int]:
        """Chores of ``S`` costing ``viewer`` exactly 1, in index order."""
        return sorted(j for j in S if self.is_one(viewer, j))

    def mpb(self, i: int) -> set[int]:
        return mpb_set(self.inst, self.pay, i)

    def efx_envies(self, i: int, h: int) -> bool:
        return efx_envies(self.inst, self.alloc, i, h)

    def envy_pairs(self) -> list[tuple[int, int]]:
        return [(i, h) for i in self.agents for h in self.agents if i != h and self.efx_envies(i, h)]

    def is_efx(self) -> bool:
        return bool(is_efx(self.inst, self.alloc))

    def record(self, kind: str, **info) -> None:
        self.trace.record(kind, self.alloc, self.pay, **info)

    def check_ce(self, where: str) -> None:
        if self.debug and not is_ce(self.inst, self.alloc, self.pay):
            raise AlgorithmDefect(f"market left competitive equilibrium ({where})")

    # Mutations -------------------------------------------------------------

    def transfer(self, j: int | None, to: int, **info) -> None:
        if j is None:
            raise AlgorithmDefect(f"no chore available to transfer to agent {to}")
        if self.debug and j not in self.mpb(to):
            raise AlgorithmDefect(f"chore {j} is not MPB for receiving agent {to}")
        src = self.alloc.move(j, to)
        if src != to:
            self.record("transfer", chore=j, src=src, dst=to, **info)

    def swap(self, j1: int | None, j2: int | None, **info) -> None:
        if j1 is None or j2 is None:
            raise AlgorithmDefect("swap is missing a chore")
        o1, o2 = self.alloc.owner_of(j1), self.alloc.owner_of(j2)
        if o1 == o2:
            raise AlgorithmDefect(f"swap of chores {j1} and {j2} held by the same agent")
        if self.debug and (j1 not in self.mpb(o2) or j2 not in self.mpb(o1)):
            raise AlgorithmDefect(f"swap of chores {j1} and {j2} breaks MPB")
        self.alloc.move(j1, o2)
        self.alloc.move(j2, o1)
        self.record("swap", chores=(j1, j2), agents=(o1, o2), **info)

    def raise_payments(self, chores: Iterable[int], **info) -> None:
        chores = sorted(chores)
        for j in chores:
            self.pay[j] *= self.k
        self.record("raise", chores=chores, factor=self.k, **info)
