"""Exact data model shared by every solver: instances, allocations, payments."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

Payments = list[Fraction]


class ChoreqError(Exception):
    """Base class for all library errors."""


class InputError(ChoreqError, ValueError):
    """Malformed or out-of-contract input."""


class BudgetExceeded(ChoreqError):
    """An enumeration or search exceeded its configured budget."""


class AlgorithmDefect(ChoreqError, RuntimeError):
    """An internal guarantee was broken (step cap, lost invariant, ...)."""


def to_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise InputError(f"floats are not exact, got {value!r}")
    try:
        return Fraction(value)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"not a rational number: {value!r}") from exc


@dataclass(frozen=True)
class Instance:
    agent_ids: tuple[str, ...]
    chore_ids: tuple[str, ...]
    disutility: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if len(set(self.agent_ids)) != len(self.agent_ids):
            raise InputError("duplicate agent id")
        if len(set(self.chore_ids)) != len(self.chore_ids):
            raise InputError("duplicate chore id")
        if len(self.disutility) != len(self.agent_ids):
            raise InputError(
                f"disutility has {len(self.disutility)} rows for {len(self.agent_ids)} agents")
        for i, row in enumerate(self.disutility):
            if len(row) != len(self.chore_ids):
                raise InputError(
                    f"row {i} has {len(row)} entries for {len(self.chore_ids)} chores")
            for j, v in enumerate(row):
                if v < 0:
                    raise InputError(f"negative disutility at ({i}, {j})")

    @classmethod
    def from_matrix(cls, rows: Sequence[Sequence], agent_ids=None, chore_ids=None) -> "Instance":
        matrix = tuple(tuple(to_fraction(v) for v in row) for row in rows)
        n = len(matrix)
        m = len(matrix[0]) if matrix else 0
        if agent_ids is None:
            agent_ids = [f"i{a + 1}" for a in range(n)]
        if chore_ids is None:
            chore_ids = [f"j{c + 1}" for c in range(m)]
        return cls(tuple(agent_ids), tuple(chore_ids), matrix)

    @property
    def n(self) -> int:
        return len(self.agent_ids)

    @property
    def m(self) -> int:
        return len(self.chore_ids)

    @property
    def agents(self) -> range:
        return range(self.n)

    @property
    def chores(self) -> range:
        return range(self.m)

    def d(self, i: int, j: int) -> Fraction:
        return self.disutility[i][j]

    def check_agent(self, i: int) -> None:
        if not 0 <= i < self.n:
            raise InputError(f"unknown agent index {i}")

    def check_chores(self, S: Iterable[int]) -> None:
        for j in S:
            if not 0 <= j < self.m:
                raise InputError(f"unknown chore index {j}")


@dataclass
class Allocation:
    """Integral allocation; ``bundles[i]`` is the set of chores held by agent ``i``."""

    bundles: list[set[int]]

    @classmethod
    def empty(cls, n: int) -> "Allocation":
        return cls([set() for _ in range(n)])

    @classmethod
    def from_owners(cls, owners: Sequence[int], n: int) -> "Allocation":
        alloc = cls.empty(n)
        for j, i in enumerate(owners):
            alloc.bundles[i].add(j)
        return alloc

    @property
    def n(self) -> int:
        return len(self.bundles)

    def owners(self, m: int) -> list[int]:
        owner = [-1] * m
        for i, bundle in enumerate(self.bundles):
            for j in bundle:
                owner[j] = i
        return owner

    def owner_of(self, j: int) -> int:
        for i, bundle in enumerate(self.bundles):
            if j in bundle:
                return i
        raise InputError(f"chore {j} is not allocated")

    def move(self, j: int, to: int) -> int:
        """Move chore ``j`` to agent ``to``; returns the previous owner."""
        src = self.owner_of(j)
        self.bundles[src].discard(j)
        self.bundles[to].add(j)
        return src

    def sizes(self) -> list[int]:
        return [len(b) for b in self.bundles]

    def copy(self) -> "Allocation":
        return Allocation([set(b) for b in self.bundles])

    def snapshot(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(sorted(b)) for b in self.bundles)

    def is_complete(self, m: int) -> bool:
        seen = [b for bundle in self.bundles for b in bundle]
        return len(seen) == m and set(seen) == set(range(m))

    def check_complete(self, inst: Instance) -> None:
        if self.n != inst.n:
            raise InputError(f"allocation has {self.n} bundles for {inst.n} agents")
        seen: set[int] = set()
        for i, bundle in enumerate(self.bundles):
            inst.check_chores(bundle)
            overlap = seen & bundle
            if overlap:
                raise InputError(f"chore {min(overlap)} allocated twice")
            seen |= bundle
        if len(seen) != inst.m:
            missing = min(set(range(inst.m)) - seen)
            raise InputError(f"chore {missing} is unallocated")

    def __eq__(self, other) -> bool:
        return isinstance(other, Allocation) and self.snapshot() == other.snapshot()


@dataclass
class MarketState:
    allocation: Allocation
    payments: Payments

    def earning(self, i: int) -> Fraction:
        return earning(self.payments, self.allocation.bundles[i])


def check_payments(pay: Sequence[Fraction], m: int) -> None:
    if len(pay) != m:
        raise InputError(f"payment vector has {len(pay)} entries for {m} chores")
    for j, p in enumerate(pay):
        if p <= 0:
            raise InputError(f"payment of chore {j} is not positive")


# Bundle arithmetic ---------------------------------------------------------

def _row_over(inst: Instance, i: int, S: Iterable[int]) -> list[Fraction]:
    inst.check_agent(i)
    S = list(S)
    inst.check_chores(S)
    row = inst.disutility[i]
    return [row[j] for j in S]


def bundle_disutility(inst: Instance, i: int, S: Iterable[int]) -> Fraction:
    return sum(_row_over(inst, i, S), Fraction(0))


def disutility_less_one(inst: Instance, i: int, S: Iterable[int]) -> Fraction:
    """Cost of ``S`` after dropping its costliest chore; 0 for the empty set."""
    vals = _row_over(inst, i, S)
    if not vals:
        return Fraction(0)
    return sum(vals, Fraction(0)) - max(vals)


def earning(pay: Sequence[Fraction], S: Iterable[int]) -> Fraction:
    return sum((pay[j] for j in S), Fraction(0))


def earning_less_one(pay: Sequence[Fraction], S: Iterable[int]) -> Fraction:
    vals = [pay[j] for j in S]
    if not vals:
        return Fraction(0)
    return sum(vals, Fraction(0)) - max(vals)


def mpb_ratio(inst: Instance, pay: Sequence[Fraction], i: int) -> Fraction:
    if inst.m == 0:
        raise InputError("MPB ratio undefined without chores")
    row = inst.disutility[i]
    return min(row[j] / pay[j] for j in inst.chores)


def mpb_set(inst: Instance, pay: Sequence[Fraction], i: int) -> set[int]:
    if inst.m == 0:
        return set()
    row = inst.disutility[i]
    alpha = mpb_ratio(inst, pay, i)
    return {j for j in inst.chores if row[j] / pay[j] == alpha}


# Classification ------------------------------------------------------------

@dataclass(frozen=True)
class InstanceClass:
    three_agent: bool
    two_type: bool
    identical: bool
    bivalued: tuple[Fraction, Fraction] | None
    two_ary: tuple[tuple[Fraction, Fraction], ...] | None
    general: bool = True

    @property
    def is_bivalued(self) -> bool:
        return self.bivalued is not None

    @property
    def is_two_ary(self) -> bool:
        return self.two_ary is not None


def classify(inst: Instance) -> InstanceClass:
    rows = set(inst.disutility)
    values = {v for row in inst.disutility for v in row}
    positive = all(v > 0 for v in values)
    bivalued = None
    if positive and len(values) <= 2 and inst.m > 0:
        bivalued = (min(values), max(values))
    two_ary = None
    if positive and inst.m > 0 and all(len(set(row)) <= 2 for row in inst.disutility):
        two_ary = tuple((min(row), max(row)) for row in inst.disutility)
    return InstanceClass(
        three_agent=inst.n == 3,
        two_type=len(rows) == 2,
        identical=len(rows) <= 1,
        bivalued=bivalued,
        two_ary=two_ary,
    )


# Zero-cost preprocessing ---------------------------------------------------

@dataclass
class Preprocessed:
    """Instance with zero-cost chores removed, plus the means to map back."""

    instance: Instance
    original: Instance
    assigned: dict[int, int] = field(default_factory=dict)
    kept: list[int] = field(default_factory=list)

    def partial(self) -> Allocation:
        alloc = Allocation.empty(self.original.n)
        for j, i in self.assigned.items():
            alloc.bundles[i].add(j)
        return alloc

    def lift(self, alloc: Allocation) -> Allocation:
        full = self.partial()
        for i, bundle in enumerate(alloc.bundles):
            full.bundles[i].update(self.kept[j] for j in bundle)
        return full

    @property
    def trivial(self) -> bool:
        return not self.assigned


def preprocess_zero_chores(inst: Instance) -> Preprocessed:
    """Hand every chore some agent finds free to the lowest such agent."""
    assigned: dict[int, int] = {}
    kept: list[int] = []
    for j in inst.chores:
        zero = [i for i in inst.agents if inst.d(i, j) == 0]
        if zero:
            assigned[j] = zero[0]
        else:
            kept.append(j)
    reduced = Instance(
        inst.agent_ids,
        tuple(inst.chore_ids[j] for j in kept),
        tuple(tuple(row[j] for j in kept) for row in inst.disutility),
    )
    return Preprocessed(reduced, inst, assigned, kept)


# Traces --------------------------------------------------------------------

@dataclass(frozen=True)
class TraceEvent:
    kind: str
    info: dict
    bundles: tuple[tuple[int, ...], ...]
    payments: tuple[Fraction, ...]


@dataclass
class Trace:
    events: list[TraceEvent] = field(default_factory=list)

    def record(self, kind: str, alloc: Allocation, pay: Sequence[Fraction], **info) -> None:
        self.events.append(TraceEvent(kind, info, alloc.snapshot(), tuple(pay)))

    def of_kind(self, *kinds: str) -> list[TraceEvent]:
        return [e for e in self.events if e.kind in kinds]

    def __len__(self) -> int:
        return len(self.events)

    def __iter__(self):
        return iter(self.events)
