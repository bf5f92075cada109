"""Shared instances, allocations and strategies for the tests."""

from __future__ import annotations

from fractions import Fraction

from hypothesis import strategies as st

from choreq import Allocation, Instance

ACCEPTANCE_LINES: list[str] = []


def thm2_instance() -> Instance:
    return Instance.from_matrix([[1, 1, 3, 3], [1, 1, 4, 4]], agent_ids=["a", "b"])


def b1_instance(k: int = 5) -> Instance:
    return Instance.from_matrix([[1, 1, 1], [k, 1, k], [1, k, k]], agent_ids=["a", "b", "c"])


def alloc_of(*bundles) -> Allocation:
    """Allocation from 1-based chore numbers per agent, e.g. alloc_of([1, 3], [2, 4])."""
    return Allocation([{j - 1 for j in b} for b in bundles])




@st.composite
def instances(draw, n=st.integers(1, 3), m=st.integers(0, 4), values=st.integers(0, 6)):
    n_, m_ = draw(n), draw(m)
    rows = [[draw(values) for _ in range(m_)] for _ in range(n_)]
    return Instance.from_matrix(rows)


@st.composite
def instance_and_allocation(draw, **kw):
    inst = draw(instances(**kw))
    owners = [draw(st.integers(0, inst.n - 1)) for _ in range(inst.m)]
    return inst, Allocation.from_owners(owners, inst.n)


@st.composite
def bivalued_instances(draw, n=st.integers(2, 4), m=st.integers(1, 8), ks=(2, 3, 5, 7)):
    n_, m_ = draw(n), draw(m)
    k = Fraction(draw(st.sampled_from(ks)))
    rows = []
    for _ in range(n_):
        row = [draw(st.sampled_from((Fraction(1), k))) for _ in range(m_)]
        if m_ and 1 not in row:
            row[draw(st.integers(0, m_ - 1))] = Fraction(1)
        rows.append(row)
    return Instance.from_matrix(rows)


def random_ce(rng, n: int, m: int, max_cost: int = 6, max_rate: int = 3):
    """Random competitive equilibrium: an instance, payments and an allocation.

    Each agent gets a target ratio; a chore's payment is the smallest cost-to-ratio
    quotient over agents and the chore goes to one agent attaining it, which
    makes it an MPB chore for its owner.
    """
    rows = [[rng.randint(1, max_cost) for _ in range(m)] for _ in range(n)]
    inst = Instance.from_matrix(rows)
    rate = [Fraction(rng.randint(1, max_rate)) for _ in range(n)]
    pay, owners = [], []
    for j in range(m):
        quotients = [inst.d(i, j) / rate[i] for i in range(n)]
        best = min(quotients)
        pay.append(best)
        owners.append(rng.choice([i for i in range(n) if quotients[i] == best]))
    return inst, pay, Allocation.from_owners(owners, n)
