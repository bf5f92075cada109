"""Rescaling bivalued and 2-ary instances to costs in {1, k}."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..core import InputError, Instance, classify

# Stand-in high value for 2-ary instances, where the real high values differ per agent.
NOMINAL_K = Fraction(2)


@dataclass(frozen=True)
class BivaluedNormal:
    """An instance whose costs are all 1 or ``k``, with ``k > 1``.

    ``base`` is the instance the costs were derived from; scaling an agent's
    costs by a positive constant changes none of the fairness or efficiency
    notions, so allocations carry over unchanged.
    """

    base: Instance
    instance: Instance
    k: Fraction

    def __post_init__(self):
        if self.k <= 1:
            raise InputError(f"high cost must exceed 1, got {self.k}")
        for row in self.instance.disutility:
            if any(v not in (1, self.k) for v in row):
                raise InputError("normalised costs must be 1 or k")
            if self.instance.m and 1 not in row:
                raise InputError("every agent needs a chore of cost 1")

    @property
    def L(self) -> list[int]:
        inst = self.instance
        return [j for j in inst.chores if any(inst.d(i, j) == 1 for i in inst.agents)]

    @property
    def K(self) -> list[int]:
        inst = self.instance
        return [j for j in inst.chores if all(inst.d(i, j) == self.k for i in inst.agents)]


def _normalise_rows(inst: Instance, lows, highs, k: Fraction) -> Instance:
    rows = []
    for row, lo, hi in zip(inst.disutility, lows, highs):
        if lo == hi:
            rows.append(tuple(Fraction(1) for _ in row))
        else:
            rows.append(tuple(Fraction(1) if v == lo else k for v in row))
    return Instance(inst.agent_ids, inst.chore_ids, tuple(rows))


def rescale_bivalued(inst: Instance) -> BivaluedNormal:
    """Divide each agent's costs so that they lie in {1, k} with k = high / low.

    A row consisting only of the high value becomes all ones. When the whole
    instance uses a single value, ``k`` is the nominal value 2 and never occurs.
    """
    if inst.m == 0:
        return BivaluedNormal(inst, inst, NOMINAL_K)
    cls = classify(inst)
    if cls.bivalued is None:
        raise InputError("instance is not bivalued (positive costs taking at most two values)")
    lo, hi = cls.bivalued
    k = hi / lo if hi != lo else NOMINAL_K
    lows = [min(row) for row in inst.disutility]
    highs = [max(row) for row in inst.disutility]
    return BivaluedNormal(inst, _normalise_rows(inst, lows, highs, k), k)


def rescale_two_ary(inst: Instance) -> tuple[BivaluedNormal, list[Fraction | None]]:
    """Map each agent's two cost levels to 1 and a shared nominal ``k``.

    Returns the normal form and each agent's true ratio (``None`` for agents
    with a single cost level).
    """
    if inst.m == 0:
        return BivaluedNormal(inst, inst, NOMINAL_K), [None] * inst.n
    cls = classify(inst)
    if cls.two_ary is None:
        raise InputError("instance is not 2-ary (each agent uses at most two positive costs)")
    ratios = [hi / lo if hi != lo else None for lo, hi in cls.two_ary]
    lows = [lo for lo, _ in cls.two_ary]
    highs = [hi for _, hi in cls.two_ary]
    return BivaluedNormal(inst, _normalise_rows(inst, lows, highs, NOMINAL_K), NOMINAL_K), ratios
