"""Seeded random instance generators, one per instance class."""

from __future__ import annotations

import random
from fractions import Fraction

from .core import InputError, Instance

CLASSES = ("general", "three-agent", "two-type", "bivalued", "two-ary", "identical")


def _row(rng: random.Random, m: int, lo: int, hi: int) -> list[int]:
    return [rng.randint(lo, hi) for _ in range(m)]


def generate(cls: str, n: int, m: int, *, k: Fraction | int | None = None,
             value_range: tuple[int, int] = (1, 10), seed: int = 0,
             ensure_low: bool = True) -> Instance:
    """Deterministic random instance of class ``cls`` for a given ``seed``.

    ``k`` is the high/low cost ratio for ``bivalued`` (default 5) and a shared
    ratio for ``two-ary`` (default: each agent draws one from ``[m, m + 5]``).
    With ``ensure_low`` every bivalued or 2-ary agent gets at least one cheap chore.
    """
    if cls not in CLASSES:
        raise InputError(f"unknown instance class {cls!r}; choose from {', '.join(CLASSES)}")
    if n < 1 or m < 0:
        raise InputError("need at least one agent and a nonnegative number of chores")
    lo, hi = value_range
    if not 0 < lo <= hi:
        raise InputError(f"bad value range {value_range}")
    if k is not None and Fraction(k) <= 1:
        raise InputError(f"k must exceed 1, got {k}")
    rng = random.Random(seed)

    if cls == "general":
        rows = [_row(rng, m, lo, hi) for _ in range(n)]
    elif cls == "three-agent":
        if n != 3:
            raise InputError("class three-agent needs exactly 3 agents")
        rows = [_row(rng, m, lo, hi) for _ in range(n)]
    elif cls == "identical":
        row = _row(rng, m, lo, hi)
        rows = [list(row) for _ in range(n)]
    elif cls == "two-type":
        if n < 2 or m < 1:
            raise InputError("class two-type needs at least 2 agents and 1 chore")
        d1 = _row(rng, m, lo, hi)
        d2 = _row(rng, m, lo, hi)
        if d1 == d2:
            d2[rng.randrange(m)] = hi + 1
        types = [0, 1] + [rng.randint(0, 1) for _ in range(n - 2)]
        rows = [list(d1 if t == 0 else d2) for t in types]
    elif cls == "bivalued":
        high = Fraction(5) if k is None else Fraction(k)
        rows = []
        for _ in range(n):
            row = [rng.choice((Fraction(1), high)) for _ in range(m)]
            if ensure_low and m and 1 not in row:
                row[rng.randrange(m)] = Fraction(1)
            rows.append(row)
    else:  # two-ary
        rows = []
        for _ in range(n):
            base = rng.randint(lo, min(hi, lo + 2))
            ratio = Fraction(k) if k is not None else Fraction(rng.randint(max(m, 2), max(m, 2) + 5))
            row = [rng.choice((Fraction(base), base * ratio)) for _ in range(m)]
            if ensure_low and m and base not in row:
                row[rng.randrange(m)] = Fraction(base)
            rows.append(row)
    return Instance.from_matrix(rows)
