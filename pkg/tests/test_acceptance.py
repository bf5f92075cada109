"""Acceptance criteria, one test each, printing a PASS/FAIL line per criterion.

Each sweep runs once per session and is shared with the step-cap criterion.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from functools import cache

from choreq import generate, oracle
from choreq.certify import (
    is_ce,
    is_ef1,
    is_efx,
    is_pef1,
    select_big_earner,
    select_least_earner,
)
from choreq.core import earning, earning_less_one
from choreq.repro import repro
from choreq.solver_bivalued import (
    audit_balanced,
    balanced_ef1_fpo,
    efx_fpo_three_bivalued,
    group_property_violations,
    make_init_groups,
    rescale_bivalued,
    solve_two_ary,
)
from choreq.solver_three import solve_three_agents
from choreq.solver_twotype import round_robin, solve_two_type
from helpers import ACCEPTANCE_LINES, b1_instance, random_ce, thm2_instance


@dataclass
class Sweep:
    runs: int = 0
    failures: list[str] = field(default_factory=list)
    worst_step_ratio: float = 0.0  # observed steps divided by the cap, maximised over runs
    cap_breaches: list[str] = field(default_factory=list)
    seconds: float = 0.0

    def fail(self, seed, why):
        self.failures.append(f"seed {seed}: {why}")

    def steps(self, seed, used, cap, what):
        self.worst_step_ratio = max(self.worst_step_ratio, used / cap)
        if used > cap:
            self.cap_breaches.append(f"seed {seed}: {what} {used} > {cap}")


def report(label: str, ok: bool, detail: str) -> None:
    line = f"{'PASS' if ok else 'FAIL'} {label}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def _first_failures(sweep: Sweep) -> str:
    return "; ".join(sweep.failures[:3])


@cache
def sweep_three_agents() -> Sweep:
    s, t0 = Sweep(), time.perf_counter()
    for seed in range(1000):
        m = random.Random(seed).randint(1, 8)
        inst = generate("three-agent", 3, m, value_range=(1, 10), seed=seed)
        alloc, pay, trace = solve_three_agents(inst)
        s.runs += 1
        s.steps(seed, len(trace), 20 * m * m, "events")
        if not is_ef1(inst, alloc):
            s.fail(seed, "not EF1")
        if not oracle.is_fpo_lp(inst, alloc):
            s.fail(seed, "not fPO")
        if m <= 5 and not oracle.is_po_bruteforce(inst, alloc):
            s.fail(seed, "not PO by enumeration")
    s.seconds = time.perf_counter() - t0
    return s


@cache
def sweep_two_type() -> Sweep:
    s, t0 = Sweep(), time.perf_counter()
    for seed in range(500):
        rng = random.Random(seed)
        n, m = rng.randint(2, 6), rng.randint(1, 8)
        inst = generate("two-type", n, m, seed=seed)
        alloc, pay, trace = solve_two_type(inst)
        s.runs += 1
        loops = len(trace.of_kind("transfer", "payment_raise"))
        s.steps(seed, loops, 2 * m + 2, "loop iterations")
        if len(trace.of_kind("transfer")) > m:
            s.fail(seed, "more transfers than chores")
        if not (is_pef1(inst, alloc, pay) and is_ce(inst, alloc, pay)):
            s.fail(seed, "not pEF1 and CE")
        if not (is_ef1(inst, alloc) and oracle.is_fpo_lp(inst, alloc)):
            s.fail(seed, "not EF1 and fPO")
    s.seconds = time.perf_counter() - t0
    return s


@cache
def sweep_balanced() -> Sweep:
    s, t0 = Sweep(), time.perf_counter()
    for seed in range(500):
        rng = random.Random(seed)
        n, m, k = rng.randint(2, 5), rng.randint(1, 10), rng.choice((2, 3, 5, 7))
        inst = generate("bivalued", n, m, k=k, seed=seed)
        normal = rescale_bivalued(inst)
        grouping = group_property_violations(make_init_groups(normal))
        market = balanced_ef1_fpo(normal)
        alloc, pay = market.alloc, market.pay
        s.runs += 1
        events = market.trace.events
        start = next(t for t, e in enumerate(events) if e.kind == "balance_start")
        tail = events[start:]
        s.steps(seed, sum(e.kind == "transfer" for e in tail), m * n, "transfers")
        s.steps(seed, sum(e.kind == "raise" for e in tail), n, "raises")
        sizes = alloc.sizes()
        if max(sizes) - min(sizes) > 1:
            s.fail(seed, f"sizes {sizes}")
        if not is_ef1(inst, alloc):
            s.fail(seed, "not EF1")
        if not is_ce(inst, alloc, pay):
            s.fail(seed, "payments do not certify a CE")
        if not oracle.is_fpo_lp(inst, alloc):
            s.fail(seed, "not fPO")
        problems = grouping + audit_balanced(market)
        if problems:
            s.fail(seed, problems[0])
    s.seconds = time.perf_counter() - t0
    return s


@cache
def sweep_efx() -> Sweep:
    s, t0 = Sweep(), time.perf_counter()
    for seed in range(500):
        rng = random.Random(seed)
        m, k = rng.randint(1, 9), rng.choice((2, 3, 5))
        inst = generate("bivalued", 3, m, k=k, seed=seed)
        market = efx_fpo_three_bivalued(rescale_bivalued(inst))
        alloc = market.alloc
        s.runs += 1
        if not (is_efx(inst, alloc) and oracle.is_fpo_lp(inst, alloc)):
            s.fail(seed, "not EFX and fPO")
        if m <= 7:
            both = oracle.find_allocations(inst, ("efx", "fpo"))
            if not both:
                s.fail(seed, "no EFX+fPO allocation found by enumeration")
            elif alloc not in both:
                s.fail(seed, "output missing from the enumerated EFX+fPO set")
    s.seconds = time.perf_counter() - t0
    return s


@cache
def sweep_two_ary() -> Sweep:
    s, t0 = Sweep(), time.perf_counter()
    for seed in range(200):
        rng = random.Random(seed)
        n, m = rng.randint(2, 4), rng.randint(2, 6)
        inst = generate("two-ary", n, m, seed=seed)
        alloc, _ = solve_two_ary(inst)
        s.runs += 1
        if not is_ef1(inst, alloc):
            s.fail(seed, "not EF1 under the true costs")
        if not oracle.is_po_bruteforce(inst, alloc):
            s.fail(seed, "not PO")
    s.seconds = time.perf_counter() - t0
    return s


def test_criterion_01_efx_fpo_nonexistence():
    t0 = time.perf_counter()
    inst = thm2_instance()
    allocs = list(oracle.enumerate_allocations(inst))
    efx = [a for a in allocs if is_efx(inst, a)]
    both = [a for a in efx if oracle.is_fpo_lp(inst, a)]
    seconds = time.perf_counter() - t0
    # The EFX allocations pair one of j1,j2 with one of j3,j4 per agent.
    shapes = {frozenset(frozenset(b) for b in a.bundles) for a in efx}
    expected = {frozenset({frozenset({x, y}), frozenset({1 - x, 5 - y})})
                for x in (0, 1) for y in (2, 3)}
    ok = len(allocs) == 16 and len(efx) == 4 and shapes == expected and not both and seconds < 1
    report("1 two-agent EFX+fPO nonexistence", ok,
           f"{len(allocs)} allocations, {len(efx)} EFX, {len(both)} EFX+fPO, {seconds:.3f}s")
    assert ok


def test_criterion_02_three_agents():
    s = sweep_three_agents()
    ok = not s.failures and s.seconds < 60
    report("2 three agents EF1+fPO", ok,
           f"{s.runs} runs, {len(s.failures)} failures, {s.seconds:.1f}s {_first_failures(s)}".rstrip())
    assert ok


def test_criterion_03_two_type():
    s = sweep_two_type()
    ok = not s.failures and s.seconds < 60
    report("3 two-type pEF1+CE", ok,
           f"{s.runs} runs, {len(s.failures)} failures, {s.seconds:.1f}s {_first_failures(s)}".rstrip())
    assert ok


def test_criterion_04_bivalued_balanced():
    s = sweep_balanced()
    ok = not s.failures
    report("4 bivalued balanced EF1+fPO", ok,
           f"{s.runs} runs, {len(s.failures)} failures incl. trace audits, {s.seconds:.1f}s "
           f"{_first_failures(s)}".rstrip())
    assert ok


def test_criterion_05_bivalued_efx():
    s = sweep_efx()
    ok = not s.failures and s.seconds < 300
    report("5 three bivalued agents EFX+fPO", ok,
           f"{s.runs} runs, {len(s.failures)} failures, {s.seconds:.1f}s {_first_failures(s)}".rstrip())
    assert ok


def test_criterion_06_two_ary():
    s = sweep_two_ary()
    ok = not s.failures and s.seconds < 60
    report("6 two-ary EF1+PO", ok,
           f"{s.runs} runs, {len(s.failures)} failures, {s.seconds:.1f}s {_first_failures(s)}".rstrip())
    assert ok


def test_criterion_07_payment_envy_properties():
    rng = random.Random(7)
    bad_implication = bad_equivalence = 0
    for _ in range(1000):
        n, m = rng.randint(2, 5), rng.randint(1, 8)
        inst, pay, alloc = random_ce(rng, n, m)
        assert is_ce(inst, alloc, pay)
        pef1 = bool(is_pef1(inst, alloc, pay))
        if pef1 and not is_ef1(inst, alloc):
            bad_implication += 1
        b = select_big_earner(alloc, pay, inst.agents)
        ell = select_least_earner(alloc, pay, inst.agents)
        extremes = earning_less_one(pay, alloc.bundles[b]) <= earning(pay, alloc.bundles[ell])
        if pef1 != extremes:
            bad_equivalence += 1
    ok = bad_implication == 0 and bad_equivalence == 0
    report("7 pEF1 properties on random CEs", ok,
           f"1000 CEs, {bad_implication} pEF1-not-EF1, {bad_equivalence} extreme-pair mismatches")
    assert ok


def test_criterion_08_round_robin_not_po():
    inst = b1_instance(5)
    alloc = round_robin([0, 1, 2], inst.chores, inst)
    costs = tuple(sum(inst.d(i, j) for j in alloc.bundles[i]) for i in inst.agents)
    po = oracle.is_po_bruteforce(inst, alloc)
    ok = costs == (1, 1, 5) and not po
    report("8 round robin example", ok, f"costs {tuple(map(str, costs))}, PO {po}")
    assert ok


def test_criterion_09_worked_examples():
    results = {name: repro(name) for name in ("B2", "B3", "B4", "B5", "B6")}
    failed = {n: [c.line() for c in r.checks if not c.ok] for n, r in results.items() if not r.passed}
    checks = sum(len(r.checks) for r in results.values())
    ok = not failed
    report("9 worked examples B2-B6", ok, f"{checks} checks, failures: {failed or 'none'}")
    assert ok


def test_criterion_10_step_caps():
    sweeps = {"three-agents events": sweep_three_agents(), "two-type loops": sweep_two_type(),
              "balancing transfers/raises": sweep_balanced()}
    breaches = [b for s in sweeps.values() for b in s.cap_breaches]
    detail = ", ".join(f"{name} peak {s.worst_step_ratio:.0%} of cap" for name, s in sweeps.items())
    ok = not breaches
    report("10 step caps", ok, detail + (f"; breaches {breaches[:3]}" if breaches else ""))
    assert ok
