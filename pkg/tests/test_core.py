from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from choreq import Allocation, InputError, Instance, classify
from choreq.core import (
    bundle_disutility,
    disutility_less_one,
    earning,
    earning_less_one,
    mpb_ratio,
    mpb_set,
    preprocess_zero_chores,
)
from helpers import instances, thm2_instance

F = Fraction


class TestInstance:
    def test_default_ids(self):
        inst = Instance.from_matrix([[1, 2], [3, 4]])
        assert inst.agent_ids == ("i1", "i2")
        assert inst.chore_ids == ("j1", "j2")
        assert (inst.n, inst.m) == (2, 2)

    def test_entries_are_exact(self):
        inst = Instance.from_matrix([["3/2", 1]])
        assert inst.d(0, 0) == F(3, 2)

    @pytest.mark.parametrize("rows", [[[1, 2], [3]], [[-1, 2]]])
    def test_rejects_bad_matrices(self, rows):
        with pytest.raises(InputError):
            Instance.from_matrix(rows)

    def test_rejects_duplicate_ids(self):
        with pytest.raises(InputError):
            Instance.from_matrix([[1], [1]], agent_ids=["a", "a"])


class TestAllocation:
    def test_move_returns_previous_owner(self):
        alloc = Allocation([{0, 1}, set()])
        assert alloc.move(1, 1) == 0
        assert alloc.bundles == [{0}, {1}]

    def test_move_to_owner_is_noop(self):
        alloc = Allocation([{0}, {1}])
        alloc.move(0, 0)
        assert alloc.bundles == [{0}, {1}]

    def test_incomplete_allocation_is_rejected(self):
        inst = Instance.from_matrix([[1, 1], [1, 1]])
        with pytest.raises(InputError):
            Allocation([{0}, set()]).check_complete(inst)
        with pytest.raises(InputError):
            Allocation([{0, 1}, {1}]).check_complete(inst)

    def test_owner_roundtrip(self):
        alloc = Allocation.from_owners([1, 0, 1], 2)
        assert alloc.owners(3) == [1, 0, 1]


class TestBundleArithmetic:
    def test_thm2_bundle_cost(self):
        inst = thm2_instance()
        assert bundle_disutility(inst, 0, {0, 2}) == 4
        assert disutility_less_one(inst, 0, {0, 2}) == 1

    def test_empty_and_singleton(self):
        inst = thm2_instance()
        assert bundle_disutility(inst, 1, set()) == 0
        assert disutility_less_one(inst, 1, set()) == 0
        assert disutility_less_one(inst, 1, {3}) == 0

    def test_rational_sum(self):
        inst = Instance.from_matrix([["1/2", "1/3"]])
        assert bundle_disutility(inst, 0, {0, 1}) == F(5, 6)

    def test_remove_max(self):
        inst = Instance.from_matrix([[1, 5]])
        assert disutility_less_one(inst, 0, {0, 1}) == 1

    def test_unknown_chore(self):
        with pytest.raises(InputError):
            bundle_disutility(thm2_instance(), 0, {7})

    def test_earnings(self):
        assert earning([1, 1, 1], {0, 1, 2}) == 3
        assert earning([2, 3, 5], {2}) == 5
        assert earning([2, 3, 5], {0, 1, 2}) == 10
        assert earning_less_one([2, 3, 5], {0, 1, 2}) == 5
        assert earning_less_one([2, 3, 5], {1}) == 0
        assert earning_less_one([2, 3, 5], set()) == 0

    def test_mpb(self):
        inst = Instance.from_matrix([[1, 2, 4]])
        assert mpb_ratio(inst, [F(1), F(1), F(2)], 0) == 1
        assert mpb_set(inst, [F(1), F(1), F(2)], 0) == {0}
        assert mpb_set(inst, [F(1), F(2), F(4)], 0) == {0, 1, 2}
        assert mpb_ratio(inst, [F(1), F(2), F(4)], 0) == 1
        uniform = Instance.from_matrix([[3, 3, 3]])
        assert mpb_set(uniform, [F(2)] * 3, 0) == {0, 1, 2}

    def test_raised_ratio(self):
        k = F(5)
        inst = Instance.from_matrix([[1, k]])
        assert mpb_ratio(inst, [k, k], 0) == 1 / k

    @given(instances(values=st.integers(1, 6), m=st.integers(1, 5)),
           st.lists(st.integers(1, 7), min_size=5, max_size=5))
    def test_mpb_members_attain_ratio(self, inst, raw):
        pay = [F(p) for p in raw[: inst.m]]
        for i in inst.agents:
            S = mpb_set(inst, pay, i)
            assert S
            assert all(inst.d(i, j) / pay[j] == mpb_ratio(inst, pay, i) for j in S)

    @given(st.lists(st.integers(1, 9), min_size=1, max_size=6))
    def test_earning_less_one_identity(self, raw):
        pay = [F(p) for p in raw]
        S = set(range(len(pay)))
        assert earning_less_one(pay, S) + max(pay) == earning(pay, S)

    @given(instances(values=st.integers(1, 6)), st.data())
    def test_less_one_strictly_below_total(self, inst, data):
        S = data.draw(st.sets(st.integers(0, max(inst.m - 1, 0)), max_size=inst.m)) if inst.m else set()
        for i in inst.agents:
            if S:
                assert disutility_less_one(inst, i, S) < bundle_disutility(inst, i, S)
            else:
                assert disutility_less_one(inst, i, S) == bundle_disutility(inst, i, S) == 0


class TestClassify:
    def test_thm2_classes(self):
        cls = classify(thm2_instance())
        assert cls.two_type and cls.is_two_ary and not cls.is_bivalued

    def test_constant_instance(self):
        cls = classify(Instance.from_matrix([[2, 2], [2, 2]]))
        assert cls.identical and cls.bivalued == (2, 2)

    def test_bivalued_pair(self):
        cls = classify(Instance.from_matrix([[1, 5, 5], [5, 1, 1], [1, 1, 5]]))
        assert cls.bivalued == (1, 5) and cls.three_agent and not cls.two_type

    def test_bivalued_implies_two_ary(self):
        cls = classify(Instance.from_matrix([[1, 5], [5, 5]]))
        assert cls.is_bivalued and cls.is_two_ary
        assert cls.two_ary == ((1, 5), (5, 5))

    @given(instances(values=st.integers(1, 4)))
    def test_bivalued_implies_two_ary_property(self, inst):
        cls = classify(inst)
        if cls.is_bivalued:
            assert cls.is_two_ary


class TestPreprocess:
    def test_no_zeros_is_identity(self):
        pre = preprocess_zero_chores(thm2_instance())
        assert pre.trivial and pre.instance == thm2_instance()

    def test_zero_chore_goes_to_zero_agent(self):
        inst = Instance.from_matrix([[0, 1], [1, 1]])
        pre = preprocess_zero_chores(inst)
        assert pre.assigned == {0: 0}
        assert pre.instance.m == 1 and pre.instance.chore_ids == ("j2",)

    def test_lowest_index_wins_ties(self):
        pre = preprocess_zero_chores(Instance.from_matrix([[1, 0], [1, 0]]))
        assert pre.assigned == {1: 0}

    def test_lift_merges_assignments(self):
        inst = Instance.from_matrix([[1, 0, 2], [3, 1, 0]])
        pre = preprocess_zero_chores(inst)
        full = pre.lift(Allocation([set(), {0}]))
        assert full.bundles == [{1}, {0, 2}]
        assert all(v > 0 for row in pre.instance.disutility for v in row)
