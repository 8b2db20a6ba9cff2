from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from minorbranch.errors import InvalidWeightError
from minorbranch.gt import branch_su_oracle, branch_u, enumerate_interlacing, gt_count, iter_patterns
from minorbranch.weights import YoungWeight, weyl_dimension

su_weight = st.lists(st.integers(0, 5), min_size=1, max_size=3).map(
    lambda v: YoungWeight(sorted(v, reverse=True) + [0])
)


def test_interlacing_order_and_content():
    betas = [b.parts for b in enumerate_interlacing((2, 1, 0))]
    assert betas == [(2, 1), (2, 0), (1, 1), (1, 0)]


def test_patterns_are_interlacing_triangles():
    for rows in iter_patterns((2, 1, 0)):
        assert [len(r) for r in rows] == [3, 2, 1]
        for top, low in zip(rows, rows[1:]):
            assert all(top[i] >= low[i] >= top[i + 1] for i in range(len(low)))


@given(su_weight)
@settings(max_examples=60)
def test_gt_count_equals_weyl_dimension(alpha):
    assert gt_count(alpha) == weyl_dimension(alpha)


@given(su_weight)
@settings(max_examples=30)
def test_brute_force_pattern_count(alpha):
    if alpha.size <= 8:
        assert sum(1 for _ in iter_patterns(alpha)) == gt_count(alpha)


def test_branch_u_multiplicity_free():
    table = branch_u((3, 1, 0))
    assert all(m == 1 for _, m in table)
    assert table.dimension_sum() == weyl_dimension((3, 1, 0))


def test_su_oracle_worked_example():
    table = branch_su_oracle((2, 1, 0))
    assert {g.parts: m for g, m in table} == {(0, 0): 1, (1, 0): 2, (2, 0): 1}


def test_su_oracle_collisions_match_u_collapse():
    alpha = YoungWeight((4, 2, 1, 0))
    collapsed = Counter()
    for b in enumerate_interlacing(alpha):
        collapsed[tuple(v - b.parts[-1] for v in b.parts)] += 1
    assert {g.parts: m for g, m in branch_su_oracle(alpha)} == dict(collapsed)


def test_su_oracle_requires_normalized():
    with pytest.raises(InvalidWeightError):
        branch_su_oracle((2, 1, 1))


def test_interlacing_needs_rank_two():
    with pytest.raises(InvalidWeightError):
        enumerate_interlacing((3,))
