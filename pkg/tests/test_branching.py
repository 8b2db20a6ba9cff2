import pytest
from hypothesis import given, settings, strategies as st

from minorbranch.branching import (
    BranchingTable,
    branch_su,
    branching_coefficient,
    corollary_polytope_count,
    count_constituents,
    dominant_gammas,
    is_nested,
    level_sets,
    max_multiplicity,
    multiplicity_pattern,
    stretch_profile,
)
from minorbranch.errors import InternalConsistencyError, InvalidWeightError
from minorbranch.gt import branch_su_oracle
from minorbranch.weights import YoungWeight, dynkin_to_young, weyl_dimension

# Dynkin label -> multiplicity for {6,4,3,0} restricted to SU(3)
SU4_EXAMPLE = {
    (1, 3): 2, (1, 2): 2, (1, 1): 2, (1, 0): 1, (0, 4): 1, (0, 3): 1,
    (0, 2): 1, (0, 1): 1, (2, 3): 2, (2, 2): 2, (2, 1): 2, (2, 0): 1,
    (1, 4): 1, (3, 3): 1, (3, 2): 1, (3, 1): 1, (3, 0): 1, (2, 4): 1,
}

su_weight = st.integers(3, 4).flatmap(
    lambda n: st.lists(st.integers(0, 5), min_size=n - 1, max_size=n - 1)
).map(lambda v: YoungWeight(sorted(v, reverse=True) + [0]))


def test_su3_example():
    table = branch_su((2, 1, 0))
    assert [(g.parts, m) for g, m in table] == [((0, 0), 1), ((1, 0), 2), ((2, 0), 1)]
    assert table.dim_check


def test_su4_example():
    table = branch_su((6, 4, 3, 0))
    assert len(table) == 18
    expected = {dynkin_to_young(d): m for d, m in SU4_EXAMPLE.items()}
    assert table.as_dict() == expected
    assert table.dimension_sum() == weyl_dimension((6, 4, 3, 0)) == 540


def test_trivial():
    table = branch_su((0, 0, 0))
    assert [(g.parts, m) for g, m in table] == [((0, 0), 1)]


def test_su2_in_su3_fundamental():
    assert {g.parts: m for g, m in branch_su((1, 0))} == {(0,): 2}


@given(su_weight)
@settings(max_examples=60)
def test_agrees_with_gt(alpha):
    assert branch_su(alpha) == branch_su_oracle(alpha)


@given(su_weight)
@settings(max_examples=60)
def test_corollaries(alpha):
    table = branch_su(alpha)
    assert count_constituents(alpha) == len(table)
    assert max_multiplicity(alpha) == table.max_multiplicity


def test_closed_polytope_count_overcounts():
    # boundary points of the shifted support are lattice points with kbar = 0
    alpha = YoungWeight((2, 1, 0))
    assert corollary_polytope_count(alpha, boundary=True) > len(branch_su(alpha))


def test_requires_su_normalized():
    with pytest.raises(InvalidWeightError):
        branch_su((3, 2, 1))
    with pytest.raises(InvalidWeightError):
        branching_coefficient((2, 1, 0), (1, 1))


def test_branching_coefficient_outside_support():
    assert branching_coefficient((2, 1, 0), (5, 0)) == 0


def test_dominant_gammas():
    got = [g.parts for g in dominant_gammas(3, 2)]
    assert got == [(2, 2, 0), (2, 1, 0), (2, 0, 0), (1, 1, 0), (1, 0, 0), (0, 0, 0)]
    assert [g.parts for g in dominant_gammas(1, 5)] == [(0,)]


def test_table_lookup_and_json():
    table = branch_su((2, 1, 0))
    assert table[(1, 0)] == 2 and table[(7, 0)] == 0
    obj = table.to_json()
    assert obj["entries"][1] == {"gamma": {"young": [1, 0]}, "dynkin": [1], "mult": 2, "dim": 2}


def test_table_rejects_negative():
    with pytest.raises(InternalConsistencyError):
        BranchingTable.from_counts(YoungWeight((1, 0)), {YoungWeight((0,)): -1})


@pytest.mark.parametrize("s", range(1, 51))
def test_stretching_su3(s):
    alpha = dynkin_to_young((s, s))
    assert branching_coefficient(alpha, (s, 0)) == s + 1
    assert branching_coefficient(alpha, (s - 1, 0)) == s
    assert branching_coefficient(alpha, (2 * s, 0)) == 1


def test_stretch_profile():
    rows = stretch_profile((2, 1, 0), (1, 0), 50)
    assert rows == [(s, s + 1) for s in range(1, 51)]
    shifted = stretch_profile((2, 1, 0), (1, 0), 5, offset=(-1, 0))
    assert shifted == [(s, s) for s in range(1, 6)]


def test_stretch_growth_bound():
    alpha = YoungWeight((6, 4, 3, 0))
    for gamma in [(3, 1, 0), (4, 2, 0), (2, 1, 0)]:
        for s, m in stretch_profile(alpha, gamma, 8):
            assert m <= s * 1 + 1


def test_matriochka():
    alpha = YoungWeight((6, 4, 3, 0))
    tops = []
    for s in (1, 2, 3):
        pattern = multiplicity_pattern(alpha, s)
        levels = level_sets(pattern)
        assert is_nested(levels)
        tops.append(max(levels))
    assert tops == [2, 3, 4]


def test_level_sets_and_nesting():
    levels = level_sets([((0, 0), 2), ((1, 0), 1)])
    assert levels == {1: {(0, 0), (1, 0)}, 2: {(0, 0)}}
    assert is_nested(levels)
    assert not is_nested({1: {(0, 0)}, 2: {(1, 0)}})


def test_pattern_needs_su4():
    with pytest.raises(InvalidWeightError):
        multiplicity_pattern((2, 1, 0))
