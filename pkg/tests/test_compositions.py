import pytest

from csfkit.compositions import (
    enumerate_compositions,
    enumerate_no_ones,
    enumerate_no_ones_with_prefix,
    has_prefix,
    has_suffix,
    merge_partitions,
    partial_sums,
    prefix_L,
    split_at,
    suffix_L,
    underlying_partition,
    validate_composition,
    w_one,
    w_prime,
    w_weight,
)


def test_no_ones_small_cases():
    assert enumerate_no_ones(0) == [()]
    assert enumerate_no_ones(1) == []
    assert enumerate_no_ones(5) == [(2, 3), (3, 2), (5,)]
    assert len(enumerate_no_ones(9)) == 21


def test_no_ones_is_lexicographic_and_valid():
    comps = enumerate_no_ones(12)
    assert comps == sorted(comps)
    assert all(sum(c) == 12 and min(c) >= 2 for c in comps)
    assert len(set(comps)) == len(comps)


def test_all_compositions_count():
    for n in range(1, 10):
        assert len(enumerate_compositions(n)) == 2 ** (n - 1)


def test_negative_size_rejected():
    with pytest.raises(ValueError):
        enumerate_no_ones(-1)


def test_prefix_filter():
    assert enumerate_no_ones_with_prefix(7, 3) == [(3, 2, 2), (3, 4)]
    assert enumerate_no_ones_with_prefix(5, 1) == []
    assert enumerate_no_ones_with_prefix(4, 4) == [(2, 2), (4,)]


def test_prefix_and_suffix_membership():
    K = (3, 2, 4)
    assert partial_sums(K) == [3, 5, 9]
    assert has_prefix(K, 0) and has_prefix(K, 5) and not has_prefix(K, 4)
    assert has_suffix(K, 4) and has_suffix(K, 6) and not has_suffix(K, 5)


def test_split_at():
    assert split_at((3, 2, 4), 5) == ((3, 2), (4,))
    with pytest.raises(ValueError):
        split_at((3, 2, 4), 4)


def test_weights():
    assert w_weight((4, 3, 2)) == 8
    assert w_weight((2, 1)) == 0
    assert w_weight(()) == 1
    assert w_prime((4, 3, 2)) == 2
    assert w_one((4, 3, 2)) == 6


def test_prefix_labels():
    assert prefix_L((2, 2, 2, 2), 1) == {1, 3, 5}
    assert prefix_L((8,), 1) == frozenset()
    assert prefix_L((4, 4), 1) == {3}


def test_suffix_labels():
    assert suffix_L((5, 4), 1) == {3}
    assert suffix_L((9,), 1) == frozenset()
    assert suffix_L((5, 2, 2), 1) == {1, 3}


def test_partitions():
    assert underlying_partition((2, 5, 3)) == (5, 3, 2)
    assert merge_partitions((3, 1), (2, 2)) == (3, 2, 2, 1)


@pytest.mark.parametrize("bad", [(0, 2), (-1,), (2.0,), ("3",)])
def test_validation_rejects_non_positive_integers(bad):
    with pytest.raises((ValueError, TypeError)):
        validate_composition(bad)
