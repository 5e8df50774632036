import pytest
from hypothesis import given, strategies as st

from pieri_rank.partitions import (InvalidPartitionError, Partition, dual_weight, hook_lengths,
                                   iter_ssyt, lift, normalize_twist, parse_partition,
                                   partitions_of, pieri_summands, schur_dim, sequence_dim,
                                   ssyt_count, strip_type, twist, weyl_dim)

partitions = st.lists(st.integers(0, 5), max_size=4).map(
    lambda xs: Partition(sorted(xs, reverse=True)))


def test_partition_normalizes_trailing_zeros():
    assert Partition([6, 2, 0, 0]) == (6, 2)
    with pytest.raises(InvalidPartitionError):
        Partition([1, 2])
    with pytest.raises(InvalidPartitionError):
        Partition([2, -1])


def test_hook_lengths_example():
    assert hook_lengths((4, 2, 1)) == [[6, 4, 2, 1], [3, 1], [1]]


@pytest.mark.parametrize("lam,n,dim", [((6, 2), 3, 60), ((6, 3), 3, 64), ((5, 2, 1), 4, 256),
                                       ((5, 2, 2), 4, 160), ((3, 1), 4, 45), ((3, 3), 4, 50),
                                       ((3, 3, 3), 4, 20), ((3, 2, 2, 1), 5, 175), ((), 7, 1),
                                       ((1, 1, 1), 2, 0)])
def test_schur_dim_known_values(lam, n, dim):
    assert schur_dim(lam, n) == dim


@given(partitions, st.integers(1, 4))
def test_hook_formula_matches_tableau_count(lam, n):
    assert schur_dim(lam, n) == ssyt_count(lam, n)


@given(partitions, st.integers(1, 5), st.integers(-3, 3))
def test_weyl_dim_twist_invariant(lam, n, k):
    if len(lam) > n:
        return
    w = lam.padded(n)
    assert weyl_dim(w) == schur_dim(lam, n) == weyl_dim(twist(w, k).entries)
    assert weyl_dim(dual_weight(w).entries) == schur_dim(lam, n)


def test_ssyt_enumeration_is_sorted_and_semistandard():
    ts = list(iter_ssyt((2, 1), 3))
    assert len(ts) == 8
    words = [sum(t, ()) for t in ts]
    assert words == sorted(words)
    for t in ts:
        assert all(a <= b for row in t for a, b in zip(row, row[1:]))
        assert all(t[1][j] > t[0][j] for j in range(len(t[1])))


def test_sequence_dim_literal_reading():
    assert sequence_dim((2, 0, 0, 0), 3) == 0  # four entries in three dimensions
    assert sequence_dim((2, 0, 0), 3) == 6
    assert sequence_dim((1, 1, 1, 1), 3) == 0


@given(partitions, st.integers(1, 3), st.sampled_from(["symmetric", "exterior"]),
       st.integers(1, 4))
def test_pieri_rule_dimension_count(lam, d, kind, n):
    if len(lam) > n:
        return
    u = schur_dim((d,) if kind == "symmetric" else (1,) * d, n)
    total = sum(schur_dim(mu, n) for mu in pieri_summands(lam, d, kind, n))
    assert total == schur_dim(lam, n) * u


def test_pieri_summands_example():
    assert pieri_summands((3, 1), 2, "symmetric", 4) == [(5, 1), (4, 2), (4, 1, 1), (3, 3),
                                                          (3, 2, 1)]
    assert (3, 3) not in pieri_summands((2, 2), 2, "symmetric", 3)
    assert (3, 3) in pieri_summands((2, 2), 2, "exterior", 3)


def test_strip_type():
    assert strip_type((6, 2), (6, 3)).kind == "same_row"
    st_ = strip_type((3, 2, 2), (3, 3, 3))
    assert st_.kind == "same_column" and st_.index == 3 and st_.boxes == 2
    assert strip_type((3, 1), (3, 3)).kind == "same_row"
    assert strip_type((3, 1), (4, 2)).kind == "other_horizontal_strip"
    assert strip_type((3, 1), (2, 1)).kind == "not_contained"


def test_lift_and_twist():
    assert lift((3, 1), 5) == (5, 3, 1)
    with pytest.raises(InvalidPartitionError):
        lift((3, 1), 2)
    assert normalize_twist((4, 1, -1, -1)) == ((5, 2), 1)


def test_parse_partition():
    assert parse_partition("6,2") == (6, 2)
    assert parse_partition("") == ()


@given(st.integers(0, 9), st.integers(1, 4))
def test_partitions_of_counts(total, parts):
    ps = list(partitions_of(total, max_parts=parts))
    assert len(ps) == len(set(ps))
    assert all(sum(p) == total and len(p) <= parts for p in ps)
