import pytest
from hypothesis import given, strategies as st

from pieri_rank.bwb import bwb
from pieri_rank.partitions import InvalidPartitionError, weyl_dim


def test_examples():
    r = bwb((3, 1), 7, 3)
    assert (r.vanishing, r.degree, r.weight.entries) == (False, 0, (7, 3, 1))
    assert bwb((1, 0), 0, 3).to_dict() == {"vanishing": True}
    for k in range(6, 12):
        r = bwb((5, 5, 5, 5), k, 5)
        assert r.degree == 0 and r.weight.entries == (k, 5, 5, 5, 5)


def test_higher_degree():
    r = bwb((3, 1), 0, 3)
    assert (r.degree, r.weight.entries) == (1, (2, 1, 1))


def test_rejects_non_partition():
    with pytest.raises(InvalidPartitionError):
        bwb((1, 2), 0, 3)


lams = st.integers(1, 5).flatmap(lambda n: st.tuples(
    st.just(n), st.lists(st.integers(0, 6), min_size=n - 1, max_size=n - 1).map(
        lambda xs: tuple(sorted(xs, reverse=True))), st.integers(-8, 10)))


@given(lams)
def test_exclusive_outcome_and_euler_sign(case):
    n, lam, d = case
    r = bwb(lam, d, n)
    mu = (d,) + lam
    # signed Weyl dimension of the non-dominant weight is the Euler characteristic
    chi = weyl_dim(mu)
    if r.vanishing:
        assert r.degree is None and chi == 0
    else:
        assert 0 <= r.degree <= n - 1
        w = r.weight.entries
        assert all(a >= b for a, b in zip(w, w[1:]))
        assert chi == (-1) ** r.degree * weyl_dim(w)
    if not lam or d >= lam[0]:
        assert r.degree == 0 and r.weight.entries == mu
