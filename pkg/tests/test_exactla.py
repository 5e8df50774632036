import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from pieri_rank.exactla import (ParameterError, RankResourceError, SparseIntMatrix, block_diag,
                                dense_rank_mod_p, nullspace, primitive, random_primes,
                                rank_exact, rank_mod_p, read_matrix_market, write_matrix_market)


def fraction_rank(rows):
    """Plain Gauss-Jordan over Fractions; the independent reference."""
    a = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    cols = len(a[0]) if a else 0
    for c in range(cols):
        piv = next((r for r in range(rank, len(a)) if a[r][c] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        for r in range(len(a)):
            if r != rank and a[r][c]:
                f = a[r][c] / a[rank][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[rank])]
        rank += 1
    return rank


def low_rank(rng, m, n, r, bound=9):
    left = [[rng.randint(-bound, bound) for _ in range(r)] for _ in range(m)]
    right = [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(r)]
    return [[sum(left[i][t] * right[t][j] for t in range(r)) for j in range(n)] for i in range(m)]


matrices = st.integers(1, 7).flatmap(lambda m: st.integers(1, 7).flatmap(
    lambda n: st.lists(st.lists(st.integers(-4, 4), min_size=n, max_size=n),
                       min_size=m, max_size=m)))


@given(matrices)
def test_rank_exact_matches_reference(rows):
    m = SparseIntMatrix.from_dense(rows)
    assert rank_exact(m).rank == fraction_rank(rows)


@given(matrices)
def test_rank_mod_p_never_exceeds_exact(rows):
    m = SparseIntMatrix.from_dense(rows)
    assert rank_mod_p(m, [3, 5]).rank <= rank_exact(m).rank


def test_small_prime_can_drop_rank():
    m = SparseIntMatrix.from_dense([[2, 0], [0, 3]])
    assert rank_mod_p(m, [2]).rank == 1
    assert rank_exact(m).rank == 2


def test_non_prime_rejected():
    with pytest.raises(ParameterError):
        rank_mod_p(SparseIntMatrix.identity(2), [15])


def test_large_prime_uses_sparse_path():
    rng = random.Random(3)
    rows = low_rank(rng, 20, 25, 7)
    p = (1 << 61) - 1
    assert rank_mod_p(SparseIntMatrix.from_dense(rows), [p]).rank == 7


def test_dense_mod_p_agrees_with_sparse():
    rng = random.Random(5)
    rows = low_rank(rng, 30, 30, 11)
    p = random_primes(1, seed=2)[0]
    a = np.array(rows, dtype=np.int64) % p
    assert dense_rank_mod_p(a, p) == 11


def test_block_rank_sums_blocks():
    a = SparseIntMatrix.from_dense([[1, 2], [2, 4]])
    b = SparseIntMatrix.from_dense([[1, 0], [0, 1]])
    m = block_diag(a, b)
    blocks = [([0, 1], [0, 1]), ([2, 3], [2, 3])]
    assert rank_exact(m, blocks).rank == 3
    assert rank_mod_p(m, [101], blocks=blocks).rank == 3


def test_resource_guard():
    with pytest.raises(RankResourceError):
        rank_exact(SparseIntMatrix.identity(50), max_entries=100)


def test_random_primes_reproducible():
    assert random_primes(2, seed=9) == random_primes(2, seed=9)
    assert all(p < 2**31 for p in random_primes(3, seed=1))


def test_matrix_market_round_trip(tmp_path):
    m = SparseIntMatrix.from_dense([[0, -3, 0], [7, 0, 12345678901234567890]])
    write_matrix_market(m, tmp_path / "m.mtx")
    assert read_matrix_market(tmp_path / "m.mtx") == m


@given(matrices)
def test_nullspace_vectors_are_annihilated(rows):
    ns = nullspace(rows, len(rows[0]))
    assert len(ns) == len(rows[0]) - fraction_rank(rows)
    for v in ns:
        assert all(sum(Fraction(a) * b for a, b in zip(r, v)) == 0 for r in rows)


def test_primitive():
    assert primitive([Fraction(1, 2), Fraction(-1, 3), 0]) in ([3, -2, 0], [-3, 2, 0])


@given(matrices, matrices)
def test_sparse_algebra(a_rows, b_rows):
    a = SparseIntMatrix.from_dense(a_rows)
    b = SparseIntMatrix.from_dense(b_rows)
    na, nb = np.array(a_rows, dtype=object), np.array(b_rows, dtype=object)
    assert (a.T.to_dense() == na.T).all()
    assert (a.kron(b).to_dense() == np.kron(na, nb)).all()
    if a.shape[1] == b.shape[0]:
        assert ((a @ b).to_dense() == na.dot(nb)).all()
