import pytest
from hypothesis import given, strategies as st

from pieri_rank.exactla import SparseIntMatrix
from pieri_rank.partitions import Partition, iter_ssyt, schur_dim
from pieri_rank.schurmodule import build_schur_module, u_module

small = st.tuples(st.lists(st.integers(0, 3), max_size=3).map(
    lambda xs: Partition(sorted(xs, reverse=True))), st.integers(2, 4))


def bracket(a: SparseIntMatrix, b: SparseIntMatrix) -> SparseIntMatrix:
    return a @ b - b @ a


@given(small)
def test_dimension_and_basis_order(case):
    lam, n = case
    m = build_schur_module(lam, n)
    assert m.dim == schur_dim(lam, n)
    assert m.basis == list(iter_ssyt(lam, n))


@given(small)
def test_chevalley_relations(case):
    lam, n = case
    m = build_schur_module(lam, n)
    if m.dim == 0:
        return
    for i in range(n - 1):
        assert bracket(m.e[i], m.f[i]) == m.h(i)
        for j in range(n - 1):
            if i != j:
                assert bracket(m.e[i], m.f[j]).is_zero()
            if abs(i - j) > 1:
                assert bracket(m.e[i], m.e[j]).is_zero()


@given(small)
def test_operators_shift_weights(case):
    lam, n = case
    m = build_schur_module(lam, n)
    for i in range(n - 1):
        for r, c, _ in m.e[i].items():
            delta = [a - b for a, b in zip(m.weights[r], m.weights[c])]
            assert delta == [1 if t == i else -1 if t == i + 1 else 0 for t in range(n)]


def test_highest_weight_vector_is_unique_and_canonical():
    m = build_schur_module((3, 1), 3)
    vec = m.highest_weight_vector()
    assert vec == {0: 1}
    assert m.highest_weight() == (3, 1, 0)


def test_zero_module_and_u_modules():
    assert build_schur_module((1, 1, 1), 2).dim == 0
    assert u_module("symmetric", 2, 4).dim == 10
    assert u_module("exterior", 2, 4).dim == 6
    with pytest.raises(ValueError):
        u_module("other", 2, 3)


def test_memoized():
    assert build_schur_module((2, 1), 3) is build_schur_module([2, 1, 0], 3)


def test_export(tmp_path):
    files = build_schur_module((2, 1), 3).export(tmp_path)
    assert sorted(p.name for p in files) == ["e1.mtx", "e2.mtx", "f1.mtx", "f2.mtx"]


def test_dual_and_tensor_are_representations():
    a = build_schur_module((1,), 3)
    b = build_schur_module((1, 1), 3)
    for rep in (a.dual(), a.tensor(b)):
        for i in range(2):
            assert bracket(rep.e[i], rep.f[i]) == rep.h(i)
