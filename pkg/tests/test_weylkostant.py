import random
from itertools import permutations

import pytest
from hypothesis import given, strategies as st

from pieri_rank.partitions import Partition, normalize_twist
from pieri_rank.weylkostant import (E6_CARTAN, BudgetError, FamilyConstraintError, RootDatum,
                                    WeylWord, dotted_action, family_generator,
                                    fundamental_to_epsilon, kostant_weights, minimal_coset_reps,
                                    rho)

DATA = [RootDatum("A", 4), RootDatum("C", 4), RootDatum("D", 5), RootDatum("E6", 6)]


def test_cartan_matrices():
    for d in DATA:
        c = d.cartan_matrix
        assert all(c[i][i] == 2 for i in range(d.rank))
        assert all(c[i][j] <= 0 for i in range(d.rank) for j in range(d.rank) if i != j)
    assert RootDatum("E6", 6).cartan_matrix == E6_CARTAN


def test_rho():
    assert rho(RootDatum("C", 4)).entries == (4, 3, 2, 1)
    assert rho(RootDatum("D", 5)).entries == (4, 3, 2, 1, 0)
    assert rho(RootDatum("E6", 6)).entries == (1,) * 6


@pytest.mark.parametrize("datum", DATA, ids=str)
def test_simple_roots_pair_by_cartan(datum):
    if datum.cartan_type == "E6":
        roots = [row for row in E6_CARTAN]
    else:
        n = datum.n
        roots = []
        for i in range(1, datum.rank + 1):
            v = [0] * n
            if i < n:
                v[i - 1], v[i] = 1, -1
            elif datum.cartan_type == "C":
                v[n - 1] = 2
            else:
                v[n - 2] = v[n - 1] = 1
            roots.append(v)
    for i, a in enumerate(roots, start=1):
        for j in range(1, datum.rank + 1):
            assert datum.pairing(j, a) == datum.cartan_matrix[i - 1][j - 1]
        assert datum.reflect(i, a) == tuple(-x for x in a)


def test_e6_reflections_of_fundamental_weights():
    d = RootDatum("E6", 6)
    for i in range(1, 7):
        for j in range(1, 7):
            w = [int(t == j - 1) for t in range(6)]
            expected = [x - (i == j) * y for x, y in zip(w, E6_CARTAN[i - 1])]
            assert d.reflect(i, w) == tuple(expected)


words = st.lists(st.integers(1, 3), max_size=6).map(tuple)
weights = st.lists(st.integers(-5, 5), min_size=4, max_size=4).map(tuple)


@given(st.sampled_from(DATA[:2]), words, words, weights)
def test_dotted_action_is_an_action(datum, a, b, beta):
    wa, wb = WeylWord(a), WeylWord(b)
    assert dotted_action(datum, wa * wb, beta) == dotted_action(
        datum, wa, dotted_action(datum, wb, beta).entries)
    assert dotted_action(datum, WeylWord(), beta).entries == beta


@given(st.lists(st.integers(1, 4), max_size=8))
def test_type_a_length_is_inversion_count(letters):
    d = RootDatum("A", 5)
    w = WeylWord(tuple(letters))
    perm = w.act(d, (4, 3, 2, 1, 0))
    inv = sum(1 for i in range(5) for j in range(i + 1, 5) if perm[i] < perm[j])
    assert w.length(d) == inv


def test_type_a_group_order():
    d = RootDatum("A", 4)  # four coordinates, rank 3
    reps = minimal_coset_reps(d, 1, 10)
    # W / W_Y for the node-1 parabolic in S_4 has 4 cosets
    assert sum(len(v) for v in reps.values()) == 4
    images = {w.act(d, (3, 2, 1, 0)) for v in reps.values() for w in v}
    assert images <= set(permutations((3, 2, 1, 0)))


def test_dotted_action_examples():
    c4 = RootDatum("C", 4)
    assert dotted_action(c4, WeylWord((3, 4)).inverse(), (1, 1, 1, 0)).entries == (1, 1, -1, -4)
    a = (3, 1, 4, 1, 5, 9)
    got = dotted_action(RootDatum("E6", 6), WeylWord((6,)).inverse(), a).entries
    assert got == (3, 1, 1 + 4 + 9, 1, 5, -2 - 9)


def names(datum, reps):
    return {p: [w.name(datum) for w in ws] for p, ws in reps.items()}


@pytest.mark.parametrize("n", [4, 5, 6])
def test_coset_reps_classical(n):
    c = RootDatum("C", n)
    got = names(c, minimal_coset_reps(c, n, 3))
    assert got == {0: ["id"], 1: ["tau"], 2: [f"s{n - 1} tau"],
                   3: [f"tau s{n - 1} tau", f"s{n - 2} s{n - 1} tau"]}
    d = RootDatum("D", n)
    got = names(d, minimal_coset_reps(d, n, 3))
    assert got == {0: ["id"], 1: ["tau"], 2: [f"s{n - 2} tau"],
                   3: [f"s{n - 1} s{n - 2} tau", f"s{n - 3} s{n - 2} tau"]}


def test_coset_reps_e6():
    e = RootDatum("E6", 6)
    assert names(e, minimal_coset_reps(e, 6, 3)) == {0: ["id"], 1: ["s6"], 2: ["s3 s6"],
                                                     3: ["s4 s3 s6", "s2 s3 s6"]}


def test_budget():
    with pytest.raises(BudgetError):
        minimal_coset_reps(RootDatum("E6", 6), 6, 8, budget=10)


@given(st.sampled_from([("C", 4), ("D", 5), ("C", 3)]),
       st.lists(st.integers(0, 4), min_size=5, max_size=5))
def test_levi_restriction_is_dominant(case, xs):
    datum = RootDatum(*case)
    alpha = tuple(sorted(xs[:datum.n], reverse=True))
    for ws in minimal_coset_reps(datum, datum.n, 4).values():
        for w in ws:
            img = dotted_action(datum, w.inverse(), alpha).entries
            assert all(a >= b for a, b in zip(img, img[1:]))


def test_c4_kostant_table():
    t = kostant_weights(RootDatum("C", 4), 4, (1, 1, 1, 0), 3)
    assert [(e.degree, e.dual.entries) for e in t.entries] == [
        (0, (0, -1, -1, -1)), (1, (2, -1, -1, -1)), (2, (4, 1, -1, -1)),
        (3, (4, 3, -1, -1)), (3, (5, 1, 0, -1))]
    for e in t.entries:
        assert len(e.word) == e.degree
    assert len({e.word for e in t.entries}) == len(t.entries)


@given(st.lists(st.integers(0, 6), min_size=2, max_size=5))
def test_c_degree_one_formula(xs):
    a = tuple(sorted(xs, reverse=True))
    n = len(a) + 1
    t = kostant_weights(RootDatum("C", n), n, a + (0,), 1)
    assert t.at_degree(1)[0].dual.entries == (2,) + tuple(-x for x in reversed(a))


def test_non_dominant_alpha_rejected():
    with pytest.raises(ValueError):
        kostant_weights(RootDatum("C", 3), 3, (0, 1, 0), 2)


@given(st.lists(st.integers(0, 5), min_size=6, max_size=6))
def test_e6_identity_row_recovers_alpha(a):
    t = kostant_weights(RootDatum("E6", 6), 6, a, 0)
    gamma = fundamental_to_epsilon(a)
    (e,) = t.entries
    undo, _ = normalize_twist(tuple(-x for x in reversed(e.partition.padded(6))))
    assert undo == normalize_twist(gamma)[0]


def test_family_examples():
    r = family_generator("sym2-row2", (0, 0, 0), 4)
    assert (r.lam, r.mu) == ((3, 1), (3, 3))
    r = family_generator("wedge2-col", (1, 1, 1), 5)
    assert (r.lam, r.mu) == ((4, 2, 2), (4, 3, 3))
    r = family_generator("e6-beta", (0,) * 6)
    assert r.extras["beta1"] == (1, 1, 1) and r.extras["beta2"] == (2, 2, 1, 1)


@given(st.sampled_from(["sym2-row2", "wedge2-col", "1a", "1b", "2a", "2b", "2c"]),
       st.integers(4, 7), st.lists(st.integers(0, 5), min_size=7, max_size=7))
def test_families_agree_with_closed_forms(kind, n, xs):
    a = sorted(xs[:n], reverse=True)
    # force the family's equality constraint
    fix = {"sym2-row2": [(n - 1, None)], "wedge2-col": [(n - 2, None), (n - 1, None)],
           "1a": [(n - 2, n - 1)], "1b": [(n - 3, n - 2)], "2a": [(n - 2, n - 1)],
           "2b": [(n - 3, n - 2)], "2c": [(n - 4, n - 3)]}[kind]
    for i, j in fix:
        if j is None:
            for t in range(i, n):
                a[t] = 0
        else:
            for t in range(j, n):
                a[t] = min(a[t], a[i])
            a[j] = a[i]
    a = sorted(a, reverse=True)
    for i, j in fix:
        if j is not None and a[i] != a[j]:
            return
    rec = family_generator(kind, a, n)  # raises if the closed form disagrees
    assert rec.mu.contains(rec.lam)
    assert sum(rec.mu) - sum(rec.lam) in (1, 2)
    if "constraint_equivalence" in rec.extras:
        assert rec.extras["constraint_equivalence"]


def test_family_constraint_violation():
    with pytest.raises(FamilyConstraintError):
        family_generator("1a", (3, 2, 2, 1, 0), 5)
    with pytest.raises(FamilyConstraintError):
        family_generator("sym2-row2", (2, 1, 1, 1), 4)


def test_e6_random_instances_match_closed_form():
    rng = random.Random(0)
    for _ in range(10):
        family_generator("e6-beta", [rng.randint(0, 4) for _ in range(6)])
