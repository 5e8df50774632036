import json
import random
from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, strategies as st

from pieri_rank.euler import (DegenerateInputError, DimPolynomial, WeightComplex, dim_poly,
                              euler_poly, example_complex, exceptional_k, integer_roots,
                              koszul_complex_weights, lifted_alternating_sum)
from pieri_rank.partitions import InvalidPartitionError, Partition, lift, schur_dim

nus = st.integers(1, 6).flatmap(lambda n: st.tuples(st.just(n), st.lists(
    st.integers(0, 5), max_size=n - 1).map(lambda xs: Partition(sorted(xs, reverse=True)))))


def test_examples():
    assert dim_poly((), 1).coefficients == (1,)
    p = dim_poly((3, 1), 5)
    assert p.degree == 4 and p.leading == Fraction(45, 24)
    assert p(6) == schur_dim((6, 3, 1), 5)
    with pytest.raises(InvalidPartitionError):
        dim_poly((1, 1, 1), 3)


@given(nus)
def test_dim_poly_matches_fresh_points(case):
    n, nu = case
    p = dim_poly(nu, n)
    top = nu[0] if nu else 0
    assert p.threshold == top
    for k in range(top + n + 1, top + 3 * n + 1):
        assert p(k) == schur_dim(lift(nu, k), n)
    expected = Fraction(schur_dim(nu, n - 1) if n > 1 else 1, factorial(n - 1))
    assert p.leading == expected


def test_example_complex_data():
    g = example_complex()
    assert g.dims() == [45, 50, 50, 45, 10, 1]
    assert json.loads(json.dumps(g.to_dict())) == g.to_dict()
    assert WeightComplex.from_dict(g.to_dict()).to_dict() == g.to_dict()


def test_single_term_complex():
    g = WeightComplex(4, [])
    g = WeightComplex.from_dict({"n_source": 4, "terms": [{"degree": 0, "weights": [[2, 1]]}]})
    assert euler_poly(g, 5) == dim_poly((2, 1), 5)


@given(st.integers(5, 30))
def test_lift_coherence(k):
    g = example_complex()
    assert euler_poly(g, 5)(k) == lifted_alternating_sum(g, 5, k)


@pytest.mark.parametrize("kind,ns", [("sym2", [2, 3, 4]), ("wedge2", [3, 4, 5])])
def test_full_koszul_complex_lifts_to_zero(kind, ns):
    for n in ns:
        g = koszul_complex_weights(n, kind)
        assert g.euler_characteristic() == 0
        assert euler_poly(g, n + 1).is_zero()


def test_koszul_terms():
    g = koszul_complex_weights(4, "sym2", 3)
    assert g.terms[0].weights == [()]
    assert g.terms[2].weights == [(3, 1)]
    assert sorted(g.terms[3].weights) == [(3, 3), (4, 1, 1)]
    assert g.dims() == [1, 10, 45, 120]


def test_exceptional_examples():
    k2m4 = DimPolynomial((-4, 0, 1))
    assert exceptional_k(k2m4, 0).roots == (2,)
    kk7 = DimPolynomial((0, -7, 1))
    assert exceptional_k(kk7, 5).roots == (7,)
    printed = DimPolynomial((-240, -72, 118, 78, 8))
    assert exceptional_k(printed, 5).roots == ()
    with pytest.raises(DegenerateInputError):
        exceptional_k(DimPolynomial(()), 0)


@given(st.lists(st.integers(-6, 6), min_size=1, max_size=3), st.integers(1, 3))
def test_integer_roots_exact(roots, lead):
    expr = DimPolynomial((lead,))
    for r in roots:
        expr = DimPolynomial(tuple(a - r * b for a, b in zip(
            (0,) + expr.coefficients, expr.coefficients + (0,))))
    found = integer_roots(expr)
    assert set(found) == set(roots)
    rng = random.Random(sum(roots))
    for _ in range(100):
        x = rng.randint(-1000, 1000)
        assert (expr(x) == 0) == (x in found)
